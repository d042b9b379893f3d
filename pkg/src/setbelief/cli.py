"""Command-line front end.

Subcommands: ``table`` (m/Bel/Pl per focal set from CSV data), ``combine``
(fold mass JSON files under Dempster's rule), ``relabel`` (exact or
simulated relabeling), ``estimate`` (confidence-bounded masses), and
``casebook`` (golden-case verification).

Result data goes to stdout; diagnostics (per-step conflict, simulation
reports, progress) go to stderr.  Exit codes: 0 success, 1 domain error
(total conflict, invalid labeling, failing casebook checks), 2 input or
usage error.  Identical inputs and flags produce byte-identical output;
the frame-size cap honors the SETBELIEF_MAX_ATOMS environment variable.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import casebook
from .belief import MassFunction, combine_dempster
from .errors import InvalidLabelingError, SetBeliefError, TotalConflictError
from .estimate import CountTable, estimate_with_confidence
from .population import Population, freq_bel, freq_mass, freq_pl
from .relabel import relabel_exact, relabel_simulate
from .serialize import (
    FrameDeclaration,
    load_frame_json,
    mass_from_json,
    mass_to_json,
    parse_frame_spec,
    read_population_csv,
    report_to_jsonable,
)


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation; exactly one subcommand."""

    command: str
    data: str | None = None
    masses: tuple[str, ...] = ()
    labels: str | None = None
    frame_spec: str | None = None
    frame_file: str | None = None
    output_format: str = "table"
    rational: bool = False
    alpha: float | None = None
    bonferroni: bool = False
    exact: bool = False
    n_draws: int | None = None
    seed: int | None = None
    chunks: int = 1
    case: str | None = None
    all_cases: bool = False


def _add_frame_options(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--frame",
        metavar="SPEC",
        dest="frame_spec",
        help="inline frame declaration, e.g. 'quality=H,M,S,D;shop=B,G'",
    )
    group.add_argument(
        "--frame-file",
        metavar="PATH",
        help="JSON file mapping attribute names to atom lists",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setbelief",
        description="Belief functions over finite frames from set-valued data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="print m/Bel/Pl for every focal set of a CSV population")
    p_table.add_argument("data", help="CSV file of set-valued records")
    _add_frame_options(p_table)
    p_table.add_argument("--format", choices=("table", "json"), default="table", dest="output_format")
    p_table.add_argument("--rational", action="store_true", help="print exact fractions like 20/723")

    p_combine = sub.add_parser("combine", help="combine mass JSON files under Dempster's rule")
    p_combine.add_argument("masses", nargs="+", help="two or more mass JSON files on one frame")

    p_relabel = sub.add_parser("relabel", help="relabel a CSV population by a label distribution")
    p_relabel.add_argument("data", help="CSV file of set-valued records")
    p_relabel.add_argument("labels", help="mass JSON file: the label distribution")
    _add_frame_options(p_relabel)
    mode = p_relabel.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true", help="exact expected distribution")
    mode.add_argument("--simulate", type=int, metavar="N", dest="n_draws", help="Monte Carlo with N draws")
    p_relabel.add_argument("--seed", type=int, help="RNG seed (required with --simulate)")
    p_relabel.add_argument("--chunks", type=int, default=1, help="simulation chunk count (default 1)")

    p_estimate = sub.add_parser("estimate", help="confidence-bounded mass estimate from CSV data")
    p_estimate.add_argument("data", help="CSV file of set-valued records")
    _add_frame_options(p_estimate)
    p_estimate.add_argument("--alpha", type=float, required=True, help="significance level in (0, 1]")
    p_estimate.add_argument("--bonferroni", action="store_true", help="divide alpha by the number of bounded cells")

    p_case = sub.add_parser("casebook", help="recompute golden cases and report pass/fail")
    p_case.add_argument("case", nargs="?", help="case name (see --all for the full run)")
    p_case.add_argument("--all", action="store_true", dest="all_cases", help="run every case")

    return parser


def parse_args(argv: list[str] | None = None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command == "relabel" and ns.n_draws is not None and ns.seed is None:
        parser.error("--simulate requires --seed")
    if ns.command == "casebook" and not ns.all_cases and not ns.case:
        parser.error("give a case name or --all")
    fields = {f for f in RunConfig.__dataclass_fields__}
    chosen = {k: v for k, v in vars(ns).items() if k in fields and v is not None}
    if "masses" in chosen:
        chosen["masses"] = tuple(chosen["masses"])
    return RunConfig(**chosen)


def _load_declaration(config: RunConfig) -> FrameDeclaration:
    if config.frame_spec is not None:
        return parse_frame_spec(config.frame_spec)
    assert config.frame_file is not None
    return load_frame_json(Path(config.frame_file).read_text(encoding="utf-8"))


def _load_population(config: RunConfig) -> Population:
    decl = _load_declaration(config)
    return read_population_csv(Path(config.data).read_text(encoding="utf-8"), decl)


def _fmt(value, rational: bool) -> str:
    if rational and isinstance(value, Fraction):
        return str(value)
    return f"{float(value):.6f}"


def _cmd_table(config: RunConfig, out) -> int:
    pop = _load_population(config)
    mass = freq_mass(pop)
    rows = [
        (subset, value, freq_bel(pop, subset), freq_pl(pop, subset))
        for subset, value in mass.items()
    ]
    if config.output_format == "json":
        payload = {
            "frame": list(pop.frame.atoms),
            "rows": [
                {
                    "set": list(s.atoms()),
                    "m": str(m_) if isinstance(m_, Fraction) else m_,
                    "bel": str(b) if isinstance(b, Fraction) else b,
                    "pl": str(p) if isinstance(p, Fraction) else p,
                }
                for s, m_, b, p in rows
            ],
        }
        out.write(json.dumps(payload, indent=2) + "\n")
        return 0
    rendered = [
        ("{" + ",".join(s.atoms()) + "}", _fmt(m_, config.rational), _fmt(b, config.rational), _fmt(p, config.rational))
        for s, m_, b, p in rows
    ]
    widths = [
        max(len(header), *(len(r[i]) for r in rendered))
        for i, header in enumerate(("set", "m", "bel", "pl"))
    ]
    header = ("set", "m", "bel", "pl")
    out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
    for r in rendered:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    return 0


def _cmd_combine(config: RunConfig, out, err) -> int:
    if len(config.masses) < 2:
        raise ValueError("combine needs at least two mass files")
    loaded = [mass_from_json(Path(path).read_text(encoding="utf-8")) for path in config.masses]
    current = loaded[0]
    for step, m in enumerate(loaded[1:], start=1):
        report = combine_dempster(current, m)
        conflict = report.conflict_mass
        shown = str(conflict) if isinstance(conflict, Fraction) else repr(conflict)
        err.write(f"step {step}: conflict {shown}\n")
        current = report.result
    out.write(mass_to_json(current))
    return 0


def _cmd_relabel(config: RunConfig, out, err) -> int:
    pop = _load_population(config)
    labels = mass_from_json(Path(config.labels).read_text(encoding="utf-8"))
    if config.exact:
        result = relabel_exact(freq_mass(pop), labels)
        out.write(mass_to_json(result))
        return 0
    report = relabel_simulate(pop, labels, n_draws=config.n_draws, seed=config.seed, chunks=config.chunks)
    err.write(json.dumps(report_to_jsonable(report)) + "\n")
    out.write(mass_to_json(report.empirical))
    return 0


def _cmd_estimate(config: RunConfig, out) -> int:
    pop = _load_population(config)
    table = CountTable.from_population(pop)
    result = estimate_with_confidence(table, alpha=config.alpha, bonferroni=config.bonferroni)
    out.write(mass_to_json(result))
    return 0


def _cmd_casebook(config: RunConfig, out) -> int:
    names = casebook.available_cases() if config.all_cases else [config.case]
    failures = 0
    for name in names:
        report = casebook.run_case(name)
        for r in report.results:
            status = "PASS" if r.passed else "FAIL"
            line = f"[{status}] {report.case} :: {r.quantity} = {r.computed}"
            if not r.passed:
                line += f" (expected {r.expected})"
                failures += 1
            out.write(line + "\n")
        for note in report.observations:
            out.write(f"[note] {report.case} :: {note}\n")
        checked = len(report.results)
        passed = sum(1 for r in report.results if r.passed)
        out.write(f"case {report.case}: {passed}/{checked} quantities pass\n")
    return 1 if failures else 0


def run(config: RunConfig, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    if config.command == "table":
        return _cmd_table(config, out)
    if config.command == "combine":
        return _cmd_combine(config, out, err)
    if config.command == "relabel":
        return _cmd_relabel(config, out, err)
    if config.command == "estimate":
        return _cmd_estimate(config, out)
    if config.command == "casebook":
        return _cmd_casebook(config, out)
    raise ValueError(f"unknown command {config.command!r}")


def main(argv: list[str] | None = None) -> int:
    config = parse_args(argv)
    try:
        return run(config)
    except (TotalConflictError, InvalidLabelingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SetBeliefError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
