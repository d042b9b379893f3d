"""Executable golden cases.

Each case ships as a JSON data file holding structured inputs, expected
values, and notes on discrepancies in the source material.  Running a case
recomputes every expected quantity through the public operations of the
other modules and compares: exactly for rationals and integers, within
1e-9 for floats.  Cases are independent and read-only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, Union

from ..belief import MassFunction, combine_dempster, condition_embed
from ..errors import UnknownCaseError
from ..frame import Frame, SubsetRef, cylindrical_extension, product
from ..population import LabelingSpec, Population, SetValuedRecord, apply_labeling, freq_bel, freq_mass, freq_pl
from .roughset import RoughSetParams, rs_combined_conditional, rs_expert_masses, rs_gap

Value = Union[Fraction, int, float]

FLOAT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Check:
    """One expected quantity with its provenance note."""

    quantity: str
    expected: Value
    source: str


@dataclass(frozen=True)
class Case:
    name: str
    title: str
    kind: str
    inputs: dict
    checks: tuple[Check, ...]
    notes: tuple[str, ...]


@dataclass(frozen=True)
class QuantityResult:
    quantity: str
    expected: Value
    computed: Value
    passed: bool
    source: str


@dataclass(frozen=True)
class CaseReport:
    case: str
    results: tuple[QuantityResult, ...]
    observations: tuple[str, ...]
    notes: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def _parse_value(raw) -> Value:
    if isinstance(raw, str):
        return Fraction(raw)
    if isinstance(raw, bool):
        raise ValueError("boolean expected values are not supported")
    if isinstance(raw, (int, float)):
        return raw
    raise ValueError(f"unsupported expected value {raw!r}")


def _values_match(expected: Value, computed: Value) -> bool:
    if isinstance(expected, float) or isinstance(computed, float):
        return abs(float(expected) - float(computed)) <= FLOAT_TOLERANCE
    return expected == computed


def _load_case(name: str) -> Case:
    data_dir = resources.files(__package__) / "data"
    path = data_dir / f"{name}.json"
    if not path.is_file():
        raise UnknownCaseError(
            f"unknown case {name!r}; available: {', '.join(available_cases())}"
        )
    raw = json.loads(path.read_text(encoding="utf-8"))
    checks = tuple(
        Check(quantity=c["quantity"], expected=_parse_value(c["expected"]), source=c.get("source", ""))
        for c in raw["checks"]
    )
    return Case(
        name=raw["name"],
        title=raw.get("title", raw["name"]),
        kind=raw["kind"],
        inputs=raw["inputs"],
        checks=checks,
        notes=tuple(raw.get("notes", ())),
    )


def available_cases() -> list[str]:
    data_dir = resources.files(__package__) / "data"
    return sorted(p.name.removesuffix(".json") for p in data_dir.iterdir() if p.name.endswith(".json"))


def load_case(name: str) -> Case:
    return _load_case(name)


def run_case(name: str) -> CaseReport:
    """Recompute one case and compare every quantity against its golden value."""
    case = _load_case(name)
    try:
        compute = _COMPUTE[case.kind]
    except KeyError:
        raise UnknownCaseError(f"case {name!r} has unknown kind {case.kind!r}") from None
    computed, observations = compute(case.inputs)
    results = []
    for check in case.checks:
        got = computed[check.quantity]
        results.append(
            QuantityResult(
                quantity=check.quantity,
                expected=check.expected,
                computed=got,
                passed=_values_match(check.expected, got),
                source=check.source,
            )
        )
    return CaseReport(
        case=case.name,
        results=tuple(results),
        observations=tuple(observations),
        notes=case.notes,
    )


def run_all() -> list[CaseReport]:
    return [run_case(name) for name in available_cases()]


# -- input decoding ---------------------------------------------------------


def _joint_names(per_attr: list[list[str]]) -> list[str]:
    names = list(per_attr[0])
    for nxt in per_attr[1:]:
        names = [f"({a},{b})" for a in names for b in nxt]
    return names


def _build_frame(inputs: dict) -> Frame:
    if "attributes" in inputs:
        frames = [Frame(atoms) for _, atoms in inputs["attributes"]]
        joint = frames[0]
        for f in frames[1:]:
            joint = product(joint, f)
        return joint
    return Frame(inputs["atoms"])


def _cell_value(frame: Frame, per_attr_sets: list[list[str]]) -> SubsetRef:
    return frame.subset(_joint_names(per_attr_sets))


def _population(frame: Frame, cells: list[dict]) -> Population:
    records = [
        SetValuedRecord(_cell_value(frame, cell["value"]), cell["weight"]) for cell in cells
    ]
    return Population(frame, records)


def _subset_id(subset: SubsetRef) -> str:
    return "{" + ",".join(subset.atoms()) + "}"


def _mass_entries(frame: Frame, entries: list[dict]) -> MassFunction:
    return MassFunction(
        frame, {frame.subset(e["set"]): _parse_value(e["mass"]) for e in entries}
    )


# -- per-kind computations --------------------------------------------------


def _compute_population_table(inputs: dict):
    frame = _build_frame(inputs)
    pop = _population(frame, inputs["cells"])
    mass = freq_mass(pop)
    computed: dict[str, Value] = {"total_weight": pop.total_weight}
    for subset, value in mass.items():
        computed[f"m {_subset_id(subset)}"] = value
        computed[f"bel {_subset_id(subset)}"] = freq_bel(pop, subset)
    for entry in inputs.get("plausibility_sets", ()):
        subset = frame.subset(entry)
        computed[f"pl {_subset_id(subset)}"] = freq_pl(pop, subset)
    return computed, []


def _compute_labeling_table(inputs: dict):
    frame = _build_frame(inputs)
    pop = _population(frame, inputs["cells"])
    rule = {
        _cell_value(frame, entry["pattern"]): frame.subset(entry["label"])
        for entry in inputs["labeling"]
    }
    relabeled = apply_labeling(pop, LabelingSpec(rule))
    weights = {r.value.mask: r.weight for r in relabeled.records}
    mass = freq_mass(relabeled)
    computed: dict[str, Value] = {"total_weight": relabeled.total_weight}
    for cell in inputs["expected_cells"]:
        subset = _cell_value(frame, cell)
        computed[f"weight {_subset_id(subset)}"] = weights.get(subset.mask, 0)
    for subset, value in mass.items():
        computed[f"m {_subset_id(subset)}"] = value
    for entry in inputs.get("belief_sets", ()):
        subset = frame.subset(entry)
        computed[f"bel {_subset_id(subset)}"] = freq_bel(relabeled, subset)
    return computed, []


def _compute_combine(inputs: dict):
    frame = _build_frame(inputs)
    m1 = _mass_entries(frame, inputs["m1"])
    m2 = _mass_entries(frame, inputs["m2"])
    report = combine_dempster(m1, m2)
    computed: dict[str, Value] = {"conflict": report.conflict_mass}
    for subset, value in report.result.items():
        computed[f"m {_subset_id(subset)}"] = value
        computed[f"unnormalized {_subset_id(subset)}"] = value * (1 - report.conflict_mass)
    return computed, []


def _three_device_mass(frame: Frame, first_atom: str, p: Fraction) -> MassFunction:
    """Random-set mass of three independent draws over a two-atom frame.

    Each device picks the first atom with probability p; the recorded value
    is the set of atoms any device picked, so the singletons carry p^3 and
    (1-p)^3 and the rest sits on the full frame.
    """
    second = [a for a in frame.atoms if a != first_atom][0]
    return MassFunction(
        frame,
        {
            frame.subset([first_atom]): p**3,
            frame.subset([second]): (1 - p) ** 3,
            frame.full(): 1 - p**3 - (1 - p) ** 3,
        },
    )


def _extend_mass(joint: Frame, factor_index: int, m: MassFunction) -> MassFunction:
    entries = {
        cylindrical_extension(joint, factor_index, subset): value for subset, value in m.items()
    }
    return MassFunction(joint, entries)


def _compute_killer(inputs: dict):
    weapon = Frame(inputs["weapon_atoms"])
    outcome = Frame(inputs["outcome_atoms"])
    joint = product(weapon, outcome)
    p_weapon = Fraction(inputs["p_first_weapon"])
    p_rescue = Fraction(inputs["p_rescue_given_first"])

    weapon_mass = _three_device_mass(weapon, inputs["weapon_atoms"][0], p_weapon)
    computed: dict[str, Value] = {}
    for subset, value in weapon_mass.items():
        computed[f"weapon_m {_subset_id(subset)}"] = value
    for atoms in ([inputs["weapon_atoms"][0]], [inputs["weapon_atoms"][1]], inputs["weapon_atoms"]):
        subset = weapon.subset(atoms)
        computed[f"weapon_bel {_subset_id(subset)}"] = weapon_mass.bel(subset)

    stored = _mass_entries(joint, inputs["stored_m12"])
    extended = _extend_mass(joint, 0, weapon_mass)
    final = combine_dempster(extended, stored)
    computed["conflict"] = final.conflict_mass
    for subset, value in final.result.items():
        computed[f"m {_subset_id(subset)}"] = value

    # Independent route: embed both conditionals and combine.  The stored
    # focal sets come verbatim from the source material, which is not
    # internally consistent here, so mismatches are reported, not asserted.
    observations = []
    rescue_ext = cylindrical_extension(joint, 1, outcome.subset([inputs["outcome_atoms"][0]]))
    letdie_ext = cylindrical_extension(joint, 1, outcome.subset([inputs["outcome_atoms"][1]]))
    given_first = cylindrical_extension(joint, 0, weapon.subset([inputs["weapon_atoms"][0]]))
    given_second = cylindrical_extension(joint, 0, weapon.subset([inputs["weapon_atoms"][1]]))
    m1_embedded = condition_embed(
        joint,
        given_first,
        {
            rescue_ext: p_rescue**3,
            letdie_ext: (1 - p_rescue) ** 3,
            joint.full(): 1 - p_rescue**3 - (1 - p_rescue) ** 3,
        },
    )
    m2_embedded = condition_embed(joint, given_second, {letdie_ext: Fraction(1)})
    m12_embedded = combine_dempster(m1_embedded, m2_embedded).result
    stored_by_mask = dict(stored._masses)
    embedded_by_mask = dict(m12_embedded._masses)
    for mask in sorted(set(stored_by_mask) | set(embedded_by_mask)):
        s_val = stored_by_mask.get(mask)
        e_val = embedded_by_mask.get(mask)
        if s_val != e_val:
            subset = SubsetRef(joint, mask)
            observations.append(
                f"stored vs embedded m12 differ on {_subset_id(subset)}: "
                f"stored={s_val if s_val is not None else 0}, "
                f"embedded={e_val if e_val is not None else 0}"
            )
    final_embedded = combine_dempster(extended, m12_embedded)
    target = joint.subset(inputs["headline_set"])
    observations.append(
        f"embedded-route combination puts {final_embedded.result.mass(target)} "
        f"on {_subset_id(target)} (stored-route value is a check above)"
    )
    return computed, observations


def _params(raw: dict) -> RoughSetParams:
    return RoughSetParams(**{key: _parse_value(value) for key, value in raw.items()})


def _compute_roughset(inputs: dict):
    params = _params(inputs["derived"])
    m1, m2 = rs_expert_masses(params)
    m12 = rs_combined_conditional(params)
    dempster = combine_dempster(m1, m2)
    computed: dict[str, Value] = {}
    for label, mass in (("m1", m1), ("m2", m2), ("m12", m12), ("dempster", dempster.result)):
        for subset, value in mass.items():
            computed[f"{label} {_subset_id(subset)}"] = value
    computed["dempster_conflict"] = dempster.conflict_mass
    computed["gap"] = rs_gap(params)
    computed["vacuous_gap"] = rs_gap(_params(inputs["vacuous"]))
    return computed, []


_COMPUTE: dict[str, Callable] = {
    "population_table": _compute_population_table,
    "labeling_table": _compute_labeling_table,
    "combine": _compute_combine,
    "killer": _compute_killer,
    "roughset": _compute_roughset,
}
