"""File formats: set-valued CSV data, mass-function JSON, frame declarations.

CSV format: the header row names the attributes, in declaration order, plus
an optional ``count`` column (default weight 1).  Each data cell holds one
or more atom names of that attribute separated by ``|``; a row's value set
is the product of its cell sets.  Multiple attributes induce the product
frame automatically.

Mass JSON schema::

    {"frame": ["a", "b"], "mass": [{"set": ["a"], "m": "1/3"}, ...]}

Rational masses are serialized as ``p/q`` strings to preserve exactness;
floating masses as JSON numbers.  Focal sets are listed in canonical
(frame bit order) order, so equal inputs serialize byte-identically.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from typing import Iterable, Mapping

from .belief import MassFunction
from .errors import CsvFormatError, UnknownAtomError
from .frame import Frame, SubsetRef, product
from .population import Population, SetValuedRecord
from .relabel import SimulationReport

COUNT_COLUMN = "count"


@dataclass(frozen=True)
class FrameDeclaration:
    """Named attribute frames plus their joint (product) frame."""

    attributes: tuple[tuple[str, Frame], ...]
    joint: Frame

    @classmethod
    def from_attributes(cls, attributes: Iterable[tuple[str, Iterable[str]]]) -> "FrameDeclaration":
        named = tuple((name, Frame(atoms)) for name, atoms in attributes)
        if not named:
            raise ValueError("a frame declaration needs at least one attribute")
        seen = set()
        for name, _ in named:
            if name in seen:
                raise ValueError(f"duplicate attribute name {name!r}")
            seen.add(name)
        joint = named[0][1]
        for _, f in named[1:]:
            joint = product(joint, f)
        return cls(attributes=named, joint=joint)


def parse_frame_spec(spec: str) -> FrameDeclaration:
    """Parse an inline declaration like ``quality=H,M,S,D;shop=B,G``."""
    attributes = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        name, eq, atoms = part.partition("=")
        if not eq or not name.strip():
            raise ValueError(f"bad attribute declaration {part!r}; expected name=atom,atom,...")
        names = [a.strip() for a in atoms.split(",") if a.strip()]
        if not names:
            raise ValueError(f"attribute {name.strip()!r} declares no atoms")
        attributes.append((name.strip(), names))
    if not attributes:
        raise ValueError("empty frame declaration")
    return FrameDeclaration.from_attributes(attributes)


def load_frame_json(text: str) -> FrameDeclaration:
    """Frame declaration from JSON: an object mapping attribute names to atom lists."""
    obj = json.loads(text)
    if not isinstance(obj, dict) or not obj:
        raise ValueError("frame file must be a nonempty JSON object of name -> atom list")
    for name, atoms in obj.items():
        if not isinstance(atoms, list):
            raise ValueError(f"attribute {name!r} must map to a list of atom names")
    return FrameDeclaration.from_attributes(obj.items())


def read_population_csv(text: str, decl: FrameDeclaration) -> Population:
    """Parse set-valued CSV data into a population over the declared joint frame."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise CsvFormatError(1, "empty file") from None
    header = [h.strip() for h in header]
    columns: dict[str, int] = {}
    for i, name in enumerate(header):
        if name in columns:
            raise CsvFormatError(1, f"duplicate column {name!r}")
        columns[name] = i
    attr_cols: list[tuple[str, Frame, int]] = []
    for name, frame in decl.attributes:
        if name not in columns:
            raise CsvFormatError(1, f"missing column for attribute {name!r}")
        attr_cols.append((name, frame, columns[name]))
    known = {name for name, _ in decl.attributes} | {COUNT_COLUMN}
    for name in columns:
        if name not in known:
            raise CsvFormatError(1, f"unexpected column {name!r}")
    count_col = columns.get(COUNT_COLUMN)

    # Stride of attribute k in the joint bit index (row-major product order).
    sizes = [frame.size for _, frame, _ in attr_cols]
    strides = []
    acc = 1
    for size in reversed(sizes):
        strides.append(acc)
        acc *= size
    strides.reverse()

    records: list[SetValuedRecord] = []
    line = 1
    for row in reader:
        line += 1
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise CsvFormatError(line, f"expected {len(header)} cells, got {len(row)}")
        index_sets: list[list[int]] = []
        for name, frame, col in attr_cols:
            tokens = [t.strip() for t in row[col].split("|")]
            tokens = [t for t in tokens if t]
            if not tokens:
                raise CsvFormatError(line, f"empty value for attribute {name!r}")
            try:
                index_sets.append(sorted({frame.atom_index(t) for t in tokens}))
            except UnknownAtomError as exc:
                raise CsvFormatError(line, f"column {name!r}: {exc}") from None
        weight = 1
        if count_col is not None:
            raw = row[count_col].strip()
            try:
                weight = int(raw)
            except ValueError:
                raise CsvFormatError(line, f"count {raw!r} is not an integer") from None
            if weight <= 0:
                raise CsvFormatError(line, f"count must be positive, got {weight}")
        mask = 0
        for combo in iter_product(*index_sets):
            mask |= 1 << sum(i * s for i, s in zip(combo, strides))
        records.append(SetValuedRecord(SubsetRef(decl.joint, mask), weight))
    if not records:
        raise CsvFormatError(line, "no data rows")
    return Population(decl.joint, records)


def _mass_value_to_json(value):
    if isinstance(value, Fraction):
        return str(value)
    return value


def _mass_value_from_json(raw, where: str):
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"{where}: bad rational literal {raw!r}") from None
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ValueError(f"{where}: mass must be a number or a 'p/q' string, got {raw!r}")
    return raw


def mass_to_jsonable(m: MassFunction) -> dict:
    return {
        "frame": list(m.frame.atoms),
        "mass": [
            {"set": list(subset.atoms()), "m": _mass_value_to_json(value)}
            for subset, value in m.items()
        ],
    }


def mass_to_json(m: MassFunction) -> str:
    return json.dumps(mass_to_jsonable(m), indent=2) + "\n"


def mass_from_jsonable(obj: Mapping) -> MassFunction:
    if not isinstance(obj, Mapping) or "frame" not in obj or "mass" not in obj:
        raise ValueError("mass JSON must be an object with 'frame' and 'mass' keys")
    if not isinstance(obj["frame"], list):
        raise ValueError("'frame' must be a list of atom names")
    if not isinstance(obj["mass"], list):
        raise ValueError("'mass' must be a list of {set, m} entries")
    frame = Frame(obj["frame"])
    entries = {}
    for i, entry in enumerate(obj["mass"]):
        where = f"mass[{i}]"
        if not isinstance(entry, Mapping) or "set" not in entry or "m" not in entry:
            raise ValueError(f"{where}: entries need 'set' and 'm' keys")
        if not isinstance(entry["set"], list):
            raise ValueError(f"{where}: 'set' must be a list of atom names")
        subset = frame.subset(entry["set"])
        if subset in entries:
            raise ValueError(f"{where}: duplicate focal set {subset!r}")
        entries[subset] = _mass_value_from_json(entry["m"], where)
    return MassFunction(frame, entries)


def mass_from_json(text: str) -> MassFunction:
    return mass_from_jsonable(json.loads(text))


def report_to_jsonable(report: SimulationReport) -> dict:
    return {
        "seed": report.seed,
        "draws_attempted": report.draws_attempted,
        "draws_discarded": report.draws_discarded,
        "discard_fraction": str(report.discard_fraction),
        "generator": report.generator,
        "chunks": report.chunks,
    }
