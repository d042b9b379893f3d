"""Set-valued population data and the frequentist belief operators.

A population is a weighted multiset of records, each carrying a nonempty
set of admissible values for one attribute.  The canonical measurement
test answers whether a record's value set meets a queried subset; the
frequentist mass/belief/plausibility operators are weight fractions of
records passing the corresponding tests.  Labeling intersects record
values with per-record labels and drops records whose label is empty,
which is how evidence gets imposed on the data.

Populations are immutable; identical value sets aggregate their weights,
mirroring data that arrive as contingency tables rather than object rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .belief import MassFunction, POWERSET_LIMIT
from .errors import (
    FrameMismatchError,
    IncompleteTableError,
    InvalidLabelingError,
    PowersetLimitError,
)
from .frame import Frame, SubsetRef


@dataclass(frozen=True)
class SetValuedRecord:
    """A group of identical objects whose attribute passed exactly these value tests."""

    value: SubsetRef
    weight: int

    def __post_init__(self) -> None:
        if self.value.is_empty():
            raise ValueError("record value set must be nonempty")
        if not isinstance(self.weight, int) or isinstance(self.weight, bool) or self.weight <= 0:
            raise ValueError(f"record weight must be a positive integer, got {self.weight!r}")


class Population:
    """A weighted multiset of set-valued records over one frame."""

    __slots__ = ("frame", "records")

    def __init__(self, frame: Frame, records: Iterable[SetValuedRecord]):
        merged: dict[int, int] = {}
        for record in records:
            if record.value.frame.atoms != frame.atoms:
                raise FrameMismatchError(f"record {record.value!r} does not belong to {frame!r}")
            merged[record.value.mask] = merged.get(record.value.mask, 0) + record.weight
        if not merged:
            raise ValueError("a population needs at least one record")
        self.frame = frame
        self.records = tuple(
            SetValuedRecord(SubsetRef(frame, mask), merged[mask]) for mask in sorted(merged)
        )

    @classmethod
    def from_cells(cls, frame: Frame, cells: Mapping[SubsetRef, int]) -> "Population":
        return cls(frame, (SetValuedRecord(value, weight) for value, weight in cells.items()))

    @property
    def total_weight(self) -> int:
        return sum(r.weight for r in self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Population):
            return NotImplemented
        return self.frame.atoms == other.frame.atoms and self.records == other.records

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Population({self.total_weight} objects in {len(self.records)} groups)"


def canonical_measure(record: SetValuedRecord, a: SubsetRef) -> bool:
    """The canonical test: does the record's value set meet ``a``?

    TRUE iff the intersection is nonempty, so the full frame always passes
    and the empty set never does.
    """
    if record.value.frame.atoms != a.frame.atoms:
        raise FrameMismatchError(f"{a!r} does not belong to the record's frame")
    return record.value.mask & a.mask != 0


@dataclass(frozen=True)
class AxiomViolation:
    """One way a truth table fails to be a measurement method."""

    kind: str  # "full_frame_false" | "empty_set_true" | "superset" | "subset"
    subset: SubsetRef
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.subset!r}: {self.detail}"


def check_measurement_axioms(
    table: Mapping[SubsetRef, bool], frame: Frame
) -> list[AxiomViolation]:
    """Check a complete truth table against the measurement-method axioms.

    Required: TRUE on the full frame, FALSE on the empty set, supersets of
    a TRUE set are TRUE, and every TRUE set with more than one atom has a
    TRUE proper subset.  Returns one violation per offending subset; an
    incomplete or non-boolean table is an error, not a violation.
    """
    n = frame.size
    if n > POWERSET_LIMIT:
        raise PowersetLimitError(f"axiom check supports at most {POWERSET_LIMIT} atoms, got {n}")
    size = 1 << n
    truth: list[bool | None] = [None] * size
    for subset, value in table.items():
        if subset.frame.atoms != frame.atoms:
            raise FrameMismatchError(f"{subset!r} does not belong to {frame!r}")
        if not isinstance(value, bool):
            raise IncompleteTableError(f"table value for {subset!r} is not a boolean: {value!r}")
        truth[subset.mask] = value
    missing = sum(1 for v in truth if v is None)
    if missing:
        raise IncompleteTableError(f"table is missing {missing} of {size} subsets")

    violations: list[AxiomViolation] = []
    full = size - 1
    if not truth[full]:
        violations.append(
            AxiomViolation("full_frame_false", SubsetRef(frame, full), "test of the full frame must be TRUE")
        )
    if truth[0]:
        violations.append(
            AxiomViolation("empty_set_true", SubsetRef(frame, 0), "test of the empty set must be FALSE")
        )
    # Superset consistency: it suffices to compare each TRUE set with its
    # one-atom extensions; any larger violation contains such a step.
    bits = [1 << i for i in range(n)]
    for mask in range(size):
        if not truth[mask]:
            continue
        for bit in bits:
            if mask & bit:
                continue
            if not truth[mask | bit]:
                violations.append(
                    AxiomViolation(
                        "superset",
                        SubsetRef(frame, mask | bit),
                        f"FALSE although its subset {SubsetRef(frame, mask)!r} is TRUE",
                    )
                )
    # Subset consistency via a has-any-TRUE-proper-subset sweep, O(n 2^n).
    any_true_below = [False] * size
    for mask in range(1, size):
        for bit in bits:
            if mask & bit:
                sub = mask ^ bit
                if truth[sub] or any_true_below[sub]:
                    any_true_below[mask] = True
                    break
    for mask in range(1, size):
        if truth[mask] and mask.bit_count() > 1 and not any_true_below[mask]:
            violations.append(
                AxiomViolation(
                    "subset",
                    SubsetRef(frame, mask),
                    "TRUE although no proper subset is TRUE",
                )
            )
    return violations


def freq_mass(p: Population) -> MassFunction:
    """Mass function of a population: weight fraction holding each exact value set."""
    total = p.total_weight
    entries = {r.value.mask: Fraction(r.weight, total) for r in p.records}
    return MassFunction._from_masks(p.frame, entries)


def freq_bel(p: Population, a: SubsetRef) -> Fraction:
    """Weight fraction of records whose value set lies inside ``a``.

    This is the probability that the canonical test rejects the complement
    of ``a``; it coincides with ``bel`` of :func:`freq_mass` and is computed
    directly from the records so the identity stays checkable.
    """
    if a.frame.atoms != p.frame.atoms:
        raise FrameMismatchError(f"{a!r} does not belong to {p.frame!r}")
    hit = sum(r.weight for r in p.records if r.value.mask & ~a.mask == 0)
    return Fraction(hit, p.total_weight)


def freq_pl(p: Population, a: SubsetRef) -> Fraction:
    """Weight fraction of records whose value set meets ``a``."""
    if a.frame.atoms != p.frame.atoms:
        raise FrameMismatchError(f"{a!r} does not belong to {p.frame!r}")
    hit = sum(r.weight for r in p.records if r.value.mask & a.mask)
    return Fraction(hit, p.total_weight)


@dataclass(frozen=True)
class LabelingSpec:
    """Labels assigned to records, matched by their exact value set.

    ``rule`` maps a value-set pattern to the label its records receive.  An
    empty label discards the matching records; patterns absent from the map
    default to the full frame (keep everything, change nothing).
    """

    rule: Mapping[SubsetRef, SubsetRef] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rule", dict(self.rule))

    def label_for(self, value: SubsetRef) -> SubsetRef:
        label = self.rule.get(value)
        if label is None:
            return value.frame.full()
        return label


def apply_labeling(p: Population, labeling: LabelingSpec) -> Population:
    """Restrict record values through their labels.

    Records labeled with the empty set are dropped.  Every surviving
    record's value becomes value intersect label, which must be nonempty
    for the labeling to be valid; weights are untouched.  The canonical
    measurement on the result is exactly the label-modified measurement
    on the original.
    """
    kept: list[SetValuedRecord] = []
    for record in p.records:
        label = labeling.label_for(record.value)
        if label.frame.atoms != p.frame.atoms:
            raise FrameMismatchError(f"label {label!r} does not belong to {p.frame!r}")
        if label.is_empty():
            continue
        restricted = record.value & label
        if restricted.is_empty():
            raise InvalidLabelingError(
                f"label {label!r} does not intersect record value {record.value!r}"
            )
        kept.append(SetValuedRecord(restricted, record.weight))
    if not kept:
        raise InvalidLabelingError("labeling discards the entire population")
    return Population(p.frame, kept)
