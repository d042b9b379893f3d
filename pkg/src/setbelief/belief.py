"""Mass, belief, and plausibility functions, and Dempster's rule.

A mass function assigns nonnegative weight to nonempty subsets of a frame,
summing to one.  Two arithmetic modes are supported: exact rationals
(:class:`fractions.Fraction`, the default whenever all inputs are exact) and
floating point.  Exact mode exists because the reference tables this library
reproduces are fractions like 190/723 and must match bit-exactly; mixing
modes demotes the result to floating point.

All objects here are immutable and all operations pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Union

from .errors import (
    FrameMismatchError,
    IncompleteTableError,
    InvalidMassError,
    NotProductFrameError,
    PowersetLimitError,
    TotalConflictError,
)
from .frame import Frame, SubsetRef, project_subset

Number = Union[Fraction, float, int]

RATIONAL = "rational"
FLOATING = "floating"

#: Tolerated normalization drift when constructing a floating mass function.
FLOAT_SUM_TOLERANCE = 1e-9

#: Largest frame for which operations over the full powerset are allowed.
POWERSET_LIMIT = 16


def _infer_mode(values) -> str:
    return FLOATING if any(isinstance(v, float) for v in values) else RATIONAL


def _coerce(value: Number, mode: str) -> Fraction | float:
    if mode == FLOATING:
        return float(value)
    if isinstance(value, float):
        raise InvalidMassError("rational mode cannot hold float masses")
    return Fraction(value)


class MassFunction:
    """A normalized basic probability assignment over nonempty subsets.

    ``entries`` maps :class:`SubsetRef` to nonnegative mass.  The empty
    subset must not appear, zero-mass entries are dropped, and the total
    must be 1 (exactly in rational mode, within ``FLOAT_SUM_TOLERANCE`` in
    floating mode, where small drift is renormalized away).
    """

    __slots__ = ("frame", "mode", "_masses")

    def __init__(
        self,
        frame: Frame,
        entries: Mapping[SubsetRef, Number],
        mode: str | None = None,
    ):
        by_mask: dict[int, Number] = {}
        for subset, value in entries.items():
            if subset.frame.atoms != frame.atoms:
                raise FrameMismatchError(f"entry {subset!r} does not belong to {frame!r}")
            if subset.mask in by_mask:
                raise InvalidMassError(f"duplicate entry for {subset!r}")
            by_mask[subset.mask] = value
        self.frame = frame
        self.mode, self._masses = _validate_masses(by_mask, mode)

    @classmethod
    def _from_masks(
        cls, frame: Frame, by_mask: Mapping[int, Number], mode: str | None = None
    ) -> "MassFunction":
        m = object.__new__(cls)
        m.frame = frame
        m.mode, m._masses = _validate_masses(dict(by_mask), mode)
        return m

    @classmethod
    def vacuous(cls, frame: Frame, mode: str = RATIONAL) -> "MassFunction":
        """Total ignorance: all mass on the full frame."""
        one: Number = Fraction(1) if mode == RATIONAL else 1.0
        return cls._from_masks(frame, {(1 << frame.size) - 1: one}, mode)

    @property
    def is_rational(self) -> bool:
        return self.mode == RATIONAL

    def _zero(self) -> Fraction | float:
        return Fraction(0) if self.mode == RATIONAL else 0.0

    def _check_frame(self, a: SubsetRef) -> None:
        if a.frame.atoms != self.frame.atoms:
            raise FrameMismatchError(f"{a!r} does not belong to {self.frame!r}")

    def mass(self, a: SubsetRef) -> Fraction | float:
        """Mass of exactly this subset (zero unless it is focal)."""
        self._check_frame(a)
        return self._masses.get(a.mask, self._zero())

    def bel(self, a: SubsetRef) -> Fraction | float:
        """Total mass committed to subsets of ``a``."""
        self._check_frame(a)
        values = [v for mask, v in self._masses.items() if mask & ~a.mask == 0]
        return self._accumulate(values)

    def pl(self, a: SubsetRef) -> Fraction | float:
        """Total mass not contradicting ``a``: 1 - bel of the complement."""
        self._check_frame(a)
        values = [v for mask, v in self._masses.items() if mask & a.mask]
        return self._accumulate(values)

    def _accumulate(self, values) -> Fraction | float:
        if self.mode == FLOATING:
            return math.fsum(values)
        return sum(values, Fraction(0))

    def focal_sets(self) -> tuple[SubsetRef, ...]:
        """Subsets with strictly positive mass, in canonical mask order."""
        return tuple(SubsetRef(self.frame, mask) for mask in sorted(self._masses))

    def items(self) -> Iterator[tuple[SubsetRef, Fraction | float]]:
        for mask in sorted(self._masses):
            yield SubsetRef(self.frame, mask), self._masses[mask]

    def is_vacuous(self) -> bool:
        full = (1 << self.frame.size) - 1
        return set(self._masses) == {full}

    def __len__(self) -> int:
        return len(self._masses)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame.atoms == other.frame.atoms and self._masses == other._masses

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"{s!r}: {v}" for s, v in self.items())
        return f"MassFunction({body})"


def _validate_masses(
    by_mask: dict[int, Number], mode: str | None
) -> tuple[str, dict[int, Fraction | float]]:
    if mode is None:
        mode = _infer_mode(by_mask.values())
    elif mode not in (RATIONAL, FLOATING):
        raise ValueError(f"unknown arithmetic mode {mode!r}")
    masses: dict[int, Fraction | float] = {}
    for mask, value in by_mask.items():
        value = _coerce(value, mode)
        if value < 0:
            raise InvalidMassError(f"negative mass {value} on mask {mask:#x}")
        if mask == 0:
            raise InvalidMassError("mass assigned to the empty set")
        if value > 0:
            masses[mask] = value
    if mode == RATIONAL:
        total = sum(masses.values(), Fraction(0))
        if total != 1:
            raise InvalidMassError(f"masses must sum to 1 exactly, got {total}")
    else:
        total = math.fsum(masses.values())
        if abs(total - 1.0) > FLOAT_SUM_TOLERANCE:
            raise InvalidMassError(f"masses must sum to 1 within {FLOAT_SUM_TOLERANCE}, got {total}")
        if total != 1.0:
            masses = {mask: v / total for mask, v in masses.items()}
    if not masses:
        raise InvalidMassError("a mass function needs at least one positive entry")
    return mode, masses


@dataclass(frozen=True)
class CombinationReport:
    """Result of Dempster's rule plus the conflict it renormalized away.

    ``conflict_mass`` is the probability weight of focal pairs with empty
    intersection, i.e. 1 - 1/c for the rule's normalizing constant c.  It is
    reported rather than discarded because open- and closed-world readings
    of a combination differ on exactly this quantity.
    """

    result: MassFunction
    conflict_mass: Fraction | float


def _pairwise_products(m1: MassFunction, m2: MassFunction):
    """Focal-pair products split into kept (nonempty) and conflict weight."""
    if m1.frame.atoms != m2.frame.atoms:
        raise FrameMismatchError("cannot combine mass functions on different frames")
    mode = RATIONAL if m1.mode == RATIONAL and m2.mode == RATIONAL else FLOATING
    kept: dict[int, list] = {}
    conflict: list = []
    for b, vb in m1._masses.items():
        for c, vc in m2._masses.items():
            w = _coerce(vb, mode) * _coerce(vc, mode)
            a = b & c
            if a == 0:
                conflict.append(w)
            else:
                kept.setdefault(a, []).append(w)
    return mode, kept, conflict


def _total(values, mode: str) -> Fraction | float:
    return math.fsum(values) if mode == FLOATING else sum(values, Fraction(0))


def combine_dempster(m1: MassFunction, m2: MassFunction) -> CombinationReport:
    """Dempster's rule of combination for independent evidence.

    Iterates over focal pairs only, accumulates the product mass on each
    nonempty intersection, and renormalizes by the non-conflicting weight.
    Raises :class:`TotalConflictError` when no pair of focal sets
    intersects.
    """
    mode, kept, conflict = _pairwise_products(m1, m2)
    if not kept:
        raise TotalConflictError("every pair of focal sets has empty intersection")
    conflict_mass = _total(conflict, mode)
    kept_total = _total([w for ws in kept.values() for w in ws], mode)
    if mode == RATIONAL:
        masses = {a: _total(ws, mode) / (1 - conflict_mass) for a, ws in kept.items()}
    else:
        conflict_mass = conflict_mass / (conflict_mass + kept_total)
        masses = {a: _total(ws, mode) / kept_total for a, ws in kept.items()}
    result = MassFunction._from_masks(m1.frame, masses, mode)
    return CombinationReport(result=result, conflict_mass=conflict_mass)


def mass_from_bel(frame: Frame, bel_values: Mapping[SubsetRef, Number]) -> MassFunction:
    """Recover the unique mass function with the given belief table.

    ``bel_values`` must cover all 2^n subsets of the frame.  The inversion
    is the fast Moebius transform over the subset lattice, O(n 2^n).  If it
    yields negative mass, or mass on the empty set, the input was not a
    belief function.
    """
    n = frame.size
    if n > POWERSET_LIMIT:
        raise PowersetLimitError(f"mass_from_bel supports at most {POWERSET_LIMIT} atoms, got {n}")
    size = 1 << n
    if len(bel_values) != size:
        raise IncompleteTableError(f"need all {size} subsets, got {len(bel_values)} entries")
    mode = _infer_mode(bel_values.values())
    table: list = [None] * size
    for subset, value in bel_values.items():
        if subset.frame.atoms != frame.atoms:
            raise FrameMismatchError(f"{subset!r} does not belong to {frame!r}")
        table[subset.mask] = _coerce(value, mode)
    for bit in (1 << i for i in range(n)):
        for mask in range(size):
            if mask & bit:
                table[mask] -= table[mask ^ bit]
    if table[0] != 0:
        raise InvalidMassError(f"bel of the empty set must be 0, inversion left {table[0]} on it")
    entries: dict[int, Number] = {}
    for mask in range(1, size):
        v = table[mask]
        if mode == FLOATING and abs(v) <= 1e-12:
            continue
        if v < 0:
            raise InvalidMassError(f"input is not a belief function: mass {v} on mask {mask:#x}")
        if v != 0:
            entries[mask] = v
    return MassFunction._from_masks(frame, entries, mode)


def condition_embed(
    frame: Frame, b: SubsetRef, conditional: Mapping[SubsetRef, Number]
) -> MassFunction:
    """Embed a conditional mass assignment given ``b`` into the frame.

    Material-implication reading of conditioning: mass on A given b lands on
    (complement of b) union A.  Masses meeting on the same set accumulate.
    """
    if b.frame.atoms != frame.atoms:
        raise FrameMismatchError(f"{b!r} does not belong to {frame!r}")
    given = MassFunction(frame, conditional)  # validates the assignment
    not_b = ~b
    embedded: dict[int, list] = {}
    for subset, value in given.items():
        target = not_b.mask | subset.mask
        embedded.setdefault(target, []).append(value)
    masses = {mask: _total(vs, given.mode) for mask, vs in embedded.items()}
    return MassFunction._from_masks(frame, masses, given.mode)


def marginalize(m: MassFunction, factor_index: int) -> MassFunction:
    """Project a mass function on a product frame onto one factor."""
    if m.frame.factors is None:
        raise NotProductFrameError(f"{m.frame!r} is not a product frame")
    if not 0 <= factor_index < len(m.frame.factors):
        raise ValueError(f"factor index {factor_index} out of range")
    factor = m.frame.factors[factor_index]
    grouped: dict[int, list] = {}
    for subset, value in m.items():
        image = project_subset(m.frame, factor_index, subset)
        grouped.setdefault(image.mask, []).append(value)
    masses = {mask: _total(vs, m.mode) for mask, vs in grouped.items()}
    return MassFunction._from_masks(factor, masses, m.mode)


def linf_distance(m1: MassFunction, m2: MassFunction) -> Fraction | float:
    """Largest absolute mass difference over all subsets."""
    if m1.frame.atoms != m2.frame.atoms:
        raise FrameMismatchError("cannot compare mass functions on different frames")
    exact = m1.mode == RATIONAL and m2.mode == RATIONAL
    worst: Fraction | float = Fraction(0) if exact else 0.0
    for mask in set(m1._masses) | set(m2._masses):
        v1 = m1._masses.get(mask, 0)
        v2 = m2._masses.get(mask, 0)
        d = abs(v1 - v2) if exact else abs(float(v1) - float(v2))
        if d > worst:
            worst = d
    return worst
