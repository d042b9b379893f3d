"""The relabeling process, exact and simulated.

Relabeling draws a label for each object from a fixed distribution,
independently of whatever the object's value set is, intersects the two,
and discards the object when the intersection is empty.  The exact
expected distribution of the surviving intersections is computed here by
explicit conditioning, deliberately not by calling Dempster's rule: that
the two computations agree is the central identity this package verifies,
so it must remain an equality of independent routes rather than a
definition.

The Monte Carlo simulation uses numpy's Philox counter-based generator.
Given the same (seed, n_draws, chunks) triple it is bit-reproducible; the
generator name and chunk count are recorded in the report.  Chunk c draws
from ``Philox(key=seed)`` jumped c times, so chunks may run in any order
or in parallel without changing the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .belief import FLOATING, MassFunction, RATIONAL, _total
from .errors import FrameMismatchError, TotalConflictError
from .population import Population

GENERATOR_NAME = "numpy-philox4x64"


@dataclass(frozen=True)
class LabelDistribution:
    """The distribution a label is drawn from, identical for every object."""

    mass: MassFunction


Labels = Union[LabelDistribution, MassFunction]


def _label_mass(labels: Labels) -> MassFunction:
    if isinstance(labels, LabelDistribution):
        return labels.mass
    return labels


@dataclass(frozen=True)
class SimulationReport:
    """Outcome of a seeded relabeling simulation.

    ``empirical`` is built from the kept draws only; the discard fraction
    estimates the conflict mass of the corresponding exact combination.
    """

    empirical: MassFunction
    draws_attempted: int
    draws_discarded: int
    seed: int
    generator: str = GENERATOR_NAME
    chunks: int = 1

    @property
    def draws_kept(self) -> int:
        return self.draws_attempted - self.draws_discarded

    @property
    def discard_fraction(self) -> Fraction:
        return Fraction(self.draws_discarded, self.draws_attempted)


def relabel_exact(pop_mass: MassFunction, labels: Labels) -> MassFunction:
    """Exact distribution of value-intersect-label given a nonempty result.

    Double sum over focal pairs with explicit conditioning on survival:
    kept weight per intersection divided by total kept weight.
    """
    label_mass = _label_mass(labels)
    if pop_mass.frame.atoms != label_mass.frame.atoms:
        raise FrameMismatchError("population mass and labels live on different frames")
    mode = RATIONAL if pop_mass.mode == RATIONAL and label_mass.mode == RATIONAL else FLOATING
    kept: dict[int, list] = {}
    for value, vw in pop_mass._masses.items():
        for label, lw in label_mass._masses.items():
            survivor = value & label
            if survivor == 0:
                continue
            w = (vw * lw) if mode == RATIONAL else float(vw) * float(lw)
            kept.setdefault(survivor, []).append(w)
    if not kept:
        raise TotalConflictError("every draw would be discarded: no label fits any value")
    kept_total = _total([w for ws in kept.values() for w in ws], mode)
    masses = {mask: _total(ws, mode) / kept_total for mask, ws in kept.items()}
    return MassFunction._from_masks(pop_mass.frame, masses, mode)


def relabel_iterate(pop_mass: MassFunction, label_seq: Sequence[Labels]) -> MassFunction:
    """Left fold of :func:`relabel_exact` over a sequence of label draws."""
    if not label_seq:
        raise ValueError("label_seq must contain at least one distribution")
    current = pop_mass
    for labels in label_seq:
        current = relabel_exact(current, labels)
    return current


def _chunk_sizes(n_draws: int, chunks: int) -> list[int]:
    base, extra = divmod(n_draws, chunks)
    return [base + (1 if i < extra else 0) for i in range(chunks)]


def relabel_simulate(
    p: Population,
    labels: Labels,
    n_draws: int,
    seed: int,
    chunks: int = 1,
) -> SimulationReport:
    """Simulate the relabeling process on a population.

    Each draw samples a record proportionally to weight and a label from
    the label distribution, tallies the intersection, and counts a discard
    when it is empty.  The empirical mass function is the kept tallies
    normalized by the number of kept draws (exact rationals, since tallies
    are counts).  Raises :class:`TotalConflictError` if every draw was
    discarded rather than fabricating a mass function.
    """
    if n_draws < 1:
        raise ValueError(f"n_draws must be at least 1, got {n_draws}")
    if chunks < 1 or chunks > n_draws:
        raise ValueError(f"chunks must be in 1..n_draws, got {chunks}")
    if not 0 <= seed < 1 << 64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    label_mass = _label_mass(labels)
    if label_mass.frame.atoms != p.frame.atoms:
        raise FrameMismatchError("labels live on a different frame than the population")
    if p.frame.size > 63:
        raise ValueError("simulation supports frames of at most 63 atoms (one int64 mask)")

    value_masks = np.array([r.value.mask for r in p.records], dtype=np.int64)
    value_probs = np.array([r.weight for r in p.records], dtype=np.float64)
    value_probs /= value_probs.sum()
    label_items = list(label_mass.items())
    label_masks = np.array([s.mask for s, _ in label_items], dtype=np.int64)
    label_probs = np.array([float(v) for _, v in label_items], dtype=np.float64)
    label_probs /= label_probs.sum()

    tallies: dict[int, int] = {}
    discarded = 0
    for chunk_index, size in enumerate(_chunk_sizes(n_draws, chunks)):
        if size == 0:
            continue
        # Fresh keyed stream per chunk: chunk c is the base stream jumped c
        # times, independent of whether other chunks ran first.
        stream = np.random.Philox(key=seed)
        if chunk_index:
            stream = stream.jumped(chunk_index)
        rng = np.random.Generator(stream)
        vi = rng.choice(len(value_masks), size=size, p=value_probs)
        li = rng.choice(len(label_masks), size=size, p=label_probs)
        inter = value_masks[vi] & label_masks[li]
        discarded += int(np.count_nonzero(inter == 0))
        survivors, counts = np.unique(inter[inter != 0], return_counts=True)
        for mask, count in zip(survivors.tolist(), counts.tolist()):
            tallies[mask] = tallies.get(mask, 0) + count

    kept = n_draws - discarded
    if kept == 0:
        raise TotalConflictError(f"all {n_draws} draws were discarded")
    empirical = MassFunction._from_masks(
        p.frame, {mask: Fraction(count, kept) for mask, count in tallies.items()}
    )
    return SimulationReport(
        empirical=empirical,
        draws_attempted=n_draws,
        draws_discarded=discarded,
        seed=seed,
        chunks=chunks,
    )
