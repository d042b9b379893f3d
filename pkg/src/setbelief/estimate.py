"""Mass estimation from counted data with confidence-bounded cells.

Raw estimation divides each subset's count by the total.  The cautious
variant replaces every mass except the full frame's by a Wilson score
lower confidence bound and shifts the freed weight onto the full frame,
treating doubtful cases as compatible with everything.

The bound used is the lower endpoint of the Wilson score interval at
confidence 1 - alpha, i.e. with normal quantile z = Phi^-1(1 - alpha/2),
applied one-sidedly.  At alpha = 1 the interval has zero width and the
estimate degenerates to the raw frequencies.  Wilson was chosen for its
closed form (no special functions beyond the normal quantile) and sane
behavior at zero counts; the significance level is per cell by default,
with an optional Bonferroni division for family-wise control.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from statistics import NormalDist
from typing import Mapping

from .belief import FLOATING, MassFunction
from .errors import FrameMismatchError
from .frame import Frame, SubsetRef
from .population import Population


@dataclass(frozen=True)
class CountTable:
    """Counts of objects per observed value set."""

    frame: Frame
    counts: Mapping[SubsetRef, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", dict(self.counts))
        for subset, count in self.counts.items():
            if subset.frame.atoms != self.frame.atoms:
                raise FrameMismatchError(f"{subset!r} does not belong to {self.frame!r}")
            if subset.is_empty():
                raise ValueError("the empty set cannot be counted")
            if not isinstance(count, int) or isinstance(count, bool) or count < 0:
                raise ValueError(f"count for {subset!r} must be a nonnegative integer")
        if self.total == 0:
            raise ValueError("count table is empty")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @classmethod
    def from_population(cls, p: Population) -> "CountTable":
        return cls(p.frame, {r.value: r.weight for r in p.records})


def estimate_raw(table: CountTable) -> MassFunction:
    """Relative frequencies as an exact-rational mass function."""
    total = table.total
    entries = {s.mask: Fraction(c, total) for s, c in table.counts.items() if c > 0}
    return MassFunction._from_masks(table.frame, entries)


def wilson_lower(successes: int, trials: int, alpha: float) -> float:
    """Lower endpoint of the Wilson score interval at confidence 1 - alpha."""
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    if trials <= 0:
        raise ValueError(f"trials must be positive, got {trials}")
    if not 0 <= successes <= trials:
        raise ValueError(f"successes must be in 0..{trials}, got {successes}")
    z = NormalDist().inv_cdf(1 - alpha / 2)
    p_hat = successes / trials
    z2 = z * z
    centre = p_hat + z2 / (2 * trials)
    margin = z * math.sqrt(p_hat * (1 - p_hat) / trials + z2 / (4 * trials * trials))
    return max(0.0, (centre - margin) / (1 + z2 / trials))


def estimate_with_confidence(
    table: CountTable, alpha: float, bonferroni: bool = False
) -> MassFunction:
    """Cautious estimate: Wilson lower bounds per cell, remainder on the full frame.

    With ``bonferroni`` the level is divided by the number of bounded cells.
    ``alpha = 1`` is the degenerate zero-width case and returns the raw
    (exact-rational) estimate unchanged; otherwise the result is a floating
    mass function.
    """
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    if alpha == 1:
        return estimate_raw(table)
    full = table.frame.full()
    bounded = [(s, c) for s, c in table.counts.items() if s != full]
    level = alpha / len(bounded) if bonferroni and bounded else alpha
    total = table.total
    entries: dict[int, float] = {}
    for subset, count in bounded:
        low = wilson_lower(count, total, level)
        if low > 0.0:
            entries[subset.mask] = low
    entries[full.mask] = 1.0 - math.fsum(entries.values())
    return MassFunction._from_masks(table.frame, entries, FLOATING)
