"""Two-expert rough-set counterexample, parameterized.

Two experts observe attributes that each indicate either a specific
decision value (d1 or d2) or the vague set {d1, d2}.  Because the experts
are trained on exhaustive data they never contradict: given d1, expert 1
indicates {d1} or the vague set, never {d2}.  Under conditional
independence given the decision, the mass function of the combined
indication has a closed form; it generally differs from the Dempster
combination of the per-expert masses, and ``rs_gap`` measures by how much.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..belief import MassFunction, combine_dempster, linf_distance
from ..frame import Frame

Number = Union[Fraction, float, int]

_PAIR_SUM_TOLERANCE = 1e-12


def decision_frame() -> Frame:
    """The two-valued decision frame {d1, d2}."""
    return Frame(("d1", "d2"))


@dataclass(frozen=True)
class RoughSetParams:
    """Priors and per-expert indication conditionals.

    ``expertN_specific_given_dK`` is the probability, given decision dK,
    that expert N's attribute indicates exactly {dK}; the ``vague``
    counterpart indicates {d1, d2}.  Each specific/vague pair sums to 1
    because the contradicting indication cannot occur under exhaustive
    training data, and the priors sum to 1.
    """

    prior_d1: Number
    prior_d2: Number
    expert1_specific_given_d1: Number
    expert1_vague_given_d1: Number
    expert1_specific_given_d2: Number
    expert1_vague_given_d2: Number
    expert2_specific_given_d1: Number
    expert2_vague_given_d1: Number
    expert2_specific_given_d2: Number
    expert2_vague_given_d2: Number

    def __post_init__(self) -> None:
        pairs = [
            ("priors", self.prior_d1, self.prior_d2),
            ("expert1 given d1", self.expert1_specific_given_d1, self.expert1_vague_given_d1),
            ("expert1 given d2", self.expert1_specific_given_d2, self.expert1_vague_given_d2),
            ("expert2 given d1", self.expert2_specific_given_d1, self.expert2_vague_given_d1),
            ("expert2 given d2", self.expert2_specific_given_d2, self.expert2_vague_given_d2),
        ]
        for name, a, b in pairs:
            for v in (a, b):
                if not 0 <= v <= 1:
                    raise ValueError(f"{name}: value {v} outside [0, 1]")
            total = a + b
            exact = not (isinstance(a, float) or isinstance(b, float))
            if (exact and total != 1) or (not exact and abs(total - 1) > _PAIR_SUM_TOLERANCE):
                raise ValueError(f"{name}: pair must sum to 1, got {total}")


def rs_expert_masses(params: RoughSetParams) -> tuple[MassFunction, MassFunction]:
    """Per-expert masses over {d1, d2} induced by the indication probabilities."""
    frame = decision_frame()
    d1, d2, both = frame.subset(["d1"]), frame.subset(["d2"]), frame.full()
    p1, p2 = params.prior_d1, params.prior_d2
    m1 = MassFunction(
        frame,
        {
            d1: params.expert1_specific_given_d1 * p1,
            d2: params.expert1_specific_given_d2 * p2,
            both: params.expert1_vague_given_d1 * p1 + params.expert1_vague_given_d2 * p2,
        },
    )
    m2 = MassFunction(
        frame,
        {
            d1: params.expert2_specific_given_d1 * p1,
            d2: params.expert2_specific_given_d2 * p2,
            both: params.expert2_vague_given_d1 * p1 + params.expert2_vague_given_d2 * p2,
        },
    )
    return m1, m2


def rs_combined_conditional(params: RoughSetParams) -> MassFunction:
    """Mass of the joint indication under conditional independence given the decision.

    The joint indication of the two experts is the intersection of their
    individual indications; its distribution has a closed form in the
    parameters and sums to 1 analytically.
    """
    frame = decision_frame()
    p1, p2 = params.prior_d1, params.prior_d2
    e1, e3a = params.expert1_specific_given_d1, params.expert1_vague_given_d1
    e2, e3b = params.expert1_specific_given_d2, params.expert1_vague_given_d2
    f1, f3a = params.expert2_specific_given_d1, params.expert2_vague_given_d1
    f2, f3b = params.expert2_specific_given_d2, params.expert2_vague_given_d2
    entries = {
        frame.subset(["d1"]): (e1 * f1 + e1 * f3a + e3a * f1) * p1,
        frame.subset(["d2"]): (e2 * f2 + e2 * f3b + e3b * f2) * p2,
        frame.full(): e3a * f3a * p1 + e3b * f3b * p2,
    }
    return MassFunction(frame, entries)


def rs_gap(params: RoughSetParams) -> Fraction | float:
    """Largest mass difference between the conditional model and Dempster's rule."""
    m1, m2 = rs_expert_masses(params)
    combined = combine_dempster(m1, m2).result
    return linf_distance(rs_combined_conditional(params), combined)
