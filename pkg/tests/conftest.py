"""Shared fixtures: the shampoo sales tables, frames, and test oracles.

The golden numbers here are transcribed from the source cross-tables once
and reused by the unit and acceptance tests; derived expectations are
computed by independent brute-force helpers rather than by the code under
test.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from setbelief import (
    Frame,
    LabelingSpec,
    MassFunction,
    Population,
    SetValuedRecord,
    product,
)

QUALITY_ATOMS = ("H", "M", "S", "D")
SHOP_ATOMS = ("B", "G")

# Rows of the sales cross-table: (quality test passes, shop test passes) -> count.
SHAMPOO_CELLS: dict[tuple[tuple[str, ...], tuple[str, ...]], int] = {
    (("H",), ("B",)): 20, (("H",), ("G",)): 100, (("H",), ("B", "G")): 70,
    (("M",), ("B",)): 80, (("M",), ("G",)): 100, (("M",), ("B", "G")): 110,
    (("S",), ("B",)): 50, (("S",), ("G",)): 5, (("S",), ("B", "G")): 15,
    (("D",), ("B",)): 10, (("D",), ("G",)): 1, (("D",), ("B", "G")): 3,
    (("H", "S"), ("B",)): 15, (("H", "S"), ("G",)): 10, (("H", "S"), ("B", "G")): 14,
    (("M", "S"), ("B",)): 30, (("M", "S"), ("G",)): 20, (("M", "S"), ("B", "G")): 25,
    (("H", "D"), ("B",)): 8, (("H", "D"), ("G",)): 2, (("H", "D"), ("B", "G")): 3,
    (("M", "D"), ("B",)): 15, (("M", "D"), ("G",)): 7, (("M", "D"), ("B", "G")): 10,
}
SHAMPOO_TOTAL = 723

# Belief column of the mass/belief table, keyed like SHAMPOO_CELLS.
SHAMPOO_BEL: dict[tuple[tuple[str, ...], tuple[str, ...]], int] = {
    (("H",), ("B",)): 20, (("H",), ("G",)): 100, (("H",), ("B", "G")): 190,
    (("M",), ("B",)): 80, (("M",), ("G",)): 100, (("M",), ("B", "G")): 290,
    (("S",), ("B",)): 50, (("S",), ("G",)): 5, (("S",), ("B", "G")): 70,
    (("D",), ("B",)): 10, (("D",), ("G",)): 1, (("D",), ("B", "G")): 14,
    (("H", "S"), ("B",)): 85, (("H", "S"), ("G",)): 115, (("H", "S"), ("B", "G")): 299,
    (("M", "S"), ("B",)): 160, (("M", "S"), ("G",)): 125, (("M", "S"), ("B", "G")): 435,
    (("H", "D"), ("B",)): 38, (("H", "D"), ("G",)): 103, (("H", "D"), ("B", "G")): 217,
    (("M", "D"), ("B",)): 105, (("M", "D"), ("G",)): 108, (("M", "D"), ("B", "G")): 336,
}

# The cross-table after the no-bad-products-in-good-shops relabeling.
MODIFIED_CELLS: dict[tuple[tuple[str, ...], tuple[str, ...]], int] = {
    (("H",), ("B",)): 20, (("H",), ("G",)): 112, (("H",), ("B", "G")): 70,
    (("M",), ("B",)): 80, (("M",), ("G",)): 127, (("M",), ("B", "G")): 110,
    (("S",), ("B",)): 65, (("S",), ("G",)): 0, (("S",), ("B", "G")): 0,
    (("D",), ("B",)): 13, (("D",), ("G",)): 0, (("D",), ("B", "G")): 0,
    (("H", "S"), ("B",)): 15, (("H", "S"), ("G",)): 0, (("H", "S"), ("B", "G")): 14,
    (("M", "S"), ("B",)): 30, (("M", "S"), ("G",)): 0, (("M", "S"), ("B", "G")): 25,
    (("H", "D"), ("B",)): 8, (("H", "D"), ("G",)): 0, (("H", "D"), ("B", "G")): 3,
    (("M", "D"), ("B",)): 15, (("M", "D"), ("G",)): 0, (("M", "D"), ("B", "G")): 10,
}
MODIFIED_TOTAL = 717
MODIFIED_COLUMN_TOTALS = {"B": 246, "G": 239, ("B", "G"): 232}


def joint_atom_names(qualities, shops) -> list[str]:
    return [f"({q},{s})" for q in qualities for s in shops]


@pytest.fixture(scope="session")
def quality_frame() -> Frame:
    return Frame(QUALITY_ATOMS)


@pytest.fixture(scope="session")
def shop_frame() -> Frame:
    return Frame(SHOP_ATOMS)


@pytest.fixture(scope="session")
def joint_frame(quality_frame, shop_frame) -> Frame:
    return product(quality_frame, shop_frame)


def shampoo_population(joint: Frame) -> Population:
    records = [
        SetValuedRecord(joint.subset(joint_atom_names(qs, ss)), weight)
        for (qs, ss), weight in SHAMPOO_CELLS.items()
    ]
    return Population(joint, records)


@pytest.fixture(scope="session")
def shampoo(joint_frame) -> Population:
    return shampoo_population(joint_frame)


def quality_marginal_population(quality: Frame) -> Population:
    totals: dict[tuple[str, ...], int] = {}
    for (qs, _), weight in SHAMPOO_CELLS.items():
        totals[qs] = totals.get(qs, 0) + weight
    return Population(
        quality,
        [SetValuedRecord(quality.subset(qs), w) for qs, w in totals.items()],
    )


@pytest.fixture(scope="session")
def quality_marginal(quality_frame) -> Population:
    return quality_marginal_population(quality_frame)


def coot_labeling(joint: Frame) -> LabelingSpec:
    """The relabeling behind the modified table, encoded cell-by-cell."""
    keep = joint.subset(
        n for n in joint.atoms if n not in ("(S,G)", "(D,G)")
    )
    drop = joint.empty()
    rule = {
        joint.subset(joint_atom_names(("S",), ("G",))): drop,
        joint.subset(joint_atom_names(("D",), ("G",))): drop,
        joint.subset(joint_atom_names(("S",), ("B", "G"))): keep,
        joint.subset(joint_atom_names(("D",), ("B", "G"))): keep,
        joint.subset(joint_atom_names(("H", "S"), ("G",))): keep,
        joint.subset(joint_atom_names(("M", "S"), ("G",))): keep,
        joint.subset(joint_atom_names(("H", "D"), ("G",))): keep,
        joint.subset(joint_atom_names(("M", "D"), ("G",))): keep,
    }
    return LabelingSpec(rule)


def shampoo_csv_text(count_column: bool = True) -> str:
    lines = ["quality,shop,count" if count_column else "quality,shop"]
    for (qs, ss), weight in SHAMPOO_CELLS.items():
        row = ["|".join(qs), "|".join(ss)]
        if count_column:
            row.append(str(weight))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


# -- random generators used by property-style suites -------------------------


def random_rational_mass(frame: Frame, rng: random.Random, max_focals: int = 4,
                         force_full: bool = False) -> MassFunction:
    """A random exact-rational mass function with small integer weights."""
    n_masks = (1 << frame.size) - 1
    count = rng.randint(1, min(max_focals, n_masks))
    masks = rng.sample(range(1, n_masks + 1), count)
    if force_full and n_masks not in masks:
        masks[0] = n_masks
    weights = [rng.randint(1, 9) for _ in masks]
    total = sum(weights)
    entries = {
        frame.subset(_mask_atoms(frame, mask)): Fraction(w, total)
        for mask, w in zip(masks, weights)
    }
    return MassFunction(frame, entries)


def random_floating_mass(frame: Frame, rng: random.Random, max_focals: int = 4,
                         anchor_atom: int | None = None) -> MassFunction:
    """A random floating mass; with ``anchor_atom`` every focal contains that atom."""
    n = frame.size
    masks = set()
    for _ in range(rng.randint(1, max_focals)):
        mask = rng.randint(1, (1 << n) - 1)
        if anchor_atom is not None:
            mask |= 1 << anchor_atom
        masks.add(mask)
    weights = {mask: rng.random() + 0.05 for mask in masks}
    total = sum(weights.values())
    entries = {
        frame.subset(_mask_atoms(frame, mask)): w / total for mask, w in weights.items()
    }
    return MassFunction(frame, entries)


def _mask_atoms(frame: Frame, mask: int) -> list[str]:
    return [a for i, a in enumerate(frame.atoms) if mask >> i & 1]


@st.composite
def rational_masses(draw, frame: Frame, max_focals: int = 5) -> MassFunction:
    """Hypothesis strategy: exact-rational mass functions on the given frame."""
    top = (1 << frame.size) - 1
    masks = draw(
        st.lists(st.integers(1, top), min_size=1, max_size=max_focals, unique=True)
    )
    weights = draw(
        st.lists(st.integers(1, 9), min_size=len(masks), max_size=len(masks))
    )
    total = sum(weights)
    entries = {
        frame.subset(_mask_atoms(frame, mask)): Fraction(w, total)
        for mask, w in zip(masks, weights)
    }
    return MassFunction(frame, entries)


@st.composite
def floating_masses(draw, frame: Frame, max_focals: int = 5) -> MassFunction:
    """Hypothesis strategy: floating mass functions on the given frame."""
    top = (1 << frame.size) - 1
    masks = draw(
        st.lists(st.integers(1, top), min_size=1, max_size=max_focals, unique=True)
    )
    raw = draw(
        st.lists(
            st.floats(min_value=0.05, max_value=1.0, allow_nan=False),
            min_size=len(masks),
            max_size=len(masks),
        )
    )
    total = sum(raw)
    entries = {
        frame.subset(_mask_atoms(frame, mask)): w / total for mask, w in zip(masks, raw)
    }
    return MassFunction(frame, entries)


# -- independent oracles ------------------------------------------------------


def roughset_joint_enumeration(params) -> dict[str, Fraction]:
    """Brute-force the combined-indication mass over all 18 joint outcomes.

    Enumerates decision value x expert-1 indication x expert-2 indication,
    multiplies prior and conditionals, intersects the indicated sets, and
    accumulates.  Independent of the closed formulas under test.
    """
    specific = {"d1": frozenset(["d1"]), "d2": frozenset(["d2"])}
    vague = frozenset(["d1", "d2"])
    branches = {
        "d1": (
            params.prior_d1,
            [(specific["d1"], params.expert1_specific_given_d1), (vague, params.expert1_vague_given_d1),
             (specific["d2"], 0)],
            [(specific["d1"], params.expert2_specific_given_d1), (vague, params.expert2_vague_given_d1),
             (specific["d2"], 0)],
        ),
        "d2": (
            params.prior_d2,
            [(specific["d2"], params.expert1_specific_given_d2), (vague, params.expert1_vague_given_d2),
             (specific["d1"], 0)],
            [(specific["d2"], params.expert2_specific_given_d2), (vague, params.expert2_vague_given_d2),
             (specific["d1"], 0)],
        ),
    }
    out: dict[frozenset, Fraction] = {}
    for prior, e1_branches, e2_branches in branches.values():
        for ind1, p1 in e1_branches:
            for ind2, p2 in e2_branches:
                weight = Fraction(prior) * Fraction(p1) * Fraction(p2)
                if weight == 0:
                    continue
                joint = ind1 & ind2
                assert joint, "exhaustively trained experts cannot contradict"
                out[joint] = out.get(joint, Fraction(0)) + weight
    def key(s: frozenset) -> str:
        return "{" + ",".join(sorted(s, key=["d1", "d2"].index)) + "}"
    return {key(s): v for s, v in out.items()}
