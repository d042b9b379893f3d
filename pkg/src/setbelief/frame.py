"""Finite frames of discernment and bitmask-encoded subsets.

A frame is an ordered list of distinct atom names.  Subsets of a frame are
encoded as bitmasks over the atom order, so set algebra is integer bit
algebra and iterating a full powerset is cheap for the frame sizes this
library targets.  Frames may be built as products of two factor frames, in
which case atoms are canonically rendered ``(a,b)`` and subsets can be
moved between a factor and the joint frame.

Frames and subsets are immutable; they are safe to share across threads.
"""

from __future__ import annotations

import os
from typing import Iterable, Iterator

from .errors import FrameMismatchError, NotProductFrameError, UnknownAtomError

DEFAULT_MAX_ATOMS = 24
MAX_ATOMS_ENV = "SETBELIEF_MAX_ATOMS"


def max_frame_atoms() -> int:
    """Configured frame-size cap: SETBELIEF_MAX_ATOMS or 24 by default.

    The cap keeps powerset iteration (2^n subsets) tractable; every subset
    fits in one machine word regardless.
    """
    raw = os.environ.get(MAX_ATOMS_ENV)
    if raw is None:
        return DEFAULT_MAX_ATOMS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_ATOMS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{MAX_ATOMS_ENV} must be positive, got {value}")
    return value


class Frame:
    """An ordered finite domain of mutually exclusive atom names."""

    __slots__ = ("atoms", "factors", "_index")

    def __init__(self, names: Iterable[str], factors: tuple["Frame", ...] | None = None):
        atoms = tuple(names)
        if not atoms:
            raise ValueError("a frame needs at least one atom")
        limit = max_frame_atoms()
        if len(atoms) > limit:
            raise ValueError(f"frame size {len(atoms)} exceeds the configured maximum {limit}")
        index: dict[str, int] = {}
        for i, name in enumerate(atoms):
            if not isinstance(name, str) or not name:
                raise ValueError(f"atom names must be nonempty strings, got {name!r}")
            if name in index:
                raise ValueError(f"duplicate atom name {name!r}")
            index[name] = i
        self.atoms = atoms
        self.factors = factors
        self._index = index

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def is_product(self) -> bool:
        return self.factors is not None

    @property
    def factor_shape(self) -> tuple[int, ...] | None:
        if self.factors is None:
            return None
        return tuple(f.size for f in self.factors)

    def atom_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownAtomError(name, self.atoms) from None

    def subset(self, names: Iterable[str] = ()) -> "SubsetRef":
        """Encode the given atom names as a subset (duplicates collapse)."""
        mask = 0
        for name in names:
            mask |= 1 << self.atom_index(name)
        return SubsetRef(self, mask)

    def empty(self) -> "SubsetRef":
        return SubsetRef(self, 0)

    def full(self) -> "SubsetRef":
        return SubsetRef(self, (1 << self.size) - 1)

    def singleton(self, name: str) -> "SubsetRef":
        return SubsetRef(self, 1 << self.atom_index(name))

    def all_subsets(self, include_empty: bool = True) -> Iterator["SubsetRef"]:
        """Iterate all 2^n subsets in mask order; mind the cost for large frames."""
        start = 0 if include_empty else 1
        for mask in range(start, 1 << self.size):
            yield SubsetRef(self, mask)

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        # Equality is by atom list only; factor structure is bookkeeping.
        if not isinstance(other, Frame):
            return NotImplemented
        return self.atoms == other.atoms

    def __hash__(self) -> int:
        return hash(self.atoms)

    def __repr__(self) -> str:
        return f"Frame({list(self.atoms)!r})"


def product(f1: Frame, f2: Frame) -> Frame:
    """Product frame with atoms ``(a,b)``, lexicographic in factor order."""
    names = [f"({a},{b})" for a in f1.atoms for b in f2.atoms]
    return Frame(names, factors=(f1, f2))


class SubsetRef:
    """A subset of a frame's atoms, encoded as a bitmask over atom order."""

    __slots__ = ("frame", "mask")

    def __init__(self, frame: Frame, mask: int):
        if not 0 <= mask < (1 << frame.size):
            raise ValueError(f"mask {mask:#x} out of range for a {frame.size}-atom frame")
        self.frame = frame
        self.mask = mask

    def atoms(self) -> tuple[str, ...]:
        """Decode back to atom names, in frame order."""
        return tuple(a for i, a in enumerate(self.frame.atoms) if self.mask >> i & 1)

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_full(self) -> bool:
        return self.mask == (1 << self.frame.size) - 1

    def issubset(self, other: "SubsetRef") -> bool:
        _require_same_frame(self, other)
        return self.mask & ~other.mask == 0

    def intersect(self, other: "SubsetRef") -> "SubsetRef":
        _require_same_frame(self, other)
        return SubsetRef(self.frame, self.mask & other.mask)

    def union(self, other: "SubsetRef") -> "SubsetRef":
        _require_same_frame(self, other)
        return SubsetRef(self.frame, self.mask | other.mask)

    def complement(self) -> "SubsetRef":
        return SubsetRef(self.frame, ~self.mask & (1 << self.frame.size) - 1)

    def difference(self, other: "SubsetRef") -> "SubsetRef":
        _require_same_frame(self, other)
        return SubsetRef(self.frame, self.mask & ~other.mask)

    __and__ = intersect
    __or__ = union
    __sub__ = difference
    __invert__ = complement
    __le__ = issubset

    def __ge__(self, other: "SubsetRef") -> bool:
        return other.issubset(self)

    def __lt__(self, other: "SubsetRef") -> bool:
        return self.issubset(other) and self.mask != other.mask

    def __gt__(self, other: "SubsetRef") -> bool:
        return other < self

    def __bool__(self) -> bool:
        return self.mask != 0

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms())

    def __contains__(self, name: object) -> bool:
        if not isinstance(name, str):
            return False
        i = self.frame._index.get(name)
        return i is not None and self.mask >> i & 1 == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubsetRef):
            return NotImplemented
        return self.mask == other.mask and self.frame.atoms == other.frame.atoms

    def __hash__(self) -> int:
        return hash((self.frame.atoms, self.mask))

    def __repr__(self) -> str:
        return "{" + ",".join(self.atoms()) + "}"


def _require_same_frame(a: SubsetRef, b: SubsetRef) -> None:
    if a.frame.atoms != b.frame.atoms:
        raise FrameMismatchError(
            f"subsets belong to different frames: {a.frame!r} vs {b.frame!r}"
        )


def _factor_strides(joint: Frame, factor_index: int) -> tuple[Frame, int, int, int]:
    """Resolve a factor of a binary product frame into index arithmetic.

    Joint atom order is lexicographic, so atom (i, j) of f1 x f2 sits at
    joint index i * |f2| + j.
    """
    if joint.factors is None:
        raise NotProductFrameError(f"{joint!r} is not a product frame")
    if not 0 <= factor_index < len(joint.factors):
        raise ValueError(
            f"factor index {factor_index} out of range for {len(joint.factors)} factors"
        )
    f1, f2 = joint.factors
    if factor_index == 0:
        return f1, f2.size, 1, f2.size  # own stride f2.size, co-size f2
    return f2, 1, f2.size, f1.size


def cylindrical_extension(joint: Frame, factor_index: int, a: SubsetRef) -> SubsetRef:
    """Lift a factor subset to the joint frame: all atoms whose component lies in it."""
    factor, own_stride, other_stride, other_size = _factor_strides(joint, factor_index)
    if a.frame.atoms != factor.atoms:
        raise FrameMismatchError(
            f"subset frame {a.frame!r} is not factor {factor_index} of {joint!r}"
        )
    mask = 0
    for i in range(factor.size):
        if not a.mask >> i & 1:
            continue
        for j in range(other_size):
            mask |= 1 << (i * own_stride + j * other_stride)
    return SubsetRef(joint, mask)


def project_subset(joint: Frame, factor_index: int, a: SubsetRef) -> SubsetRef:
    """Image of a joint subset under the factor coordinate map."""
    factor, own_stride, other_stride, other_size = _factor_strides(joint, factor_index)
    if a.frame.atoms != joint.atoms:
        raise FrameMismatchError(f"subset frame {a.frame!r} is not the joint frame {joint!r}")
    mask = 0
    for i in range(factor.size):
        for j in range(other_size):
            if a.mask >> (i * own_stride + j * other_stride) & 1:
                mask |= 1 << i
                break
    return SubsetRef(factor, mask)
