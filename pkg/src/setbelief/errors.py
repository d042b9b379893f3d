"""Exception types shared across the library."""


class SetBeliefError(Exception):
    """Base class for all domain errors raised by this package."""


class FrameMismatchError(SetBeliefError):
    """Two objects that must share a frame do not."""


class UnknownAtomError(SetBeliefError):
    """An atom name does not belong to the frame."""

    def __init__(self, name: str, frame_atoms) -> None:
        self.name = name
        super().__init__(f"unknown atom {name!r}; frame atoms are {list(frame_atoms)}")


class NotProductFrameError(SetBeliefError):
    """A factor operation was applied to a frame that is not a product."""


class InvalidMassError(SetBeliefError):
    """A mass assignment violates normalization, positivity, or the empty-set rule."""


class TotalConflictError(SetBeliefError):
    """Combination impossible: every pair of focal sets has empty intersection."""


class InvalidLabelingError(SetBeliefError):
    """A nonempty label does not intersect the value set of a record it applies to."""


class IncompleteTableError(SetBeliefError):
    """A truth table over the powerset is missing subsets or holds non-boolean entries."""


class PowersetLimitError(SetBeliefError):
    """The operation needs the full powerset and the frame exceeds the supported size."""


class CsvFormatError(SetBeliefError):
    """Malformed CSV input; carries the offending 1-based line number."""

    def __init__(self, line: int, message: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}")


class UnknownCaseError(SetBeliefError):
    """A casebook case name is not registered."""
