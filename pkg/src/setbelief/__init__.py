"""Belief and plausibility functions over finite frames, grounded in set-valued data.

The library covers frames of discernment with bitmask subsets, mass/belief/
plausibility functions with exact-rational and floating arithmetic,
Dempster's rule with explicit conflict reporting, set-valued populations
with measurement and labeling semantics, the relabeling process (exact and
simulated), confidence-bounded estimation from counts, and an executable
casebook of golden examples.
"""

from .belief import (
    FLOATING,
    RATIONAL,
    CombinationReport,
    MassFunction,
    combine_dempster,
    condition_embed,
    linf_distance,
    marginalize,
    mass_from_bel,
)
from .casebook import (
    RoughSetParams,
    available_cases,
    rs_combined_conditional,
    rs_expert_masses,
    rs_gap,
    run_case,
)
from .errors import (
    CsvFormatError,
    FrameMismatchError,
    IncompleteTableError,
    InvalidLabelingError,
    InvalidMassError,
    NotProductFrameError,
    PowersetLimitError,
    SetBeliefError,
    TotalConflictError,
    UnknownAtomError,
    UnknownCaseError,
)
from .estimate import CountTable, estimate_raw, estimate_with_confidence, wilson_lower
from .frame import (
    DEFAULT_MAX_ATOMS,
    Frame,
    SubsetRef,
    cylindrical_extension,
    max_frame_atoms,
    product,
    project_subset,
)
from .population import (
    AxiomViolation,
    LabelingSpec,
    Population,
    SetValuedRecord,
    apply_labeling,
    canonical_measure,
    check_measurement_axioms,
    freq_bel,
    freq_mass,
    freq_pl,
)
from .relabel import (
    LabelDistribution,
    SimulationReport,
    relabel_exact,
    relabel_iterate,
    relabel_simulate,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomViolation",
    "CombinationReport",
    "CountTable",
    "CsvFormatError",
    "DEFAULT_MAX_ATOMS",
    "FLOATING",
    "Frame",
    "FrameMismatchError",
    "IncompleteTableError",
    "InvalidLabelingError",
    "InvalidMassError",
    "LabelDistribution",
    "LabelingSpec",
    "MassFunction",
    "NotProductFrameError",
    "Population",
    "PowersetLimitError",
    "RATIONAL",
    "RoughSetParams",
    "SetBeliefError",
    "SetValuedRecord",
    "SimulationReport",
    "SubsetRef",
    "TotalConflictError",
    "UnknownAtomError",
    "UnknownCaseError",
    "apply_labeling",
    "available_cases",
    "canonical_measure",
    "check_measurement_axioms",
    "combine_dempster",
    "condition_embed",
    "cylindrical_extension",
    "estimate_raw",
    "estimate_with_confidence",
    "freq_bel",
    "freq_mass",
    "freq_pl",
    "linf_distance",
    "marginalize",
    "mass_from_bel",
    "max_frame_atoms",
    "product",
    "project_subset",
    "relabel_exact",
    "relabel_iterate",
    "relabel_simulate",
    "rs_combined_conditional",
    "rs_expert_masses",
    "rs_gap",
    "run_case",
    "wilson_lower",
]
