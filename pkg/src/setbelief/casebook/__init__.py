"""Golden worked examples and the rough-set counterexample operations."""

from .roughset import (
    RoughSetParams,
    decision_frame,
    rs_combined_conditional,
    rs_expert_masses,
    rs_gap,
)
from .runner import (
    Case,
    CaseReport,
    Check,
    QuantityResult,
    available_cases,
    load_case,
    run_all,
    run_case,
)

__all__ = [
    "Case",
    "CaseReport",
    "Check",
    "QuantityResult",
    "RoughSetParams",
    "available_cases",
    "decision_frame",
    "load_case",
    "rs_combined_conditional",
    "rs_expert_masses",
    "rs_gap",
    "run_all",
    "run_case",
]
