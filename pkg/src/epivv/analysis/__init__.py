from .confidence import (
    ConfidenceReport,
    StateCheck,
    check_confidence_validity,
    criterion_confidence,
    implied_beliefs_present,
)
from .minimal import coverage, extract_minimal_activity_set, extract_minimal_set
from .system import (
    NECESSARY_ONLY,
    NEITHER,
    REUSE_TABLE,
    SUFFICIENT_AND_NECESSARY,
    SUFFICIENT_ONLY,
    activities_induce,
    check_goal_valid,
    check_proxy_valid,
    check_system_verified,
    classify_vv_relationship,
    verification_serves_validation,
)
from .validity import (
    PAIR_KINDS,
    Limits,
    check_activity_validity,
    check_decomposition,
    check_pair_validity,
    supports,
)
from .verdicts import (
    FAILS,
    HOLDS,
    VACUOUS,
    Issue,
    MinimalSetResult,
    Removal,
    SystemVerdict,
    ValidityVerdict,
    VvClassification,
    Warning,
    Witness,
)

__all__ = [
    "FAILS",
    "HOLDS",
    "NECESSARY_ONLY",
    "NEITHER",
    "PAIR_KINDS",
    "REUSE_TABLE",
    "SUFFICIENT_AND_NECESSARY",
    "SUFFICIENT_ONLY",
    "VACUOUS",
    "ConfidenceReport",
    "Issue",
    "Limits",
    "MinimalSetResult",
    "Removal",
    "StateCheck",
    "SystemVerdict",
    "ValidityVerdict",
    "VvClassification",
    "Warning",
    "Witness",
    "activities_induce",
    "check_activity_validity",
    "check_confidence_validity",
    "check_decomposition",
    "check_goal_valid",
    "check_pair_validity",
    "check_proxy_valid",
    "check_system_verified",
    "classify_vv_relationship",
    "coverage",
    "criterion_confidence",
    "extract_minimal_activity_set",
    "extract_minimal_set",
    "implied_beliefs_present",
    "supports",
    "verification_serves_validation",
]
