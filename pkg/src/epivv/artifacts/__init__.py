from .encoding import (
    activity_knowledge,
    activity_occurrence,
    claim_beliefs,
    criterion_axioms,
    evidence_axioms,
    state_axioms,
    supporting_states,
    value_atom,
)
from .ledger import (
    BelievedEntry,
    ConflictingEvidenceError,
    EvidenceLedger,
    KnownEntry,
    LedgerError,
    UnknownStateError,
    apply_activity,
    build_ledger,
    replay,
)
from .model import (
    DEFAULT_THRESHOLD,
    TOP_LEVEL_KEYS,
    Activity,
    ArtifactGraph,
    Criterion,
    EvidenceSpec,
    EvidenceState,
    Goal,
    ImplementationPath,
    Need,
    Outcome,
    ProjectError,
    Requirement,
    Stakeholder,
    SubCriterion,
    SystemDescriptor,
    load_project,
    load_project_file,
    load_schema,
    value_label,
)
from .wellformed import ItemCheck, WellFormednessReport, well_formed

__all__ = [
    "DEFAULT_THRESHOLD",
    "TOP_LEVEL_KEYS",
    "Activity",
    "ArtifactGraph",
    "BelievedEntry",
    "ConflictingEvidenceError",
    "Criterion",
    "EvidenceLedger",
    "EvidenceSpec",
    "EvidenceState",
    "Goal",
    "ImplementationPath",
    "ItemCheck",
    "KnownEntry",
    "LedgerError",
    "Need",
    "Outcome",
    "ProjectError",
    "Requirement",
    "Stakeholder",
    "SubCriterion",
    "SystemDescriptor",
    "UnknownStateError",
    "WellFormednessReport",
    "activity_knowledge",
    "activity_occurrence",
    "apply_activity",
    "build_ledger",
    "claim_beliefs",
    "criterion_axioms",
    "evidence_axioms",
    "load_project",
    "load_project_file",
    "load_schema",
    "replay",
    "state_axioms",
    "supporting_states",
    "value_atom",
    "value_label",
    "well_formed",
]
