from .enumerate import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    enumerate_models,
    equivalence_relations,
    kd45_relations,
    set_partitions,
)
from .sat import (
    SATISFIABLE,
    UNSAT_PROVED,
    UNSAT_WITHIN_BOUND,
    ConsistencyVerdict,
    EngineError,
    EntailmentVerdict,
    SatResult,
    completeness_bound,
    contract,
    entails,
    is_consistent,
    is_satisfiable,
)

__all__ = [
    "DEFAULT_BUDGET",
    "SATISFIABLE",
    "UNSAT_PROVED",
    "UNSAT_WITHIN_BOUND",
    "BudgetExceeded",
    "ConsistencyVerdict",
    "EngineError",
    "EntailmentVerdict",
    "SatResult",
    "completeness_bound",
    "contract",
    "entails",
    "enumerate_models",
    "equivalence_relations",
    "is_consistent",
    "is_satisfiable",
    "kd45_relations",
    "set_partitions",
]
