from .formula import (
    CORE_TYPES,
    RESERVED_PREFIX,
    And,
    Atom,
    Believe,
    Dyn,
    Formula,
    FormulaError,
    Iff,
    Implies,
    Know,
    Not,
    Or,
    atoms_of,
    conj,
    desugar,
    event_atom,
    is_core,
    modal_depth,
    subformulas,
)
from .parser import ParseError, ReservedNameError, parse_formula, render_formula

__all__ = [
    "CORE_TYPES",
    "RESERVED_PREFIX",
    "And",
    "Atom",
    "Believe",
    "Dyn",
    "Formula",
    "FormulaError",
    "Iff",
    "Implies",
    "Know",
    "Not",
    "Or",
    "ParseError",
    "ReservedNameError",
    "atoms_of",
    "conj",
    "desugar",
    "event_atom",
    "is_core",
    "modal_depth",
    "parse_formula",
    "render_formula",
    "subformulas",
]
