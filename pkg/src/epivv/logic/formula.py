"""Formula trees for the single-agent dynamic epistemic language.

Nodes are frozen dataclasses: structurally comparable, hashable and safe to
share.  ``Or``, ``Implies``, ``Iff`` and ``Dyn`` are surface sugar; ``desugar``
rewrites them into the core connectives (``Atom``, ``Not``, ``And``, ``Know``,
``Believe``) understood by the model checker and the decision engine.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
RESERVED_PREFIX = "occ__"
KEYWORDS = frozenset({"K", "B"})


class FormulaError(ValueError):
    pass


class _Node:
    __slots__ = ()

    def __hash__(self) -> int:
        # cached: trees are immutable and hashed heavily by the engine
        try:
            return self.__dict__["_h"]
        except KeyError:
            h = hash((type(self).__name__,) + self._key())
            object.__setattr__(self, "_h", h)
            return h

    def _key(self) -> tuple:  # pragma: no cover - overridden
        raise NotImplementedError

    def __str__(self) -> str:
        from .parser import render_formula

        return render_formula(self)


@dataclass(frozen=True, eq=True)
class Atom(_Node):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not IDENT_RE.match(self.name):
            raise FormulaError(f"invalid atom name {self.name!r}")
        if self.name in KEYWORDS:
            raise FormulaError(f"{self.name!r} is a reserved operator name")

    def _key(self):
        return (self.name,)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Not(_Node):
    child: "Formula"

    def _key(self):
        return (self.child,)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class And(_Node):
    left: "Formula"
    right: "Formula"

    def _key(self):
        return (self.left, self.right)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Or(_Node):
    left: "Formula"
    right: "Formula"

    def _key(self):
        return (self.left, self.right)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Implies(_Node):
    left: "Formula"
    right: "Formula"

    def _key(self):
        return (self.left, self.right)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Iff(_Node):
    left: "Formula"
    right: "Formula"

    def _key(self):
        return (self.left, self.right)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Know(_Node):
    child: "Formula"

    def _key(self):
        return (self.child,)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Believe(_Node):
    child: "Formula"

    def _key(self):
        return (self.child,)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Dyn(_Node):
    event: str
    child: "Formula"

    def __post_init__(self):
        if not isinstance(self.event, str) or not IDENT_RE.match(self.event):
            raise FormulaError(f"invalid event name {self.event!r}")

    def _key(self):
        return (self.event, self.child)

    __hash__ = _Node.__hash__


Formula = Union[Atom, Not, And, Or, Implies, Iff, Know, Believe, Dyn]
CORE_TYPES = (Atom, Not, And, Know, Believe)
BINARY_TYPES = (And, Or, Implies, Iff)


def event_atom(event: str) -> Atom:
    """The reserved occurrence atom standing for ``[event]`` after flattening."""
    return Atom(RESERVED_PREFIX + event)


def conj(items) -> Formula | None:
    """Left-folded conjunction; ``None`` for an empty sequence."""
    out = None
    for f in items:
        out = f if out is None else And(out, f)
    return out


def subformulas(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, (Not, Know, Believe, Dyn)):
            stack.append(g.child)
        elif isinstance(g, BINARY_TYPES):
            stack.append(g.right)
            stack.append(g.left)


def atoms_of(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Atom))


def modal_depth(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Not):
        return modal_depth(f.child)
    if isinstance(f, (Know, Believe)):
        return 1 + modal_depth(f.child)
    if isinstance(f, Dyn):
        return modal_depth(f.child)
    return max(modal_depth(f.left), modal_depth(f.right))


def is_core(f: Formula) -> bool:
    return all(isinstance(g, CORE_TYPES) for g in subformulas(f))


def desugar(f: Formula) -> Formula:
    """Rewrite sugar and dynamic operators into core connectives.

    ``a | b`` becomes ``!(!a & !b)``, ``a -> b`` becomes ``!(a & !b)``,
    ``a <-> b`` the conjunction of both implications, and ``[v]phi`` is
    flattened to ``occ__v -> phi`` before the implication is expanded.
    """
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(desugar(f.child))
    if isinstance(f, And):
        return And(desugar(f.left), desugar(f.right))
    if isinstance(f, Know):
        return Know(desugar(f.child))
    if isinstance(f, Believe):
        return Believe(desugar(f.child))
    if isinstance(f, Or):
        return Not(And(Not(desugar(f.left)), Not(desugar(f.right))))
    if isinstance(f, Implies):
        return _imp(desugar(f.left), desugar(f.right))
    if isinstance(f, Iff):
        a, b = desugar(f.left), desugar(f.right)
        return And(_imp(a, b), _imp(b, a))
    if isinstance(f, Dyn):
        return _imp(event_atom(f.event), desugar(f.child))
    raise TypeError(f"not a formula: {f!r}")


def _imp(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))
