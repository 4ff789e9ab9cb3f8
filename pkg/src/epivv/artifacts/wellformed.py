"""Well-formedness of needs and requirements: singular, parseable, satisfiable."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..engine import is_satisfiable
from ..logic import Atom, ParseError, parse_formula


@dataclass(frozen=True)
class ItemCheck:
    id: str
    atomic: bool
    wff: bool
    consistent: bool
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.atomic and self.wff and self.consistent


@dataclass(frozen=True)
class WellFormednessReport:
    kind: str
    items: tuple[ItemCheck, ...]

    @property
    def verified(self) -> bool:
        return all(i.ok for i in self.items)


def well_formed(items: Iterable, kind: str) -> WellFormednessReport:
    """Check each need or requirement.

    Items carry ``id`` and either a parsed ``formula`` or source ``text``; the
    text, when present, is re-parsed so syntax errors surface as report entries.
    """
    out = []
    for it in items:
        text = getattr(it, "text", "") or ""
        formula = getattr(it, "formula", None)
        message = ""
        wff = True
        if text:
            try:
                formula = parse_formula(text)
            except ParseError as exc:
                wff, formula, message = False, None, str(exc)
        if formula is None:
            out.append(ItemCheck(it.id, False, False, False, message or "no formula"))
            continue
        atomic = isinstance(formula, Atom)
        consistent = is_satisfiable([formula]).satisfiable
        if not atomic:
            message = "formula is not a single proposition"
        elif not consistent:
            message = "formula is unsatisfiable"
        out.append(ItemCheck(it.id, atomic, wff, consistent, message))
    return WellFormednessReport(kind, tuple(out))
