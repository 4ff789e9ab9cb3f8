"""Surface syntax: recursive-descent parser and minimal-parenthesis printer.

Grammar, loosest to tightest::

    formula := iff
    iff     := imp ("<->" imp)*
    imp     := or ("->" imp)?
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "!" unary | "[" ident "]" unary
             | "K" "(" formula ")" | "B" "(" formula ")"
             | "(" formula ")" | ident
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .formula import (
    KEYWORDS,
    RESERVED_PREFIX,
    And,
    Atom,
    Believe,
    Dyn,
    Formula,
    Iff,
    Implies,
    Know,
    Not,
    Or,
)


class ParseError(ValueError):
    """Syntax error carrying the offending byte offset and expected tokens."""

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = expected
        detail = f" (expected one of: {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class ReservedNameError(ParseError):
    pass


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    offset: int


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<iff><->)|(?P<imp>->)|(?P<op>[!&|()\[\]])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
)

_START = frozenset({"!", "[", "(", "K", "B", "<ident>"})


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if kind == "op" or kind in ("iff", "imp"):
                kind = tok
            elif tok in KEYWORDS:
                kind = tok
            out.append(_Tok(kind, tok, _byte_offset(text, pos)))
        pos = m.end()
    out.append(_Tok("<eof>", "", len(text.encode("utf-8"))))
    return out


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, expected: frozenset[str] | None = None) -> _Tok:
        tok = self.cur
        if tok.kind != kind:
            raise ParseError(
                f"unexpected {_describe(tok)}", tok.offset, expected or frozenset({kind})
            )
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.iff()
        if self.cur.kind != "<eof>":
            raise ParseError(
                f"unexpected {_describe(self.cur)}",
                self.cur.offset,
                frozenset({"&", "|", "->", "<->", "<eof>"}),
            )
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.cur.kind == "<->":
            self.i += 1
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.cur.kind == "->":
            self.i += 1
            return Implies(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.cur.kind == "|":
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.cur.kind == "&":
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.cur
        if tok.kind == "!":
            self.i += 1
            return Not(self.unary())
        if tok.kind == "[":
            self.i += 1
            ev = self.take("ident", frozenset({"<ident>"}))
            _check_name(ev)
            self.take("]")
            return Dyn(ev.text, self.unary())
        if tok.kind in ("K", "B"):
            self.i += 1
            self.take("(")
            body = self.iff()
            self.take(")", frozenset({")", "&", "|", "->", "<->"}))
            return Know(body) if tok.kind == "K" else Believe(body)
        if tok.kind == "(":
            self.i += 1
            body = self.iff()
            self.take(")", frozenset({")", "&", "|", "->", "<->"}))
            return body
        if tok.kind == "ident":
            self.i += 1
            _check_name(tok)
            return Atom(tok.text)
        raise ParseError(f"unexpected {_describe(tok)}", tok.offset, _START)


def _check_name(tok: _Tok) -> None:
    if tok.text.startswith(RESERVED_PREFIX):
        raise ReservedNameError(
            f"identifier {tok.text!r} uses the reserved prefix {RESERVED_PREFIX!r}", tok.offset
        )


def _describe(tok: _Tok) -> str:
    return "end of input" if tok.kind == "<eof>" else f"token {tok.text!r}"


def parse_formula(text: str) -> Formula:
    if not isinstance(text, str):
        raise TypeError("formula text must be a string")
    return _Parser(text).parse()


# precedence levels used by the printer
_IFF, _IMP, _OR, _AND, _UNARY = 1, 2, 3, 4, 5


def _prec(f: Formula) -> int:
    if isinstance(f, Iff):
        return _IFF
    if isinstance(f, Implies):
        return _IMP
    if isinstance(f, Or):
        return _OR
    if isinstance(f, And):
        return _AND
    return _UNARY


def render_formula(f: Formula) -> str:
    """Canonical text with the fewest parentheses that re-parse to ``f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "!" + _wrap(f.child, _UNARY)
    if isinstance(f, Know):
        return f"K({render_formula(f.child)})"
    if isinstance(f, Believe):
        return f"B({render_formula(f.child)})"
    if isinstance(f, Dyn):
        return f"[{f.event}]" + _wrap(f.child, _UNARY)
    op = {And: "&", Or: "|", Implies: "->", Iff: "<->"}[type(f)]
    p = _prec(f)
    if isinstance(f, Implies):
        # right-associative
        left = _wrap(f.left, p + 1)
        right = _wrap(f.right, p)
    else:
        left = _wrap(f.left, p)
        right = _wrap(f.right, p + 1)
    return f"{left} {op} {right}"


def _wrap(f: Formula, min_prec: int) -> str:
    s = render_formula(f)
    return s if _prec(f) >= min_prec else f"({s})"
