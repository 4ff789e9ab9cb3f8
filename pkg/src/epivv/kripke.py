"""Finite epistemic structures, frame checks and the satisfaction relation.

A model carries two independent accessibility relations: ``rel_K`` for
knowledge (expected to be an equivalence) and ``rel_B`` for belief (expected
to be serial, Euclidean and transitive).  Frame conditions are checked by
:func:`check_frames` rather than enforced at construction, so broken frames
can still be built and inspected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .logic import And, Atom, Believe, Formula, Know, Not, render_formula


class ModelError(ValueError):
    pass


class FrameViolationError(ModelError):
    def __init__(self, report: "FrameReport"):
        self.report = report
        names = ", ".join(sorted({v.prop for v in report.violations}))
        super().__init__(f"frame conditions violated: {names}")


@dataclass(frozen=True)
class EpistemicModel:
    worlds: tuple[str, ...]
    rel_K: frozenset[tuple[str, str]]
    rel_B: frozenset[tuple[str, str]]
    valuation: Mapping[str, frozenset[str]]
    designated: str | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        worlds = tuple(self.worlds)
        if not worlds:
            raise ModelError("a model needs at least one world")
        if len(set(worlds)) != len(worlds):
            raise ModelError("duplicate world ids")
        ws = set(worlds)
        for name in ("rel_K", "rel_B"):
            rel = frozenset(tuple(p) for p in getattr(self, name))
            for a, b in rel:
                if a not in ws or b not in ws:
                    raise ModelError(f"{name} pair ({a}, {b}) mentions an unknown world")
            object.__setattr__(self, name, rel)
        val = {}
        for w, atoms in dict(self.valuation).items():
            if w not in ws:
                raise ModelError(f"valuation mentions unknown world {w!r}")
            val[w] = frozenset(atoms)
        for w in worlds:
            val.setdefault(w, frozenset())
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "valuation", val)
        if self.designated is not None and self.designated not in ws:
            raise ModelError(f"designated world {self.designated!r} is not a world")

    def __hash__(self):
        return hash((self.worlds, self.rel_K, self.rel_B, self.designated,
                     tuple(sorted((w, tuple(sorted(a))) for w, a in self.valuation.items()))))

    # -- indexed views used by the evaluator -------------------------------

    @property
    def _index(self) -> dict[str, int]:
        idx = self._cache.get("index")
        if idx is None:
            idx = {w: i for i, w in enumerate(self.worlds)}
            self._cache["index"] = idx
        return idx

    def _succ_masks(self, which: str) -> list[int]:
        key = "succ_" + which
        masks = self._cache.get(key)
        if masks is None:
            idx = self._index
            masks = [0] * len(self.worlds)
            for a, b in getattr(self, which):
                masks[idx[a]] |= 1 << idx[b]
            self._cache[key] = masks
        return masks

    @property
    def full_mask(self) -> int:
        return (1 << len(self.worlds)) - 1

    def box(self, which: str, mask: int) -> int:
        """Worlds all of whose ``which``-successors lie inside ``mask``."""
        out = 0
        for i, s in enumerate(self._succ_masks(which)):
            if s & ~mask == 0:
                out |= 1 << i
        return out

    def extension(self, f: Formula) -> int:
        """Bitmask (bit i = world i) of worlds where the core formula holds."""
        memo = self._cache.setdefault("ext", {})
        got = memo.get(f)
        if got is not None:
            return got
        if isinstance(f, Atom):
            out = 0
            for i, w in enumerate(self.worlds):
                if f.name in self.valuation[w]:
                    out |= 1 << i
        elif isinstance(f, Not):
            out = self.full_mask & ~self.extension(f.child)
        elif isinstance(f, And):
            out = self.extension(f.left) & self.extension(f.right)
        elif isinstance(f, Know):
            out = self.box("rel_K", self.extension(f.child))
        elif isinstance(f, Believe):
            out = self.box("rel_B", self.extension(f.child))
        else:
            raise ModelError(
                f"satisfies expects a core formula; desugar {type(f).__name__} first"
            )
        memo[f] = out
        return out

    def atoms(self) -> frozenset[str]:
        return frozenset().union(*self.valuation.values())


def satisfies(m: EpistemicModel, w: str, f: Formula) -> bool:
    idx = m._index.get(w)
    if idx is None:
        raise ModelError(f"unknown world {w!r}")
    return bool(m.extension(f) >> idx & 1)


def model_from_literal(doc: Mapping) -> EpistemicModel:
    """Build a model from the document form (worlds, rel_K, rel_B, valuation, designated)."""
    try:
        worlds = [str(w) for w in doc["worlds"]]
        rel_k = [tuple(map(str, p)) for p in doc.get("rel_K", [])]
        rel_b = [tuple(map(str, p)) for p in doc.get("rel_B", [])]
        val = {str(w): list(a) for w, a in dict(doc.get("valuation", {})).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelError(f"malformed model literal: {exc}") from exc
    for p in rel_k + rel_b:
        if len(p) != 2:
            raise ModelError(f"relation entries must be pairs, got {list(p)}")
    return EpistemicModel(tuple(worlds), frozenset(rel_k), frozenset(rel_b), val,
                          doc.get("designated"))


def model_to_literal(m: EpistemicModel) -> dict:
    out = {
        "worlds": list(m.worlds),
        "rel_K": sorted([list(p) for p in m.rel_K], key=lambda p: (m._index[p[0]], m._index[p[1]])),
        "rel_B": sorted([list(p) for p in m.rel_B], key=lambda p: (m._index[p[0]], m._index[p[1]])),
        "valuation": {w: sorted(m.valuation[w]) for w in m.worlds},
    }
    if m.designated is not None:
        out["designated"] = m.designated
    return out


# -- frame conditions ------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    relation: str
    prop: str
    witness: tuple[str, ...]


@dataclass(frozen=True)
class FrameReport:
    knowledge_ok: bool
    belief_ok: bool
    violations: tuple[Violation, ...]


def _reflexive(ws, rel, name):
    return [Violation(name, "reflexive", (w,)) for w in ws if (w, w) not in rel]


def _serial(ws, rel, name):
    has = {a for a, _ in rel}
    return [Violation(name, "serial", (w,)) for w in ws if w not in has]


def _symmetric(ws, rel, name):
    return [Violation(name, "symmetric", (a, b)) for a in ws for b in ws
            if (a, b) in rel and (b, a) not in rel]


def _transitive(ws, rel, name):
    out = []
    for a in ws:
        for b in ws:
            if (a, b) not in rel:
                continue
            for c in ws:
                if (b, c) in rel and (a, c) not in rel:
                    out.append(Violation(name, "transitive", (a, b, c)))
    return out


def _euclidean(ws, rel, name):
    out = []
    for a in ws:
        for b in ws:
            if (a, b) not in rel:
                continue
            for c in ws:
                if (a, c) in rel and (b, c) not in rel:
                    out.append(Violation(name, "euclidean", (a, b, c)))
    return out


def check_frames(m: EpistemicModel) -> FrameReport:
    ws = m.worlds
    kv = (_reflexive(ws, m.rel_K, "rel_K") + _symmetric(ws, m.rel_K, "rel_K")
          + _transitive(ws, m.rel_K, "rel_K"))
    bv = (_serial(ws, m.rel_B, "rel_B") + _euclidean(ws, m.rel_B, "rel_B")
          + _transitive(ws, m.rel_B, "rel_B"))
    return FrameReport(not kv, not bv, tuple(kv + bv))


# -- axiom schemas ---------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    schema: str
    instance: str
    world: str


@dataclass(frozen=True)
class AxiomReport:
    holds: bool
    instances_checked: int
    counterexamples: tuple[Counterexample, ...]


def probe_formulas(atoms: Iterable[str], depth: int) -> list[Formula]:
    """Probe formulas over ``atoms`` with modal depth at most ``depth``.

    Depth 0 holds the literals and pairwise conjunctions of atoms; each further
    level applies K, B and their negations to the previous level's new members.
    """
    names = sorted(set(atoms))
    base: list[Formula] = []
    for a in names:
        base += [Atom(a), Not(Atom(a))]
    for a, b in combinations(names, 2):
        base.append(And(Atom(a), Atom(b)))
    out = list(base)
    frontier = base
    for _ in range(depth):
        nxt = []
        for f in frontier:
            nxt += [Know(f), Believe(f), Not(Know(f)), Not(Believe(f))]
        out += nxt
        frontier = nxt
    return out


def validate_axioms(m: EpistemicModel, probe_atoms: Iterable[str], depth: int) -> AxiomReport:
    """Check the knowledge and belief axiom schemas on ``m`` for every probe instance.

    Knowledge: K, T, 4, 5 and rule N.  Belief: K, D, 4, 5.  Instances are
    grouped by the extension of the substituted formulas, which determines the
    truth of every schema instance, so each distinct case is checked once.
    """
    frames = check_frames(m)
    if not (frames.knowledge_ok and frames.belief_ok):
        raise FrameViolationError(frames)
    probes = probe_formulas(probe_atoms, depth)
    # representative formula per distinct extension
    reps: dict[int, Formula] = {}
    for f in probes:
        reps.setdefault(m.extension(f), f)
    full = m.full_mask
    cexs: list[Counterexample] = []
    checked = 0

    def fail(schema, instance, bad_mask):
        for i, w in enumerate(m.worlds):
            if bad_mask >> i & 1:
                cexs.append(Counterexample(schema, render_formula(instance), w))
                return

    def imp(a, b):
        return full & (~a | b)

    for rel, op, tag in (("rel_K", Know, "K"), ("rel_B", Believe, "B")):
        box = lambda x, rel=rel: m.box(rel, x)
        for ea, fa in reps.items():
            checked += 1
            ba = box(ea)
            # 4: box a -> box box a
            got = imp(ba, box(ba))
            if got != full:
                fail(f"4[{tag}]", _imp(op(fa), op(op(fa))), full & ~got)
            # 5: !box a -> box !box a
            nba = full & ~ba
            got = imp(nba, box(nba))
            if got != full:
                fail(f"5[{tag}]", _imp(Not(op(fa)), op(Not(op(fa)))), full & ~got)
            if tag == "K":
                got = imp(ba, ea)
                if got != full:
                    fail("T[K]", _imp(op(fa), fa), full & ~got)
                if ea == full and ba != full:
                    fail("N[K]", op(fa), full & ~ba)
            else:
                got = imp(ba, full & ~box(full & ~ea))
                if got != full:
                    fail("D[B]", _imp(op(fa), Not(op(Not(fa)))), full & ~got)
            for eb, fb in reps.items():
                checked += 1
                lhs = ba & box(imp(ea, eb))
                got = imp(lhs, box(eb))
                if got != full:
                    inst = _imp(And(op(fa), op(_imp(fa, fb))), op(fb))
                    fail(f"K[{tag}]", inst, full & ~got)
        if tag == "B":
            checked += 1
            bottom = box(0)
            if bottom:
                a = next(iter(reps.values()))
                fail("D[B]", Not(op(And(a, Not(a)))), bottom)
    return AxiomReport(not cexs, checked, tuple(cexs))


def _imp(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


__all__ = [
    "AxiomReport",
    "Counterexample",
    "EpistemicModel",
    "FrameReport",
    "FrameViolationError",
    "ModelError",
    "Violation",
    "check_frames",
    "model_from_literal",
    "model_to_literal",
    "probe_formulas",
    "satisfies",
    "validate_axioms",
]
