"""Satisfiability, consistency and entailment."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..kripke import EpistemicModel, check_frames
from ..logic import Believe, Formula, Know, Not, atoms_of, desugar, subformulas
from .enumerate import DEFAULT_BUDGET, enumerate_models
from .tableau import Solver, build_tree

SATISFIABLE = "satisfiable"
UNSAT_WITHIN_BOUND = "unsatisfiable-within-bound"
UNSAT_PROVED = "unsatisfiable-proved"


class EngineError(RuntimeError):
    """Internal consistency failure: a constructed witness did not check out."""


@dataclass(frozen=True)
class SatResult:
    status: str
    witness: EpistemicModel | None
    bound_used: int

    @property
    def satisfiable(self) -> bool:
        return self.status == SATISFIABLE

    @property
    def proved(self) -> bool:
        return self.status != UNSAT_WITHIN_BOUND


@dataclass(frozen=True)
class ConsistencyVerdict:
    consistent: bool
    status: str
    witness: EpistemicModel | None
    bound_used: int


@dataclass(frozen=True)
class EntailmentVerdict:
    holds: bool
    vacuous: bool
    countermodel: EpistemicModel | None
    proved: bool = True


def _core(fs: Iterable[Formula]) -> list[Formula]:
    out: dict = {}
    for f in fs:
        out.setdefault(desugar(f), None)
    return list(out)


def completeness_bound(fs: Iterable[Formula]) -> int:
    """1 + the number of distinct K/B subformulas after desugaring."""
    modal = set()
    for f in _core(fs):
        modal.update(g for g in subformulas(f) if isinstance(g, (Know, Believe)))
    return 1 + len(modal)


def contract(m: EpistemicModel, atoms: Iterable[str]) -> EpistemicModel:
    """Quotient by the coarsest bisimulation over ``atoms``.

    Bisimilar worlds satisfy the same formulas, and quotients of S5/KD45
    frames keep their frame class, so the result is a smaller equivalent model.
    """
    names = frozenset(atoms)
    ws = m.worlds
    succ_k = {w: [b for a, b in m.rel_K if a == w] for w in ws}
    succ_b = {w: [b for a, b in m.rel_B if a == w] for w in ws}
    block = {w: tuple(sorted(m.valuation[w] & names)) for w in ws}
    while True:
        sig = {
            w: (block[w], frozenset(block[v] for v in succ_k[w]),
                frozenset(block[v] for v in succ_b[w]))
            for w in ws
        }
        ids: dict = {}
        new = {w: ids.setdefault(sig[w], len(ids)) for w in ws}
        if len(ids) == len(set(block.values())):
            block = new
            break
        block = new
    rep: dict = {}
    for w in ws:
        rep.setdefault(block[w], w)
    keep = [w for w in ws if rep[block[w]] == w]
    rename = {w: f"w{i + 1}" for i, w in enumerate(keep)}
    to = {w: rename[rep[block[w]]] for w in ws}
    rk = frozenset((to[a], to[b]) for a, b in m.rel_K)
    rb = frozenset((to[a], to[b]) for a, b in m.rel_B)
    val = {rename[w]: m.valuation[w] & names for w in keep}
    return EpistemicModel(tuple(rename[w] for w in keep), rk, rb, val,
                          to[m.designated] if m.designated else None)


def _holds_all(m: EpistemicModel, core: list[Formula]) -> bool:
    i = m.worlds.index(m.designated)
    return all(m.extension(f) >> i & 1 for f in core)


def is_satisfiable(
    fs: Iterable[Formula], max_worlds: int | None = None, budget: int = DEFAULT_BUDGET
) -> SatResult:
    """Decide whether ``fs`` has a pointed model with at most ``max_worlds`` worlds.

    ``max_worlds`` defaults to the completeness bound.  Unsatisfiability is
    reported as proved only when the bound reaches the completeness bound.
    """
    core = _core(fs)
    cb = completeness_bound(core)
    bound = cb if max_worlds is None else max_worlds
    if bound < 1:
        raise ValueError("max_worlds must be at least 1")
    atoms = sorted(set().union(*(atoms_of(f) for f in core)) if core else set())
    solver = Solver(budget)
    root = solver.solve(frozenset(core))
    if root is None:
        status = UNSAT_PROVED if bound >= cb else UNSAT_WITHIN_BOUND
        return SatResult(status, None, bound)
    worlds, rk, rb, val = build_tree(root)
    model = contract(EpistemicModel(tuple(worlds), rk, rb, val, worlds[0]), atoms)
    frames = check_frames(model)
    if not (frames.knowledge_ok and frames.belief_ok and _holds_all(model, core)):
        raise EngineError("constructed witness failed re-verification")
    if len(model.worlds) <= bound:
        return SatResult(SATISFIABLE, model, bound)
    # the construction overshot the bound: fall back to exhaustive search
    for cand in enumerate_models(atoms, bound, budget):
        if _holds_all(cand, core):
            return SatResult(SATISFIABLE, cand, bound)
    return SatResult(UNSAT_WITHIN_BOUND, None, bound)


def is_consistent(
    fs: Iterable[Formula], max_worlds: int | None = None, budget: int = DEFAULT_BUDGET
) -> ConsistencyVerdict:
    r = is_satisfiable(fs, max_worlds, budget)
    return ConsistencyVerdict(r.satisfiable, r.status, r.witness, r.bound_used)


def entails(
    premises: Iterable[Formula],
    conclusion: Formula,
    background: Iterable[Formula] = (),
    max_worlds: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> EntailmentVerdict:
    """``premises`` plus ``background`` entail ``conclusion``.

    ``vacuous`` is set when premises and background are jointly unsatisfiable,
    in which case the entailment holds by explosion.
    """
    base = list(premises) + list(background)
    assumption = is_satisfiable(base, max_worlds, budget)
    if not assumption.satisfiable:
        return EntailmentVerdict(True, True, None, assumption.proved)
    r = is_satisfiable(base + [Not(conclusion)], max_worlds, budget)
    if r.satisfiable:
        return EntailmentVerdict(False, False, r.witness, True)
    return EntailmentVerdict(True, False, None, r.proved)
