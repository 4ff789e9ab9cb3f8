"""Model construction for the fusion of S5 knowledge and KD45 belief.

Each search node is one world.  Its atoms and modal subformulas are treated as
propositional variables and assigned by a depth-first search with three-valued
pruning.  Every accepted assignment is then given witnesses:

* knowledge: one world in the same equivalence class per false ``K(psi)``,
  satisfying ``!psi`` and the bodies of all true ``K`` formulas;
* belief: one cluster member per false ``B(psi)`` (at least one overall),
  satisfying ``!psi`` and the bodies of all true ``B`` formulas.

Members of the knowledge class share the owner's ``K`` values and build their
own belief cluster; members of a belief cluster share the owner's ``B`` values
and build their own knowledge class.  Failed witnesses are turned into
learned clauses so the same dead end is not revisited.  Sub-results are
memoised by (requirements, fixed values, role).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ..logic import And, Atom, Believe, Formula, Know, Not

_SELF = "self"


def eval3(f: Formula, assign: dict) -> bool | None:
    """Kleene evaluation over a partial assignment of atoms and modal formulas."""
    if isinstance(f, (Atom, Know, Believe)):
        return assign.get(f)
    if isinstance(f, Not):
        v = eval3(f.child, assign)
        return None if v is None else not v
    if isinstance(f, And):
        a = eval3(f.left, assign)
        if a is False:
            return False
        b = eval3(f.right, assign)
        if b is False:
            return False
        return True if a and b else None
    raise TypeError(f"not a core formula: {f!r}")


def top_vars(f: Formula, out: dict) -> None:
    """Collect the atoms and modal formulas visible at the current world."""
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (Atom, Know, Believe)):
            out.setdefault(g, None)
        elif isinstance(g, Not):
            stack.append(g.child)
        else:
            stack.append(g.right)
            stack.append(g.left)


def local_closure(fs: Iterable[Formula]) -> list[Formula]:
    """Top-level variables, closed under the bodies of ``K`` formulas (reflexivity)."""
    out: dict = {}
    for f in fs:
        top_vars(f, out)
    seen: set = set()
    changed = True
    while changed:
        changed = False
        for v in list(out):
            if isinstance(v, Know) and v not in seen:
                seen.add(v)
                top_vars(v.child, out)
                changed = True
    return list(out)


def belief_signature(closure: list[Formula]) -> list[Formula]:
    """``B`` formulas whose value is shared by the owner and all its cluster members."""
    out = {v: None for v in closure if isinstance(v, Believe)}
    seen: set = set()
    changed = True
    while changed:
        changed = False
        for v in list(out):
            if v in seen:
                continue
            seen.add(v)
            for u in local_closure([v.child]):
                if isinstance(u, Believe) and u not in out:
                    out[u] = None
                    changed = True
    return list(out)


@dataclass
class Node:
    assign: dict
    kclass: list | None = None  # None: the node joins its owner's class
    cluster: list | None = None  # None: the node belongs to its owner's cluster
    required: frozenset = field(default_factory=frozenset)


class Solver:
    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0
        self.memo: dict = {}

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            from .enumerate import BudgetExceeded

            raise BudgetExceeded(self.budget, "search steps")

    # role: "root" owns both, "K" joins a knowledge class, "B" joins a belief cluster
    def solve(self, required: frozenset, fixed: frozenset = frozenset(), role: str = "root"):
        key = (required, fixed, role)
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = None  # cycles cannot occur, but guard anyway
        result = self._solve(required, dict(fixed), role)
        self.memo[key] = result
        return result

    def _solve(self, required: frozenset, fixed: dict, role: str):
        self.tick()
        own_k = role != "K"
        own_b = role != "B"
        closure = local_closure(sorted(required, key=_order))
        variables = list(closure)
        if own_b:
            for v in belief_signature(closure):
                if v not in variables:
                    variables.append(v)
        inner: set = set()
        for v in variables:
            if isinstance(v, (Know, Believe)):
                inner.update(_all_subformulas(v.child))
        dont_care = {v for v in variables if v not in inner}
        constraints = list(sorted(required, key=_order))
        for v in closure:
            if isinstance(v, Know):
                constraints.append(Not(And(v, Not(v.child))))
        for v in fixed:
            if v not in variables:
                variables.append(v)
        nogoods: list = []
        for assign in self._assignments(variables, constraints, fixed, dont_care, nogoods):
            node = self._witnesses(required, assign, closure, variables, own_k, own_b, nogoods)
            if node is not None:
                return node
        return None

    def _assignments(self, variables, constraints, fixed, dont_care, nogoods):
        order = [v for v in variables if v not in fixed]
        assign = dict(fixed)
        # a constraint can only turn false when one of its own variables is assigned
        touching: dict = {}
        for c in constraints:
            mine: dict = {}
            top_vars(c, mine)
            for v in mine:
                touching.setdefault(v, []).append(c)
        tail_free = [all(v in dont_care for v in order[i:]) for i in range(len(order) + 1)]

        def status(i):
            if not tail_free[i]:
                for c in (touching.get(order[i - 1], ()) if i else constraints):
                    if eval3(c, assign) is False:
                        return False
                all_true = False
            else:
                all_true = True
                for c in constraints:
                    r = eval3(c, assign)
                    if r is False:
                        return False
                    if r is None:
                        all_true = False
            for ng in nogoods:
                if all(assign.get(v) is val for v, val in ng):
                    return False
            return True if all_true else None

        def go(i):
            self.tick()
            s = status(i)
            if s is False:
                return
            if s is True:
                yield dict(assign)
                return
            if i == len(order):
                return
            v = order[i]
            values = (False, True) if isinstance(v, Atom) else (True, False)
            for val in values:
                assign[v] = val
                yield from go(i + 1)
            del assign[v]

        yield from go(0)

    def _child(self, req: frozenset, assign: dict, kind: type):
        clo = local_closure(sorted(req, key=_order))
        fixed = frozenset((v, assign[v]) for v in clo if isinstance(v, kind))
        role = "K" if kind is Know else "B"
        return self.solve(req, fixed, role), fixed

    def _learn(self, trues, target, assign, kind, nogoods):
        """Shrink a failed witness request to a small core and record it as a clause."""
        core = list(trues)
        i = 0
        while i < len(core):
            trial = core[:i] + core[i + 1:]
            req = frozenset(b for _, b in trial) | ({target[1]} if target else frozenset())
            if self._child(req, assign, kind)[0] is None:
                core = trial
            else:
                i += 1
        req = frozenset(b for _, b in core) | ({target[1]} if target else frozenset())
        _, fixed = self._child(req, assign, kind)
        lits = {v: True for v, _ in core}
        if target:
            lits[target[0]] = False
        for v, val in fixed:
            lits.setdefault(v, val)
        nogoods.append(tuple(lits.items()))

    def _witnesses(self, required, assign, closure, variables, own_k, own_b, nogoods):
        node = Node(assign, required=required)
        if own_k:
            kvars = [v for v in closure if isinstance(v, Know) and v in assign]
            trues = [(v, v.child) for v in kvars if assign[v]]
            node.kclass = []
            for v in kvars:
                if assign[v]:
                    continue
                target = Not(v.child)
                if eval3(target, assign) is True:
                    continue
                if any(eval3(target, c.assign) is True for c in node.kclass):
                    continue
                req = frozenset(b for _, b in trues) | {target}
                child, _ = self._child(req, assign, Know)
                if child is None:
                    self._learn(trues, (v, target), assign, Know, nogoods)
                    return None
                node.kclass.append(child)
        if own_b:
            bvars = [v for v in variables if isinstance(v, Believe) and v in assign]
            trues = [(v, v.child) for v in bvars if assign[v]]
            bodies = [b for _, b in trues]
            self_ok = all(eval3(b, assign) is True for b in bodies)
            node.cluster = []
            falses = [v for v in bvars if not assign[v]]
            for v in falses:
                target = Not(v.child)
                if self_ok and eval3(target, assign) is True:
                    if _SELF not in node.cluster:
                        node.cluster.insert(0, _SELF)
                    continue
                if any(m is not _SELF and eval3(target, m.assign) is True for m in node.cluster):
                    continue
                req = frozenset(bodies) | {target}
                member, _ = self._child(req, assign, Believe)
                if member is None:
                    self._learn(trues, (v, target), assign, Believe, nogoods)
                    return None
                node.cluster.append(member)
            if not node.cluster:
                if self_ok:
                    node.cluster.append(_SELF)
                else:
                    member, _ = self._child(frozenset(bodies), assign, Believe)
                    if member is None:
                        self._learn(trues, None, assign, Believe, nogoods)
                        return None
                    node.cluster.append(member)
        return node


def _all_subformulas(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, (Not, Know, Believe)):
            stack.append(g.child)
        elif isinstance(g, And):
            stack.append(g.left)
            stack.append(g.right)


def _order(f: Formula):
    from ..logic import render_formula

    return (len(render_formula(f)), render_formula(f))


def build_tree(root: Node) -> tuple[list[str], set, set, dict]:
    """Unfold a solved node into worlds, relations and a valuation."""
    worlds: list[str] = []
    rel_k: set = set()
    rel_b: set = set()
    val: dict = {}

    def new_world(node: Node) -> str:
        w = f"w{len(worlds) + 1}"
        worlds.append(w)
        val[w] = frozenset(v.name for v, t in node.assign.items() if t and isinstance(v, Atom))
        return w

    def place(node: Node, w: str) -> None:
        if node.kclass is not None:
            members = [w]
            for c in node.kclass:
                cw = new_world(c)
                members.append(cw)
            for a in members:
                for b in members:
                    rel_k.add((a, b))
            for c, cw in zip(node.kclass, members[1:]):
                place(c, cw)
        if node.cluster is not None:
            members = []
            placed = []
            for m in node.cluster:
                if m is _SELF:
                    members.append(w)
                else:
                    mw = new_world(m)
                    members.append(mw)
                    placed.append((m, mw))
            for b in members:
                rel_b.add((w, b))
                for a in members:
                    rel_b.add((a, b))
            for m, mw in placed:
                place(m, mw)

    w0 = new_world(root)
    place(root, w0)
    return worlds, rel_k, rel_b, val
