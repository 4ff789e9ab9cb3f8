"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from epivv.kripke import EpistemicModel
from epivv.logic import (
    And,
    Atom,
    Believe,
    Dyn,
    Iff,
    Implies,
    Know,
    Not,
    Or,
)
from epivv.logic.formula import RESERVED_PREFIX

EVENTS = ("v", "u")


# -- formulas ---------------------------------------------------------------


def formula_strategy(atoms=("p", "q", "r"), depth=3, sugar=True, dynamic=True):
    leaves = st.sampled_from([Atom(a) for a in atoms])

    def extend(children):
        options = [
            children.map(Not),
            st.builds(And, children, children),
            children.map(Know),
            children.map(Believe),
        ]
        if sugar:
            options += [
                st.builds(Or, children, children),
                st.builds(Implies, children, children),
                st.builds(Iff, children, children),
            ]
        if dynamic:
            options.append(st.builds(Dyn, st.sampled_from(EVENTS), children))
        return st.one_of(options)

    return st.recursive(leaves, extend, max_leaves=2 ** depth)


def random_formula(rng: random.Random, atoms, depth: int, size: int = 6):
    """Core formula of modal depth at most ``depth`` with about ``size`` connectives."""
    if depth == 0 and size > 0 and rng.random() < 0.5:
        size = 0
    if size <= 0:
        base = Atom(rng.choice(atoms))
        return Not(base) if rng.random() < 0.3 else base
    r = rng.random()
    if depth > 0 and r < 0.5:
        op = Know if rng.random() < 0.5 else Believe
        body = op(random_formula(rng, atoms, depth - 1, size - 1))
        return Not(body) if rng.random() < 0.4 else body
    if r < 0.85:
        left = rng.randint(0, size - 1)
        return And(random_formula(rng, atoms, depth, left),
                   random_formula(rng, atoms, depth, size - 1 - left))
    return Not(random_formula(rng, atoms, depth, size - 1))


def naive_eval(m: EpistemicModel, w: str, f) -> bool:
    """Direct recursive semantics including the sugar connectives."""
    if isinstance(f, Atom):
        return f.name in m.valuation[w]
    if isinstance(f, Not):
        return not naive_eval(m, w, f.child)
    if isinstance(f, And):
        return naive_eval(m, w, f.left) and naive_eval(m, w, f.right)
    if isinstance(f, Or):
        return naive_eval(m, w, f.left) or naive_eval(m, w, f.right)
    if isinstance(f, Implies):
        return (not naive_eval(m, w, f.left)) or naive_eval(m, w, f.right)
    if isinstance(f, Iff):
        return naive_eval(m, w, f.left) == naive_eval(m, w, f.right)
    if isinstance(f, Know):
        return all(naive_eval(m, b, f.child) for a, b in m.rel_K if a == w)
    if isinstance(f, Believe):
        return all(naive_eval(m, b, f.child) for a, b in m.rel_B if a == w)
    if isinstance(f, Dyn):
        occurred = RESERVED_PREFIX + f.event in m.valuation[w]
        return (not occurred) or naive_eval(m, w, f.child)
    raise TypeError(type(f))


# -- models -----------------------------------------------------------------


def _random_partition(rng, items):
    blocks: list[list] = []
    for x in items:
        k = rng.randrange(len(blocks) + 1)
        if k == len(blocks):
            blocks.append([x])
        else:
            blocks[k].append(x)
    return blocks


def random_model(rng: random.Random, atoms, n: int) -> EpistemicModel:
    """A legal model: knowledge is a partition, belief a KD45 cluster frame."""
    worlds = [f"w{i + 1}" for i in range(n)]
    rel_k = set()
    for block in _random_partition(rng, worlds):
        rel_k.update(itertools.product(block, block))
    members = [w for w in worlds if rng.random() < 0.6] or [rng.choice(worlds)]
    clusters = _random_partition(rng, members)
    home = {}
    for c in clusters:
        for w in c:
            home[w] = c
    rel_b = set()
    for w in worlds:
        target = home.get(w) or rng.choice(clusters)
        rel_b.update((w, v) for v in target)
    val = {w: {a for a in atoms if rng.random() < 0.5} for w in worlds}
    extra = {RESERVED_PREFIX + e for e in EVENTS}
    for w in worlds:
        val[w] |= {a for a in extra if rng.random() < 0.5}
    return EpistemicModel(tuple(worlds), frozenset(rel_k), frozenset(rel_b), val,
                          rng.choice(worlds))


def _is_equivalence(worlds, rel):
    return (all((w, w) in rel for w in worlds)
            and all((b, a) in rel for a, b in rel)
            and all((a, d) in rel for a, b in rel for c, d in rel if b == c))


def _is_kd45(worlds, rel):
    serial = all(any(a == w for a, _ in rel) for w in worlds)
    transitive = all((a, d) in rel for a, b in rel for c, d in rel if b == c)
    euclidean = all((b, c) in rel for a, b in rel for x, c in rel if a == x)
    return serial and transitive and euclidean


def naive_model_count(atoms, max_worlds: int) -> int:
    """Generate every relation pair over W x W and keep the legal frames.

    Valuation sequences are taken as non-decreasing index tuples over the
    sorted valuations, matching the canonical form of the enumerator.
    """
    names = sorted(atoms)
    n_vals = 2 ** len(names)
    total = 0
    for n in range(1, max_worlds + 1):
        worlds = [f"w{i}" for i in range(n)]
        pairs = list(itertools.product(worlds, worlds))
        subsets = [frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
                   for mask in range(2 ** len(pairs))]
        n_k = sum(1 for r in subsets if _is_equivalence(worlds, r))
        n_b = sum(1 for r in subsets if _is_kd45(worlds, r))
        n_seq = sum(1 for _ in itertools.combinations_with_replacement(range(n_vals), n))
        total += n_seq * n_k * n_b * n
    return total


# -- project documents ------------------------------------------------------


def statement(i, formula=None):
    return {"id": i, "statement": f"statement for {i}", "formula": formula or i}


def state(i, criterion, value="pass", relation="equivalence", confidence=(1.0, 0.0)):
    return {"id": i, "criterion": criterion, "value": value, "relation": relation,
            "confidence": list(confidence)}


def activity(i, states, observed=(), event=None):
    return {"id": i, "event": event or f"ev_{i}",
            "evidence": {"base": f"e_{i}", "states": states},
            "observed": list(observed)}


def project(goals=("g1",), needs=("n1",), requirements=("r1",), vcriteria=None,
            vactivities=None, ucriteria=None, uactivities=None, axioms=None,
            outcomes=None, threshold=None):
    """Small project document, bridged level by level unless ``axioms`` is given."""
    goals = list(goals)
    needs = list(needs)
    requirements = list(requirements)
    if vcriteria is None:
        vcriteria = [{"id": f"phi_{r}", "formula": f"phi_{r}", "targets": [r]} for r in requirements]
    if ucriteria is None:
        ucriteria = [{"id": f"psi_{n}", "formula": f"psi_{n}", "targets": [n]} for n in needs]
    if vactivities is None:
        vactivities = [activity(f"v_{c['id']}", [state(f"e_{c['id']}", c["id"])], [f"e_{c['id']}"])
                       for c in vcriteria]
    if uactivities is None:
        uactivities = [activity(f"u_{c['id']}", [state(f"e_{c['id']}", c["id"])], [f"e_{c['id']}"])
                       for c in ucriteria]
    if axioms is None:
        axioms = []
        if goals and needs:
            axioms.append(f"{' & '.join(f'B({n})' for n in needs)} <-> "
                          f"{' & '.join(f'B({g})' for g in goals)}")
        if needs and requirements:
            axioms.append(f"{' & '.join(f'B({r})' for r in requirements)} <-> "
                          f"{' & '.join(f'B({n})' for n in needs)}")
        for c in list(vcriteria) + list(ucriteria):
            axioms.append(f"B({c['formula']}) <-> {' & '.join(f'B({t})' for t in c['targets'])}")
    if outcomes is None:
        outcomes = [{"id": f"o_{g}", "statement": "outcome", "formula": g, "satisfies": [g]}
                    for g in goals]
    doc = {
        "stakeholders": [{"id": "s1", "name": "stakeholder", "goals": goals}] if goals else [],
        "goals": [statement(g) for g in goals],
        "needs": [statement(n) for n in needs],
        "requirements": [statement(r) for r in requirements],
        "verification_criteria": vcriteria,
        "verification_activities": vactivities,
        "validation_criteria": ucriteria,
        "validation_activities": uactivities,
        "outcomes": outcomes,
        "derivation": {"id": "path", "axioms": axioms},
        "system": {"id": "sys", "external": [], "interactions": []},
    }
    if threshold is not None:
        doc["threshold"] = threshold
    return doc
