"""Logical encoding of evidence, value claims and activity knowledge."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping

from ..logic import And, Atom, Believe, Dyn, Formula, Know, Not, event_atom
from .model import Activity, ArtifactGraph, Criterion, EvidenceState


def value_atom(criterion: str, label: str) -> Atom:
    return Atom(f"val__{criterion}__{label}")


def _imp(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def _iff(a: Formula, b: Formula) -> Formula:
    return And(_imp(a, b), _imp(b, a))


def claim_beliefs(state: EvidenceState, positive: bool) -> list[Formula]:
    """Beliefs induced by knowing the state (``positive``) or its negation."""
    claim = value_atom(state.criterion, state.value)
    if positive:
        if state.relation == "contradiction":
            return [Believe(Not(claim))]
        return [Believe(claim)]
    if state.relation == "contradiction":
        return []
    return [Believe(Not(claim))]


def state_axioms(state: EvidenceState) -> list[Formula]:
    """Bridge axioms from knowledge of an evidence state to belief in its value claim."""
    s = Atom(state.id)
    claim = value_atom(state.criterion, state.value)
    if state.relation == "contradiction":
        return [_imp(Know(s), Believe(Not(claim)))]
    out = [_imp(Know(s), Believe(claim)), _imp(Know(Not(s)), Believe(Not(claim)))]
    if state.relation == "equivalence":
        out.append(_imp(Believe(claim), Know(s)))
    return out


def criterion_axioms(c: Criterion, labels: Iterable[str]) -> list[Formula]:
    """Link the pass claim to the criterion and keep distinct value claims exclusive."""
    labels = sorted(set(labels) | {c.pass_value})
    out: list[Formula] = [_iff(Believe(value_atom(c.id, c.pass_value)), Believe(c.formula))]
    for a, b in combinations(labels, 2):
        out.append(Believe(Not(And(value_atom(c.id, a), value_atom(c.id, b)))))
    return out


def evidence_axioms(activities: Iterable[Activity], graph: ArtifactGraph | None = None,
                    criteria: Iterable[Criterion] = ()) -> list[Formula]:
    """All evidence-relation axioms for ``activities``, deduplicated, in stable order."""
    out: dict = {}
    labels: dict[str, set] = {}
    for a in activities:
        for s in a.evidence.states:
            for f in state_axioms(s):
                out.setdefault(f, None)
            labels.setdefault(s.criterion, set()).add(s.value)
    crit = {c.id: c for c in criteria}
    for cid in sorted(labels):
        c = crit.get(cid)
        if c is None and graph is not None:
            c = graph.criterion(cid)
        if c is None:
            continue
        for f in criterion_axioms(c, labels[cid]):
            out.setdefault(f, None)
    return list(out)


def supporting_states(a: Activity, pass_labels: Mapping[str, str]) -> list[EvidenceState]:
    """States whose knowledge supports a pass claim for their criterion."""
    return [s for s in a.evidence.states
            if s.relation != "contradiction" and s.value == pass_labels.get(s.criterion, "pass")]


def activity_knowledge(a: Activity, pass_labels: Mapping[str, str]) -> list[Formula]:
    """``[event]K(state)`` for each supporting state of the activity."""
    ids = dict.fromkeys(s.id for s in supporting_states(a, pass_labels))
    return [Dyn(a.event, Know(Atom(sid))) for sid in ids]


def activity_occurrence(a: Activity) -> Atom:
    return event_atom(a.event)
