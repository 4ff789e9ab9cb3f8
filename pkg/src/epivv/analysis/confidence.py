"""Confidence-pair validity and per-criterion confidence."""

from __future__ import annotations

from dataclasses import dataclass

from ..artifacts import ArtifactGraph, Criterion, EvidenceLedger
from ..logic import Atom, Know
from .verdicts import Issue

_EPS = 1e-9


@dataclass(frozen=True)
class StateCheck:
    activity: str
    state: str
    known: bool
    issues: tuple[Issue, ...]

    @property
    def ok(self) -> bool:
        return not self.issues


@dataclass(frozen=True)
class ConfidenceReport:
    states: tuple[StateCheck, ...]

    @property
    def valid(self) -> bool:
        return all(s.ok for s in self.states)

    @property
    def issues(self) -> tuple[Issue, ...]:
        return tuple(i for s in self.states for i in s.issues)


def _known_states(ledger: EvidenceLedger | None) -> set[str]:
    if ledger is None:
        return set()
    return {e.state for e in ledger.known if e.positive}


def check_confidence_validity(graph: ArtifactGraph, ledger: EvidenceLedger | None = None,
                              kind: str | None = None) -> ConfidenceReport:
    """Check every declared evidence state's confidence pair.

    Pairs of observed states must match the declared relation: ``(1, 0)``
    for equivalence, ``(0, 1)`` for contradiction and a strictly interior
    pair for implication.  Unobserved states only get the uniqueness and
    non-contradiction checks.
    """
    known = _known_states(ledger)
    out = []
    for a in graph.activities():
        if kind is not None and a.kind != kind:
            continue
        for sid in a.evidence.state_ids():
            entries = a.evidence.entries(sid)
            issues = []
            label = f"{a.id}/{sid}"
            pairs = {e.confidence for e in entries}
            if len(pairs) > 1:
                issues.append(Issue("uniqueness", "state declares more than one confidence pair", label))
            for e in entries:
                if abs(e.cx + e.cy - 1.0) > _EPS:
                    issues.append(Issue("uniqueness", "confidence pair violates x_i + y_i = 1", label))
            if _contradictory(entries):
                issues.append(Issue(
                    "non-contradictory",
                    "state supports both a value claim and its negation", label))
            is_known = sid in known
            if is_known:
                for e in entries:
                    issues.extend(_modal_conditions(e, label))
            out.append(StateCheck(a.id, sid, is_known, tuple(issues)))
    return ConfidenceReport(tuple(out))


def _contradictory(entries) -> bool:
    pos = {(e.criterion, e.value) for e in entries if e.relation != "contradiction"}
    neg = {(e.criterion, e.value) for e in entries if e.relation == "contradiction"}
    if pos & neg:
        return True
    # two different positive values for the same criterion are mutually exclusive
    by_crit: dict = {}
    for c, v in pos:
        by_crit.setdefault(c, set()).add(v)
    return any(len(v) > 1 for v in by_crit.values())


def _modal_conditions(e, label: str) -> list[Issue]:
    x = e.cx
    certain = abs(x - 1.0) <= _EPS
    impossible = abs(x) <= _EPS
    out = []
    if e.relation == "equivalence" and not certain:
        out.append(Issue("certainty", "known equivalent evidence must carry the pair (1, 0)", label))
    if e.relation == "contradiction" and not impossible:
        out.append(Issue("impossibility", "known contradicting evidence must carry the pair (0, 1)", label))
    if e.relation == "implication" and (certain or impossible):
        out.append(Issue("range", "known implication-only evidence must carry a pair strictly "
                                  "between (0, 1) and (1, 0)", label))
    return out


def criterion_confidence(graph: ArtifactGraph, ledger: EvidenceLedger, c: Criterion) -> float | None:
    """Highest confidence any observation lends to the criterion passing.

    ``None`` when no observation touches the criterion (missing evidence).
    Observations of other values, or negated observations, count as 0.
    """
    acts = {a.id: a for a in graph.activities()}
    best = None
    for k in ledger.known:
        a = acts.get(k.activity)
        if a is None:
            continue
        for e in a.evidence.entries(k.state):
            if e.criterion != c.id:
                continue
            support = e.cx if (k.positive and e.value == c.pass_value) else 0.0
            best = support if best is None else max(best, support)
    return best


def implied_beliefs_present(ledger: EvidenceLedger, graph: ArtifactGraph) -> list[Issue]:
    """Every knowledge fact in the ledger has the beliefs its relation implies."""
    from ..artifacts import claim_beliefs

    acts = {a.id: a for a in graph.activities()}
    have = ledger.believed_formulas()
    out = []
    for k in ledger.known:
        a = acts.get(k.activity)
        if a is None:
            continue
        for e in a.evidence.entries(k.state):
            for b in claim_beliefs(e, k.positive):
                if b not in have:
                    out.append(Issue("missing-belief",
                                     f"knowledge of {k.state} lacks its implied belief", k.activity))
    return out


def state_known(ledger: EvidenceLedger, state: str) -> bool:
    return Know(Atom(state)) in ledger.known_formulas()
