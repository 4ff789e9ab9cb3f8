"""Evidence ledger: what the agent knows and believes after activities run."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..logic import Atom, Formula, Know, Not, render_formula
from .encoding import claim_beliefs, state_axioms
from .model import Activity, ArtifactGraph


class LedgerError(ValueError):
    pass


class UnknownStateError(LedgerError):
    pass


class ConflictingEvidenceError(LedgerError):
    def __init__(self, activity: str, state: str, existing: Formula):
        self.activity = activity
        self.state = state
        super().__init__(
            f"activity {activity}: observing {state} conflicts with known "
            f"{render_formula(existing)}"
        )


@dataclass(frozen=True)
class KnownEntry:
    formula: Formula
    activity: str
    state: str
    positive: bool


@dataclass(frozen=True)
class BelievedEntry:
    formula: Formula
    known: Formula  # the knowledge fact the belief was derived from
    axiom: Formula  # evidence axiom licensing the step
    activity: str
    state: str


@dataclass(frozen=True)
class EvidenceLedger:
    known: tuple[KnownEntry, ...] = ()
    believed: tuple[BelievedEntry, ...] = ()
    occurred: tuple[str, ...] = ()

    def known_formulas(self) -> frozenset[Formula]:
        return frozenset(e.formula for e in self.known)

    def believed_formulas(self) -> frozenset[Formula]:
        return frozenset(e.formula for e in self.believed)

    def facts(self) -> tuple[frozenset, frozenset]:
        """The ledger content as plain sets, ignoring provenance and order."""
        return self.known_formulas(), self.believed_formulas()

    def observations(self) -> list[KnownEntry]:
        return list(self.known)


def _parse_observation(observed: str) -> tuple[str, bool]:
    if observed.startswith("!"):
        return observed[1:], False
    return observed, True


def apply_activity(ledger: EvidenceLedger, activity: Activity, observed: str) -> EvidenceLedger:
    """Return a new ledger extended with the outcome of running ``activity``.

    ``observed`` names one declared evidence state, or its negation with a
    leading ``!``.  Knowledge of the state is added along with every belief
    its relation licenses.
    """
    state_id, positive = _parse_observation(observed)
    entries = activity.evidence.entries(state_id)
    if not entries:
        raise UnknownStateError(
            f"activity {activity.id}: {state_id!r} is not a declared evidence state"
        )
    atom = Atom(state_id)
    fact = Know(atom) if positive else Know(Not(atom))
    opposite = Know(Not(atom)) if positive else Know(atom)
    known = list(ledger.known)
    for e in known:
        if e.formula == opposite:
            raise ConflictingEvidenceError(activity.id, observed, e.formula)
    if all(e.formula != fact for e in known):
        known.append(KnownEntry(fact, activity.id, state_id, positive))
    believed = list(ledger.believed)
    have = {b.formula for b in believed}
    for st in entries:
        axioms = state_axioms(st)
        for belief in claim_beliefs(st, positive):
            if belief in have:
                continue
            axiom = next(a for a in axioms if _licenses(a, fact, belief))
            believed.append(BelievedEntry(belief, fact, axiom, activity.id, state_id))
            have.add(belief)
    occurred = ledger.occurred
    if activity.event not in occurred:
        occurred = occurred + (activity.event,)
    return EvidenceLedger(tuple(known), tuple(believed), occurred)


def _licenses(axiom: Formula, fact: Formula, belief: Formula) -> bool:
    # axioms are encoded as !(premise & !conclusion)
    inner = axiom.child
    return inner.left == fact and inner.right.child == belief


def build_ledger(graph: ArtifactGraph, activities: Iterable[Activity] | None = None) -> EvidenceLedger:
    """Apply every declared observation of ``activities`` (default: all) in document order."""
    ledger = EvidenceLedger()
    for a in graph.activities() if activities is None else activities:
        for obs in a.observed:
            ledger = apply_activity(ledger, a, obs)
    return ledger


def replay(entry: BelievedEntry) -> bool:
    """Re-derive a belief from its recorded knowledge fact and axiom."""
    from ..engine import entails

    return entails([entry.known], entry.formula, [entry.axiom]).holds
