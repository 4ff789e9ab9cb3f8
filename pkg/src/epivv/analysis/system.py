"""System-level verdicts and the verification/validation reuse classifier."""

from __future__ import annotations

from typing import Sequence

from ..artifacts import Activity, ArtifactGraph, EvidenceLedger, ImplementationPath, evidence_axioms
from ..logic import Believe, conj
from .confidence import criterion_confidence, implied_beliefs_present
from .validity import (
    DEFAULT_LIMITS,
    HOLDS,
    VACUOUS,
    Limits,
    _entail,
    activity_premises,
    check_pair_validity,
    pass_labels,
)
from .verdicts import Issue, SystemVerdict, VvClassification, Warning, Witness

SUFFICIENT_AND_NECESSARY = "sufficient_and_necessary"
SUFFICIENT_ONLY = "sufficient_only"
NECESSARY_ONLY = "necessary_only"
NEITHER = "neither"

# quadrant -> (verification serves validation, validation serves verification)
REUSE_TABLE = {
    SUFFICIENT_AND_NECESSARY: (True, True),
    SUFFICIENT_ONLY: (True, False),
    NECESSARY_ONLY: (False, True),
    NEITHER: (False, False),
}


def _system_check(name, graph, ledger, criteria, targets, kind, threshold, limits):
    issues = []
    warnings = []
    verdict = check_pair_validity(criteria, targets, graph.derivation, kind, limits)
    if not verdict.valid:
        issues.append(Issue(
            "criteria-invalid",
            f"criteria are not valid against their targets "
            f"(sufficiency {verdict.sufficiency}, necessity {verdict.necessity})"))
    warnings.extend(verdict.warnings)
    confidences = {}
    for c in criteria:
        conf = criterion_confidence(graph, ledger, c)
        confidences[c.id] = conf
        if conf is None:
            issues.append(Issue("missing-evidence", "criterion was never exercised by an activity", c.id))
        elif conf < threshold:
            issues.append(Issue("below-threshold",
                                f"confidence {conf:g} is below the threshold {threshold:g}", c.id))
    issues.extend(implied_beliefs_present(ledger, graph))
    return SystemVerdict(name, not issues, tuple(issues), tuple(warnings), confidences,
                         verdict.witnesses)


def check_system_verified(graph: ArtifactGraph, ledger: EvidenceLedger,
                          threshold: float | None = None,
                          limits: Limits = DEFAULT_LIMITS) -> SystemVerdict:
    tau = graph.threshold if threshold is None else threshold
    return _system_check("verified", graph, ledger, list(graph.verification_criteria),
                         list(graph.requirements), "vcriteria->requirements", tau, limits)


def check_proxy_valid(graph: ArtifactGraph, ledger: EvidenceLedger,
                      threshold: float | None = None,
                      limits: Limits = DEFAULT_LIMITS) -> SystemVerdict:
    tau = graph.threshold if threshold is None else threshold
    v = _system_check("proxy-valid", graph, ledger, list(graph.validation_criteria),
                      list(graph.needs), "ucriteria->needs", tau, limits)
    if v.ok and graph.goals:
        needs = check_pair_validity(list(graph.needs), list(graph.goals), graph.derivation,
                                    "needs->goals", limits)
        if not needs.valid:
            gap = Warning(
                "proxy-goal-gap",
                "the system is valid against the stated needs, but the needs are not valid "
                "against the goals, so it cannot be taken as a valid solution",
                tuple(n.id for n in graph.needs))
            return SystemVerdict(v.name, v.ok, v.issues, v.warnings + (gap,), v.confidences,
                                 v.witnesses)
    return v


def check_goal_valid(graph: ArtifactGraph, limits: Limits = DEFAULT_LIMITS) -> SystemVerdict:
    """Every goal has a linked outcome whose formula entails the goal's formula."""
    issues = []
    witnesses = []
    axioms = list(graph.derivation.axioms)
    for g in graph.goals:
        linked = [o for o in graph.outcomes if g.id in o.satisfies]
        if not linked:
            issues.append(Issue("unsatisfied-goal", "no outcome is linked to this goal", g.id))
            continue
        ok = False
        for o in linked:
            status, cm, _ = _entail([o.formula], g.formula, axioms, limits)
            if status == HOLDS:
                ok = True
                break
            if cm is not None:
                witnesses.append(Witness(f"{o.id}->{g.id}", cm))
        if not ok:
            issues.append(Issue("unsatisfied-goal",
                                "no linked outcome entails this goal", g.id))
    return SystemVerdict("goal-valid", not issues, tuple(issues), (), {}, tuple(witnesses))


def classify_vv_relationship(requirements: Sequence, needs: Sequence, path: ImplementationPath,
                             limits: Limits = DEFAULT_LIMITS) -> VvClassification:
    """Place requirements against needs in the sufficiency/necessity quadrant."""
    reqs = [Believe(r.formula) for r in requirements]
    nds = [Believe(n.formula) for n in needs]
    axioms = list(path.axioms)
    suff, _, _ = _entail(reqs, conj(nds), axioms, limits)
    nec, _, _ = _entail(nds, conj(reqs), axioms, limits)
    if VACUOUS in (suff, nec) or not reqs or not nds:
        reason = ("requirements or needs are empty" if not reqs or not nds
                  else "requirements or needs are inconsistent under the implementation path")
        w = Warning("vacuous-basis",
                    f"classification refused: {reason}, so neither side can induce "
                    "beliefs about the other")
        return VvClassification(None, False, False, True, (w,))
    s, n = suff == HOLDS, nec == HOLDS
    quadrant = (SUFFICIENT_AND_NECESSARY if s and n else SUFFICIENT_ONLY if s
                else NECESSARY_ONLY if n else NEITHER)
    fwd, back = REUSE_TABLE[quadrant]
    return VvClassification(quadrant, fwd, back)


def activities_induce(activities: Sequence[Activity], graph: ArtifactGraph, upper: Sequence,
                      limits: Limits = DEFAULT_LIMITS) -> str:
    """Whether running ``activities`` yields belief in every element of ``upper``."""
    criteria = graph.verification_criteria + graph.validation_criteria
    labels = pass_labels(criteria)
    premises = activity_premises(activities, labels)
    background = list(graph.derivation.axioms) + evidence_axioms(activities, criteria=criteria)
    status, _, _ = _entail(premises, conj([Believe(u.formula) for u in upper]), background, limits)
    return status


def verification_serves_validation(graph: ArtifactGraph, limits: Limits = DEFAULT_LIMITS) -> bool:
    """The verification activities, taken as validation activities, establish belief in the needs."""
    return activities_induce(list(graph.verification_activities), graph, list(graph.needs),
                             limits) == HOLDS
