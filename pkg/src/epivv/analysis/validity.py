"""Sufficiency/necessity validity for artifact pairs, activities and decompositions."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from ..artifacts import (
    Activity,
    Criterion,
    ImplementationPath,
    activity_knowledge,
    activity_occurrence,
    evidence_axioms,
)
from ..engine import DEFAULT_BUDGET, entails, is_satisfiable
from ..logic import Believe, Formula, conj
from .verdicts import FAILS, HOLDS, VACUOUS, ValidityVerdict, Warning, Witness

PAIR_KINDS = {
    "needs->goals": ("needs", "goals"),
    "requirements->needs": ("requirements", "needs"),
    "vcriteria->requirements": ("verification criteria", "requirements"),
    "ucriteria->needs": ("validation criteria", "needs"),
}


class Limits:
    """Engine bounds threaded through every analysis call."""

    def __init__(self, max_worlds: int | None = None, budget: int = DEFAULT_BUDGET):
        self.max_worlds = max_worlds
        self.budget = budget


DEFAULT_LIMITS = Limits()


def _formula(item) -> Formula:
    return item if not hasattr(item, "formula") else item.formula


def _ident(item, i: int) -> str:
    return getattr(item, "id", f"#{i}")


def _entail(premises, conclusion, background, limits: Limits):
    """Entailment with an absent conclusion read as the empty conjunction."""
    if conclusion is None:
        r = is_satisfiable(list(premises) + list(background), limits.max_worlds, limits.budget)
        return (VACUOUS if not r.satisfiable else HOLDS), None, r.proved
    v = entails(premises, conclusion, background, limits.max_worlds, limits.budget)
    if v.vacuous:
        return VACUOUS, None, v.proved
    return (HOLDS if v.holds else FAILS), v.countermodel, v.proved


def _status_pair(kind, premises_lo, premises_up, background, limits, lower_ids, upper_ids,
                 lower_raw=None):
    suff, cm_s, p1 = _entail(premises_lo, conj(premises_up), background, limits)
    nec, cm_n, p2 = _entail(premises_up, conj(premises_lo), background, limits)
    witnesses = []
    if cm_s is not None:
        witnesses.append(Witness("sufficiency", cm_s))
    if cm_n is not None:
        witnesses.append(Witness("necessity", cm_n))
    warnings = []
    if suff == VACUOUS:
        alone = is_satisfiable(premises_lo, limits.max_worlds, limits.budget).satisfiable
        lo_name, _ = PAIR_KINDS.get(kind, ("lower set", ""))
        if not alone:
            warnings.append(Warning(
                "inconsistent-lower",
                f"the {lo_name} are mutually inconsistent; sufficiency holds only vacuously",
                tuple(lower_ids)))
        else:
            warnings.append(Warning(
                "infeasible",
                f"the {lo_name} contradict the implementation path axioms; no solution can "
                "satisfy them (feasibility failure)",
                tuple(lower_ids)))
    if nec == VACUOUS:
        warnings.append(Warning(
            "vacuous-necessity",
            "the upper set is inconsistent with the implementation path; necessity holds only vacuously",
            tuple(upper_ids)))
    if lower_raw is not None and suff != VACUOUS:
        raw = is_satisfiable(list(lower_raw) + list(background), limits.max_worlds, limits.budget)
        if not raw.satisfiable:
            warnings.append(Warning(
                "infeasible",
                "the lower-level propositions contradict the implementation path axioms",
                tuple(lower_ids)))
    inconclusive = not (p1 and p2)
    if inconclusive:
        warnings.append(Warning(
            "inconclusive",
            "an entailment was decided only up to the configured world bound"))
    return ValidityVerdict(kind, suff, nec, tuple(witnesses), tuple(warnings), inconclusive)


def check_pair_validity(
    lower: Sequence,
    upper: Sequence,
    path: ImplementationPath,
    kind: str,
    limits: Limits = DEFAULT_LIMITS,
) -> ValidityVerdict:
    """Validity of ``lower`` against ``upper`` relative to the path axioms.

    Sufficiency: beliefs in every lower element entail belief in every upper
    element.  Necessity, in contrapositive form: beliefs in every upper
    element entail belief in every lower element.
    """
    lo = [Believe(_formula(x)) for x in lower]
    up = [Believe(_formula(x)) for x in upper]
    lower_ids = [_ident(x, i) for i, x in enumerate(lower)]
    upper_ids = [_ident(x, i) for i, x in enumerate(upper)]
    return _status_pair(kind, lo, up, list(path.axioms), limits, lower_ids, upper_ids,
                        lower_raw=[_formula(x) for x in lower])


def pass_labels(criteria: Iterable[Criterion]) -> dict[str, str]:
    return {c.id: c.pass_value for c in criteria}


def activity_premises(activities: Iterable[Activity], labels: Mapping[str, str]) -> list[Formula]:
    out: list[Formula] = []
    for a in activities:
        out.append(activity_occurrence(a))
        out.extend(activity_knowledge(a, labels))
    return out


def check_activity_validity(
    activities: Sequence[Activity],
    criteria: Sequence[Criterion],
    path: ImplementationPath,
    limits: Limits = DEFAULT_LIMITS,
) -> ValidityVerdict:
    """Knowledge produced by the activities entails belief in the criteria, and conversely."""
    labels = pass_labels(criteria)
    background = list(path.axioms) + evidence_axioms(activities, criteria=criteria)
    knowledge = [f for a in activities for f in activity_knowledge(a, labels)]
    occurrences = [activity_occurrence(a) for a in activities]
    beliefs = [Believe(c.formula) for c in criteria]
    kind = "activities->criteria"
    suff, cm_s, p1 = _entail(occurrences + knowledge, conj(beliefs), background, limits)
    nec, cm_n, p2 = _entail(beliefs, conj(knowledge), background, limits)
    witnesses = []
    if cm_s is not None:
        witnesses.append(Witness("sufficiency", cm_s))
    if cm_n is not None:
        witnesses.append(Witness("necessity", cm_n))
    warnings = []
    ids = tuple(a.id for a in activities)
    if suff == VACUOUS:
        warnings.append(Warning(
            "inconsistent-activities",
            "the activities are inconsistent with each other or with the implementation path; "
            "sufficiency holds only vacuously", ids))
    if nec == VACUOUS:
        warnings.append(Warning(
            "vacuous-necessity",
            "the criteria are inconsistent with the evidence axioms; necessity holds only vacuously",
            tuple(c.id for c in criteria)))
    inconclusive = not (p1 and p2)
    if inconclusive:
        warnings.append(Warning("inconclusive",
                                "an entailment was decided only up to the configured world bound"))
    return ValidityVerdict(kind, suff, nec, tuple(witnesses), tuple(warnings), inconclusive)


def supports(
    activity: Activity,
    criterion: Criterion,
    path: ImplementationPath,
    labels: Mapping[str, str],
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    """The activity's evidence alone, non-vacuously, yields belief in the criterion."""
    premises = activity_premises([activity], labels)
    background = list(path.axioms) + evidence_axioms([activity], criteria=[criterion])
    status, _, _ = _entail(premises, Believe(criterion.formula), background, limits)
    return status == HOLDS


def check_decomposition(
    criteria: Sequence[Criterion],
    targets: Sequence,
    path: ImplementationPath,
    kind: str = "vcriteria->requirements",
    limits: Limits = DEFAULT_LIMITS,
) -> ValidityVerdict:
    """Confirm declared decompositions and re-check validity of the decomposed set.

    Each criterion with a decomposition must be believed exactly when all its
    sub-criteria are believed.  Unconfirmed equivalences fail the verdict.
    """
    axioms = list(path.axioms)
    witnesses = []
    warnings = []
    broken = []
    decomposed = []
    for c in criteria:
        if not c.decomposition:
            decomposed.append(c)
            continue
        subs = [Believe(s.formula) for s in c.decomposition]
        fwd, cm1, _ = _entail([Believe(c.formula)], conj(subs), axioms, limits)
        bwd, cm2, _ = _entail(subs, Believe(c.formula), axioms, limits)
        if fwd != HOLDS or bwd != HOLDS:
            broken.append(c.id)
            for label, cm in (("decomposition:" + c.id + ":parent->subs", cm1),
                              ("decomposition:" + c.id + ":subs->parent", cm2)):
                if cm is not None:
                    witnesses.append(Witness(label, cm))
            warnings.append(Warning(
                "decomposition-unconfirmed",
                f"criterion {c.id} is not equivalent to the conjunction of its sub-criteria",
                (c.id,)))
        decomposed.extend(c.decomposition)
    base = check_pair_validity(decomposed, targets, path, kind, limits)
    if broken:
        return ValidityVerdict(kind, FAILS, base.necessity, tuple(witnesses) + base.witnesses,
                               tuple(warnings) + base.warnings, base.inconclusive)
    return base
