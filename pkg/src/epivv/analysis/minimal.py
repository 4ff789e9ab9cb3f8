"""Minimal-set extraction by deterministic deletion."""

from __future__ import annotations

from typing import Sequence

from ..artifacts import Activity, Criterion, ImplementationPath
from ..logic import Believe
from .validity import (
    DEFAULT_LIMITS,
    HOLDS,
    Limits,
    _entail,
    _formula,
    check_activity_validity,
    check_pair_validity,
    pass_labels,
    supports,
)
from .verdicts import MinimalSetResult, Removal


def extract_minimal_set(
    elements: Sequence,
    targets: Sequence,
    path: ImplementationPath,
    kind: str,
    limits: Limits = DEFAULT_LIMITS,
) -> MinimalSetResult:
    """Drop elements in id order while the remaining set stays valid.

    Within the subsets of a valid set, necessity and consistency always hold,
    and sufficiency is upward closed; the result is therefore the valid subset
    whose membership vector, read in id order, is lexicographically least.
    """
    items = sorted(elements, key=lambda e: e.id)
    verdict = check_pair_validity(items, targets, path, kind, limits)
    if not verdict.valid:
        return MinimalSetResult(kind, tuple(e.id for e in items), (), False, verdict)
    current = list(items)
    removed = []
    for e in items:
        trial = [x for x in current if x is not e]
        if check_pair_validity(trial, targets, path, kind, limits).valid:
            current = trial
            removed.append(Removal(e.id, tuple(t.id for t in targets)))
    essential = {}
    for e in current:
        rest = [Believe(_formula(x)) for x in current if x is not e]
        lost = []
        for t in targets:
            status, _, _ = _entail(rest, Believe(_formula(t)), list(path.axioms), limits)
            if status != HOLDS:
                lost.append(t.id)
        essential[e.id] = tuple(lost)
    final = check_pair_validity(current, targets, path, kind, limits)
    return MinimalSetResult(kind, tuple(e.id for e in current), tuple(removed), True, final,
                            essential)


def coverage(
    activities: Sequence[Activity],
    criteria: Sequence[Criterion],
    path: ImplementationPath,
    limits: Limits = DEFAULT_LIMITS,
) -> dict[str, tuple[str, ...]]:
    """Criteria each activity establishes on its own evidence chain."""
    labels = pass_labels(criteria)
    out = {}
    for a in activities:
        mine = set(a.criteria())
        out[a.id] = tuple(c.id for c in criteria
                          if c.id in mine and supports(a, c, path, labels, limits))
    return out


def extract_minimal_activity_set(
    activities: Sequence[Activity],
    criteria: Sequence[Criterion],
    path: ImplementationPath,
    limits: Limits = DEFAULT_LIMITS,
) -> MinimalSetResult:
    """Drop an activity when every criterion it establishes is established by another kept one."""
    items = sorted(activities, key=lambda a: a.id)
    kind = "activities->criteria"
    verdict = check_activity_validity(items, criteria, path, limits)
    if not verdict.valid:
        return MinimalSetResult(kind, tuple(a.id for a in items), (), False, verdict)
    cov = coverage(items, criteria, path, limits)
    current = list(items)
    removed = []
    for a in items:
        others = [x for x in current if x is not a]
        if all(any(c in cov[x.id] for x in others) for c in cov[a.id]):
            current = others
            removed.append(Removal(a.id, cov[a.id]))
    essential = {}
    for a in current:
        others = [x for x in current if x is not a]
        essential[a.id] = tuple(c for c in cov[a.id] if not any(c in cov[x.id] for x in others))
    final = check_activity_validity(current, criteria, path, limits)
    return MinimalSetResult(kind, tuple(a.id for a in current), tuple(removed), True, final,
                            essential)
