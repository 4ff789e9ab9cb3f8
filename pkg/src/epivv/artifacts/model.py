"""V&V artifact graph: dataclasses, project loading and cross-reference checks."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import jsonschema

from ..logic import Dyn, Formula, ParseError, parse_formula, subformulas

DEFAULT_THRESHOLD = 1.0
RELATIONS = ("equivalence", "implication", "contradiction")
TOP_LEVEL_KEYS = (
    "stakeholders", "goals", "needs", "requirements",
    "verification_criteria", "verification_activities",
    "validation_criteria", "validation_activities",
    "outcomes", "derivation", "system", "threshold",
)


class ProjectError(ValueError):
    """Schema or semantic error in a project document."""

    def __init__(self, message: str, path: str = "", artifact: str | None = None):
        self.path = path
        self.artifact = artifact
        where = []
        if artifact:
            where.append(f"artifact {artifact}")
        if path:
            where.append(f"at {path}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)


@dataclass(frozen=True)
class Stakeholder:
    id: str
    goals: tuple[str, ...]
    name: str = ""


@dataclass(frozen=True)
class Goal:
    id: str
    formula: Formula
    statement: str = ""
    text: str = ""


@dataclass(frozen=True)
class Outcome:
    id: str
    formula: Formula
    satisfies: tuple[str, ...]
    statement: str = ""
    text: str = ""


@dataclass(frozen=True)
class Need:
    id: str
    formula: Formula
    statement: str = ""
    text: str = ""


@dataclass(frozen=True)
class Requirement:
    id: str
    formula: Formula
    statement: str = ""
    parent: str | None = None
    text: str = ""


@dataclass(frozen=True)
class SubCriterion:
    id: str
    formula: Formula


@dataclass(frozen=True)
class Criterion:
    id: str
    formula: Formula
    targets: tuple[str, ...]
    kind: str  # "verification" or "validation"
    pass_value: str = "pass"
    decomposition: tuple[SubCriterion, ...] | None = None
    text: str = ""


@dataclass(frozen=True)
class EvidenceState:
    id: str
    criterion: str
    value: str
    relation: str
    confidence: tuple[float, float]

    @property
    def cx(self) -> float:
        return self.confidence[0]

    @property
    def cy(self) -> float:
        return self.confidence[1]


@dataclass(frozen=True)
class EvidenceSpec:
    base: str
    states: tuple[EvidenceState, ...]

    def state_ids(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(s.id for s in self.states))

    def entries(self, state_id: str) -> tuple[EvidenceState, ...]:
        return tuple(s for s in self.states if s.id == state_id)


@dataclass(frozen=True)
class Activity:
    id: str
    event: str
    evidence: EvidenceSpec
    kind: str  # "verification" or "validation"
    observed: tuple[str, ...] = ()

    def criteria(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(s.criterion for s in self.evidence.states))


@dataclass(frozen=True)
class ImplementationPath:
    id: str
    axioms: tuple[Formula, ...] = ()


@dataclass(frozen=True)
class SystemDescriptor:
    id: str
    external: tuple[str, ...] = ()
    interactions: tuple[tuple[str, str, str], ...] = ()

    @property
    def context(self) -> tuple[str, ...]:
        return (self.id,) + self.external


@dataclass(frozen=True)
class ArtifactGraph:
    stakeholders: tuple[Stakeholder, ...]
    goals: tuple[Goal, ...]
    needs: tuple[Need, ...]
    requirements: tuple[Requirement, ...]
    verification_criteria: tuple[Criterion, ...]
    verification_activities: tuple[Activity, ...]
    validation_criteria: tuple[Criterion, ...]
    validation_activities: tuple[Activity, ...]
    outcomes: tuple[Outcome, ...]
    derivation: ImplementationPath
    system: SystemDescriptor
    threshold: float = DEFAULT_THRESHOLD

    def criterion(self, cid: str) -> Criterion:
        for c in self.verification_criteria + self.validation_criteria:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def activities(self) -> tuple[Activity, ...]:
        return self.verification_activities + self.validation_activities


def value_label(value: Any) -> str:
    """Identifier-safe rendering of an assessment value (``0.5`` -> ``0_5``)."""
    if isinstance(value, bool):
        value = str(value).lower()
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    text = re.sub(r"[^A-Za-z0-9_]", "_", str(value))
    return text or "_"


def load_schema() -> dict:
    text = resources.files("epivv.schema").joinpath("project.schema.json").read_text("utf-8")
    return json.loads(text)


def _json_path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


def _parse(text: str, path: str, artifact: str) -> Formula:
    try:
        return parse_formula(text)
    except ParseError as exc:
        raise ProjectError(f"formula error: {exc}", path, artifact) from exc


def _unique(items, category: str, key: str):
    seen: set = set()
    for i, it in enumerate(items):
        if it["id"] in seen:
            raise ProjectError(f"duplicate {category} id {it['id']!r}", f"{key}[{i}].id", it["id"])
        seen.add(it["id"])
    return seen


def load_project(doc: Mapping) -> ArtifactGraph:
    """Validate a project document against the schema and resolve it into a graph."""
    if not isinstance(doc, Mapping):
        raise ProjectError("project document must be an object")
    validator = jsonschema.Draft202012Validator(load_schema())
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        err = errors[0]
        path = _json_path(err.absolute_path)
        artifact = None
        node: Any = doc
        for p in err.absolute_path:
            try:
                node = node[p]
            except (KeyError, IndexError, TypeError):
                break
            if isinstance(node, Mapping) and isinstance(node.get("id"), str):
                artifact = node["id"]
        raise ProjectError(f"schema error: {err.message}", path, artifact)

    goal_ids = _unique(doc["goals"], "goal", "goals")
    need_ids = _unique(doc["needs"], "need", "needs")
    req_ids = _unique(doc["requirements"], "requirement", "requirements")
    _unique(doc["stakeholders"], "stakeholder", "stakeholders")
    _unique(doc["outcomes"], "outcome", "outcomes")
    vc_ids = _unique(doc["verification_criteria"], "verification criterion", "verification_criteria")
    uc_ids = _unique(doc["validation_criteria"], "validation criterion", "validation_criteria")
    _unique(doc["verification_activities"] + doc["validation_activities"], "activity", "activities")

    stakeholders = []
    for i, s in enumerate(doc["stakeholders"]):
        for g in s["goals"]:
            if g not in goal_ids:
                raise ProjectError(f"unknown goal {g!r}", f"stakeholders[{i}].goals", s["id"])
        stakeholders.append(Stakeholder(s["id"], tuple(s["goals"]), s.get("name", "")))

    def statements(key, cls):
        out = []
        for i, it in enumerate(doc[key]):
            f = _parse(it["formula"], f"{key}[{i}].formula", it["id"])
            out.append(cls(id=it["id"], formula=f, statement=it.get("statement", ""),
                           text=it["formula"]))
        return out

    goals = statements("goals", Goal)
    needs = statements("needs", Need)
    for i, n in enumerate(needs):
        if any(isinstance(g, Dyn) for g in subformulas(n.formula)):
            raise ProjectError("need formulas must not contain dynamic operators",
                               f"needs[{i}].formula", n.id)

    requirements = []
    for i, r in enumerate(doc["requirements"]):
        parent = r.get("parent")
        if parent is not None and parent not in req_ids:
            raise ProjectError(f"unknown parent requirement {parent!r}",
                               f"requirements[{i}].parent", r["id"])
        if parent == r["id"]:
            raise ProjectError("requirement cannot be its own parent",
                               f"requirements[{i}].parent", r["id"])
        f = _parse(r["formula"], f"requirements[{i}].formula", r["id"])
        requirements.append(Requirement(r["id"], f, r.get("statement", ""), parent, r["formula"]))
    _check_parent_cycles(requirements)

    def criteria(key, kind, target_ids, target_name):
        out = []
        for i, c in enumerate(doc[key]):
            for t in c["targets"]:
                if t not in target_ids:
                    raise ProjectError(f"unknown {target_name} {t!r}", f"{key}[{i}].targets", c["id"])
            f = _parse(c["formula"], f"{key}[{i}].formula", c["id"])
            deco = None
            if "decomposition" in c:
                deco = tuple(
                    SubCriterion(s["id"], _parse(s["formula"], f"{key}[{i}].decomposition[{j}].formula", s["id"]))
                    for j, s in enumerate(c["decomposition"])
                )
            out.append(Criterion(c["id"], f, tuple(c["targets"]), kind,
                                 value_label(c.get("pass_value", "pass")), deco, c["formula"]))
        return out

    vcs = criteria("verification_criteria", "verification", req_ids, "requirement")
    ucs = criteria("validation_criteria", "validation", need_ids, "need")

    def activities(key, kind, crit_ids):
        out = []
        for i, a in enumerate(doc[key]):
            states = []
            for j, s in enumerate(a["evidence"]["states"]):
                path = f"{key}[{i}].evidence.states[{j}]"
                if s["criterion"] not in crit_ids:
                    raise ProjectError(f"unknown {kind} criterion {s['criterion']!r}",
                                       path + ".criterion", a["id"])
                if s["id"].startswith("occ__"):
                    raise ProjectError("state ids must not use the reserved prefix 'occ__'",
                                       path + ".id", a["id"])
                cx, cy = s["confidence"]
                if not math.isclose(cx + cy, 1.0, abs_tol=1e-9):
                    raise ProjectError(
                        f"confidence pair ({cx}, {cy}) violates x_i + y_i = 1",
                        path + ".confidence", a["id"])
                states.append(EvidenceState(s["id"], s["criterion"], value_label(s["value"]),
                                            s["relation"], (float(cx), float(cy))))
            spec = EvidenceSpec(a["evidence"]["base"], tuple(states))
            observed = tuple(a.get("observed", ()))
            for o in observed:
                if o.lstrip("!") not in spec.state_ids():
                    raise ProjectError(f"observed state {o!r} is not declared by the activity",
                                       f"{key}[{i}].observed", a["id"])
            out.append(Activity(a["id"], a["event"], spec, kind, observed))
        return out

    vas = activities("verification_activities", "verification", vc_ids)
    uas = activities("validation_activities", "validation", uc_ids)

    outcomes = []
    for i, o in enumerate(doc["outcomes"]):
        for g in o["satisfies"]:
            if g not in goal_ids:
                raise ProjectError(f"unknown goal {g!r}", f"outcomes[{i}].satisfies", o["id"])
        f = _parse(o["formula"], f"outcomes[{i}].formula", o["id"])
        outcomes.append(Outcome(o["id"], f, tuple(o["satisfies"]), o.get("statement", ""), o["formula"]))

    d = doc["derivation"]
    axioms = tuple(_parse(t, f"derivation.axioms[{i}]", d["id"]) for i, t in enumerate(d["axioms"]))
    sysd = doc["system"]
    system = SystemDescriptor(
        sysd["id"], tuple(sysd.get("external", ())),
        tuple((x["system"], x["external"], x["label"]) for x in sysd.get("interactions", ())),
    )
    return ArtifactGraph(
        tuple(stakeholders), tuple(goals), tuple(needs), tuple(requirements),
        tuple(vcs), tuple(vas), tuple(ucs), tuple(uas), tuple(outcomes),
        ImplementationPath(d["id"], axioms), system,
        float(doc.get("threshold", DEFAULT_THRESHOLD)),
    )


def _check_parent_cycles(reqs) -> None:
    parent = {r.id: r.parent for r in reqs}
    for r in reqs:
        seen = {r.id}
        cur = r.parent
        while cur is not None:
            if cur in seen:
                raise ProjectError("requirement decomposition forms a cycle", "requirements", r.id)
            seen.add(cur)
            cur = parent.get(cur)


def load_project_file(path: str | Path) -> ArtifactGraph:
    try:
        doc = json.loads(Path(path).read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise ProjectError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from exc
    return load_project(doc)
