"""Report documents: one tree per run, rendered as JSON or as text."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from ..analysis import (
    ConfidenceReport,
    MinimalSetResult,
    SystemVerdict,
    ValidityVerdict,
    VvClassification,
    Warning,
)
from ..artifacts import WellFormednessReport
from ..engine import SatResult
from ..kripke import model_to_literal

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class Report:
    tool: str
    version: str
    command: str
    source: str
    digest: str
    sections: dict[str, Any] = field(default_factory=dict)
    warnings: list[dict] = field(default_factory=list)
    error: dict | None = None
    timing: dict | None = None

    def add_warnings(self, section: str, warnings) -> None:
        for w in warnings:
            self.warnings.append(warning_doc(w, section))

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return self.error["exit"]
        return EXIT_OK if all(s.get("ok", True) for s in self.sections.values()) else EXIT_INVALID

    def to_doc(self, with_timing: bool = False) -> dict:
        doc = {
            "tool": self.tool,
            "version": self.version,
            "command": self.command,
            "source": {"file": self.source, "sha256": self.digest},
            "sections": self.sections,
            "warnings": self.warnings,
            "exit_code": self.exit_code,
        }
        if self.error is not None:
            doc["error"] = self.error
        if with_timing and self.timing is not None:
            doc["timing"] = self.timing
        return doc


def warning_doc(w: Warning, section: str = "") -> dict:
    out = {"code": w.code, "message": w.message, "artifacts": list(w.artifacts)}
    if section:
        out["section"] = section
    return out


def validity_doc(v: ValidityVerdict) -> dict:
    return {
        "ok": v.valid,
        "valid": v.valid,
        "kind": v.kind,
        "sufficiency": v.sufficiency,
        "necessity": v.necessity,
        "inconclusive": v.inconclusive,
        "witnesses": [{"label": w.label, "model": model_to_literal(w.model)} for w in v.witnesses],
        "warnings": [warning_doc(w) for w in v.warnings],
    }


def wellformed_doc(r: WellFormednessReport) -> dict:
    return {
        "ok": r.verified,
        "kind": r.kind,
        "items": [
            {"id": i.id, "atomic": i.atomic, "wff": i.wff, "consistent": i.consistent,
             "message": i.message}
            for i in r.items
        ],
    }


def confidence_doc(r: ConfidenceReport) -> dict:
    return {
        "ok": r.valid,
        "states": [
            {"activity": s.activity, "state": s.state, "known": s.known,
             "issues": [{"code": i.code, "message": i.message} for i in s.issues]}
            for s in r.states
        ],
    }


def system_doc(v: SystemVerdict) -> dict:
    return {
        "ok": v.ok,
        "verdict": v.name if v.ok else f"not {v.name}",
        "issues": [{"code": i.code, "message": i.message, "artifact": i.artifact} for i in v.issues],
        "confidences": {k: v.confidences[k] for k in sorted(v.confidences)},
        "warnings": [warning_doc(w) for w in v.warnings],
        "witnesses": [{"label": w.label, "model": model_to_literal(w.model)} for w in v.witnesses],
    }


def minimal_doc(r: MinimalSetResult) -> dict:
    doc = {
        "ok": r.input_valid,
        "kind": r.kind,
        "input_valid": r.input_valid,
        "input_minimal": r.input_minimal,
        "minimal": list(r.minimal),
        "removed": [{"id": x.id, "redundant_for": list(x.justification)} for x in r.removed],
        "essential_for": {k: list(r.essential[k]) for k in sorted(r.essential)},
    }
    if r.verdict is not None:
        doc["verdict"] = validity_doc(r.verdict)
    return doc


def classification_doc(c: VvClassification, serves: bool | None) -> dict:
    doc = {
        "ok": not c.refused,
        "refused": c.refused,
        "quadrant": c.quadrant,
        "verification_serves_validation": c.verification_serves_validation,
        "validation_serves_verification": c.validation_serves_verification,
        "warnings": [warning_doc(w) for w in c.warnings],
    }
    if serves is not None:
        doc["verification_activities_accepted_for_validation"] = serves
    return doc


def sat_doc(r: SatResult, cbound: int) -> dict:
    return {
        "ok": r.satisfiable,
        "status": r.status,
        "bound_used": r.bound_used,
        "completeness_bound": cbound,
        "witness": model_to_literal(r.witness) if r.witness is not None else None,
    }


def render_machine(report: Report, with_timing: bool = False) -> str:
    return json.dumps(report.to_doc(with_timing), indent=2, sort_keys=True) + "\n"


def render_text(report: Report, with_timing: bool = False) -> str:
    doc = report.to_doc(with_timing)
    lines = [f"{doc['tool']} {doc['version']} {doc['command']} {doc['source']['file']}"]
    if "error" in doc:
        lines.append(f"error: {doc['error']['message']}")
    for name, sec in doc["sections"].items():
        lines.append("")
        lines.extend(_text_section(name, sec))
    if doc["warnings"]:
        lines.append("")
        lines.append("warnings:")
        for w in doc["warnings"]:
            where = f" [{', '.join(w['artifacts'])}]" if w["artifacts"] else ""
            sec = f"{w['section']}: " if w.get("section") else ""
            lines.append(f"  - {sec}{w['code']}: {w['message']}{where}")
    if "timing" in doc:
        lines.append("")
        lines.append(f"time: {doc['timing']['seconds']:.3f}s")
    lines.append("")
    lines.append(f"exit {doc['exit_code']}")
    return "\n".join(lines) + "\n"


def _mark(ok: bool) -> str:
    return "ok " if ok else "FAIL"


def _text_section(name: str, sec: dict) -> list[str]:
    head = f"[{_mark(sec.get('ok', True))}] {name}"
    out = []
    if "sufficiency" in sec:
        out.append(f"{head}: sufficiency {sec['sufficiency']}, necessity {sec['necessity']}")
    elif "items" in sec:
        out.append(head)
        for it in sec["items"]:
            good = it["atomic"] and it["wff"] and it["consistent"]
            note = f" ({it['message']})" if it["message"] else ""
            out.append(f"    {it['id']}: {'well-formed' if good else 'ill-formed'}{note}")
    elif "states" in sec:
        out.append(head)
        for st in sec["states"]:
            for i in st["issues"]:
                out.append(f"    {st['activity']}/{st['state']}: {i['code']}: {i['message']}")
    elif "verdict" in sec and "issues" in sec:
        out.append(f"{head}: {sec['verdict']}")
        for k, v in sec["confidences"].items():
            out.append(f"    confidence {k}: {'missing' if v is None else format(v, 'g')}")
        for i in sec["issues"]:
            who = f"{i['artifact']}: " if i["artifact"] else ""
            out.append(f"    {who}{i['code']}: {i['message']}")
    elif "minimal" in sec:
        if not sec["input_valid"]:
            out.append(f"{head}: input set is not valid; minimization refused")
        elif sec["input_minimal"]:
            out.append(f"{head}: input minimal {{{', '.join(sec['minimal'])}}}")
        else:
            out.append(f"{head}: minimal {{{', '.join(sec['minimal'])}}}")
            for r in sec["removed"]:
                out.append(f"    removed {r['id']} (redundant for {', '.join(r['redundant_for']) or 'nothing'})")
    elif "quadrant" in sec:
        if sec["refused"]:
            out.append(f"{head}: classification refused")
        else:
            out.append(f"{head}: {sec['quadrant']}")
            out.append(f"    verification serves validation: {sec['verification_serves_validation']}")
            out.append(f"    validation serves verification: {sec['validation_serves_verification']}")
            if "verification_activities_accepted_for_validation" in sec:
                out.append("    verification activities accepted for validation: "
                           f"{sec['verification_activities_accepted_for_validation']}")
    elif "status" in sec:
        out.append(f"{head}: {sec['status']} (bound {sec['bound_used']}, "
                   f"completeness bound {sec['completeness_bound']})")
    elif "frames" in sec:
        out.append(head)
        f = sec["frames"]
        out.append(f"    knowledge frame: {'ok' if f['knowledge_ok'] else 'violated'}; "
                   f"belief frame: {'ok' if f['belief_ok'] else 'violated'}")
        for v in f["violations"]:
            out.append(f"    {v['relation']} not {v['property']}: {', '.join(v['witness'])}")
        if sec.get("axioms"):
            a = sec["axioms"]
            out.append(f"    axioms: {'hold' if a['holds'] else 'violated'} "
                       f"({a['instances_checked']} cases)")
    else:
        out.append(head)
    return out
