"""Command-line entry point."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .. import __version__
from ..analysis import (
    Limits,
    check_activity_validity,
    check_confidence_validity,
    check_decomposition,
    check_goal_valid,
    check_pair_validity,
    check_proxy_valid,
    check_system_verified,
    classify_vv_relationship,
    extract_minimal_activity_set,
    extract_minimal_set,
    verification_serves_validation,
    SUFFICIENT_AND_NECESSARY,
)
from ..artifacts import (
    ArtifactGraph,
    LedgerError,
    ProjectError,
    build_ledger,
    load_project,
    well_formed,
)
from ..engine import BudgetExceeded, DEFAULT_BUDGET, completeness_bound, is_satisfiable
from ..kripke import ModelError, check_frames, model_from_literal, validate_axioms
from ..logic import ParseError, parse_formula
from .report import (
    EXIT_BUDGET,
    EXIT_USAGE,
    Report,
    classification_doc,
    confidence_doc,
    minimal_doc,
    render_machine,
    render_text,
    sat_doc,
    system_doc,
    validity_doc,
    wellformed_doc,
)

COMMANDS = ("check", "minimize", "classify", "frames", "sat")
MIN_SETS = ("needs", "requirements", "vcriteria", "ucriteria", "vactivities", "uactivities")


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _unit_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="epivv",
        description="Check V&V artifact sets with an epistemic logic of knowledge and belief.",
    )
    p.add_argument("--version", action="version", version=f"epivv {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", metavar="FILE",
                   help="project document (check, minimize, classify), model document (frames) "
                        "or formula list (sat)")
    p.add_argument("--max-worlds", type=_positive_int, default=None,
                   help="world bound for the decision engine (default: completeness bound)")
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET,
                   help=f"search budget (default {DEFAULT_BUDGET})")
    p.add_argument("--tau", type=_unit_float, default=None,
                   help="confidence threshold overriding the project's")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--out", metavar="PATH", default=None, help="write the report here")
    p.add_argument("--set", dest="sets", action="append", choices=MIN_SETS,
                   help="minimize: restrict to these sets (repeatable)")
    p.add_argument("--depth", type=int, default=1,
                   help="frames: probe formula depth for axiom checks (default 1)")
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock timing in the report")
    return p


def _read_json(path: Path):
    try:
        return json.loads(path.read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise ProjectError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})")


def run_check(graph: ArtifactGraph, report: Report, limits: Limits, tau: float | None) -> None:
    s = report.sections
    path = graph.derivation
    s["wellformed.needs"] = wellformed_doc(well_formed(graph.needs, "needs"))
    s["wellformed.requirements"] = wellformed_doc(well_formed(graph.requirements, "requirements"))
    pairs = (
        ("needs->goals", graph.needs, graph.goals),
        ("requirements->needs", graph.requirements, graph.needs),
        ("vcriteria->requirements", graph.verification_criteria, graph.requirements),
        ("ucriteria->needs", graph.validation_criteria, graph.needs),
    )
    for kind, lower, upper in pairs:
        v = check_pair_validity(list(lower), list(upper), path, kind, limits)
        s[f"validity.{kind}"] = validity_doc(v)
        report.add_warnings(f"validity.{kind}", v.warnings)
    for kind, crits, targets in (("vcriteria->requirements", graph.verification_criteria, graph.requirements),
                                 ("ucriteria->needs", graph.validation_criteria, graph.needs)):
        if any(c.decomposition for c in crits):
            v = check_decomposition(list(crits), list(targets), path, kind, limits)
            s[f"decomposition.{kind}"] = validity_doc(v)
            report.add_warnings(f"decomposition.{kind}", v.warnings)
    for label, acts, crits in (("verification", graph.verification_activities, graph.verification_criteria),
                               ("validation", graph.validation_activities, graph.validation_criteria)):
        v = check_activity_validity(list(acts), list(crits), path, limits)
        s[f"activities.{label}"] = validity_doc(v)
        report.add_warnings(f"activities.{label}", v.warnings)
    ledger = build_ledger(graph)
    s["confidence"] = confidence_doc(check_confidence_validity(graph, ledger))
    for name, fn in (("system.verified", check_system_verified), ("system.proxy_valid", check_proxy_valid)):
        v = fn(graph, ledger, tau, limits)
        s[name] = system_doc(v)
        report.add_warnings(name, v.warnings)
    s["system.goal_valid"] = system_doc(check_goal_valid(graph, limits))


def run_minimize(graph: ArtifactGraph, report: Report, limits: Limits, sets) -> None:
    path = graph.derivation
    wanted = sets or MIN_SETS
    jobs = {
        "needs": lambda: extract_minimal_set(graph.needs, graph.goals, path, "needs->goals", limits),
        "requirements": lambda: extract_minimal_set(graph.requirements, graph.needs, path,
                                                    "requirements->needs", limits),
        "vcriteria": lambda: extract_minimal_set(graph.verification_criteria, graph.requirements, path,
                                                 "vcriteria->requirements", limits),
        "ucriteria": lambda: extract_minimal_set(graph.validation_criteria, graph.needs, path,
                                                 "ucriteria->needs", limits),
        "vactivities": lambda: extract_minimal_activity_set(
            graph.verification_activities, graph.verification_criteria, path, limits),
        "uactivities": lambda: extract_minimal_activity_set(
            graph.validation_activities, graph.validation_criteria, path, limits),
    }
    for name in MIN_SETS:
        if name not in wanted:
            continue
        r = jobs[name]()
        report.sections[f"minimize.{name}"] = minimal_doc(r)
        if r.verdict is not None:
            report.add_warnings(f"minimize.{name}", r.verdict.warnings)


def run_classify(graph: ArtifactGraph, report: Report, limits: Limits) -> None:
    c = classify_vv_relationship(graph.requirements, graph.needs, graph.derivation, limits)
    serves = None
    if c.quadrant == SUFFICIENT_AND_NECESSARY and graph.verification_activities:
        serves = verification_serves_validation(graph, limits)
    report.sections["classify"] = classification_doc(c, serves)
    report.add_warnings("classify", c.warnings)


def run_frames(doc, report: Report, depth: int) -> None:
    if not isinstance(doc, dict) or not isinstance(doc.get("models"), list):
        raise ProjectError("model document needs a top-level 'models' list", "models")
    for i, lit in enumerate(doc["models"]):
        name = lit.get("id", f"model{i}") if isinstance(lit, dict) else f"model{i}"
        try:
            m = model_from_literal(lit)
        except (ModelError, AttributeError) as exc:
            raise ProjectError(f"bad model literal: {exc}", f"models[{i}]", name)
        fr = check_frames(m)
        sec = {
            "ok": fr.knowledge_ok and fr.belief_ok,
            "frames": {
                "knowledge_ok": fr.knowledge_ok,
                "belief_ok": fr.belief_ok,
                "violations": [{"relation": v.relation, "property": v.prop, "witness": list(v.witness)}
                               for v in fr.violations],
            },
            "axioms": None,
        }
        if sec["ok"]:
            atoms = lit.get("probe_atoms") or sorted(m.atoms()) or ["p"]
            ar = validate_axioms(m, atoms, depth)
            sec["axioms"] = {
                "holds": ar.holds,
                "instances_checked": ar.instances_checked,
                "counterexamples": [{"schema": c.schema, "instance": c.instance, "world": c.world}
                                    for c in ar.counterexamples],
            }
            sec["ok"] = ar.holds
        report.sections[f"frames.{name}"] = sec


def read_formula_list(text: str):
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_formula(line))
        except ParseError as exc:
            raise ProjectError(f"formula error: {exc}", f"line {lineno}")
    return out


def run_sat(text: str, report: Report, limits: Limits) -> None:
    fs = read_formula_list(text)
    r = is_satisfiable(fs, limits.max_worlds, limits.budget)
    report.sections["sat"] = sat_doc(r, completeness_bound(fs))


def execute(args) -> Report:
    path = Path(args.file)
    report = Report("epivv", __version__, args.command, path.name, "")
    start = time.perf_counter()
    limits = Limits(args.max_worlds, args.budget)
    try:
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}")
        report.digest = hashlib.sha256(raw).hexdigest()
        if args.command == "sat":
            run_sat(raw.decode("utf-8"), report, limits)
        elif args.command == "frames":
            run_frames(_read_json(path), report, args.depth)
        else:
            graph = load_project(_read_json(path))
            if args.command == "check":
                run_check(graph, report, limits, args.tau)
            elif args.command == "minimize":
                run_minimize(graph, report, limits, args.sets)
            else:
                run_classify(graph, report, limits)
    except (ProjectError, LedgerError, UsageError, UnicodeDecodeError) as exc:
        report.sections.clear()
        report.warnings.clear()
        err = {"exit": EXIT_USAGE, "kind": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ProjectError):
            err["artifact"] = exc.artifact
            err["location"] = exc.path
        report.error = err
    except BudgetExceeded as exc:
        report.sections.clear()
        report.warnings.clear()
        report.error = {"exit": EXIT_BUDGET, "kind": "BudgetExceeded", "message": str(exc)}
    report.timing = {"seconds": time.perf_counter() - start}
    return report


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = execute(args)
    render = render_machine if args.format == "machine" else render_text
    text = render(report, args.timing)
    if args.out:
        Path(args.out).write_text(text, "utf-8")
    else:
        sys.stdout.write(text)
    if report.error is not None and args.format == "text":
        print(f"epivv: {report.error['message']}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
