import copy
import json
import random
from types import SimpleNamespace

import pytest

from epivv.artifacts import (
    ConflictingEvidenceError,
    EvidenceLedger,
    ProjectError,
    UnknownStateError,
    apply_activity,
    build_ledger,
    evidence_axioms,
    load_project,
    load_project_file,
    load_schema,
    replay,
    value_label,
    well_formed,
)
from epivv.engine import entails, is_satisfiable
from epivv.logic import Atom, Believe, Know, Not, parse_formula
from support import activity, project, state


def graph_with(states, observed=()):
    doc = project(vactivities=[activity("v1", states, observed)])
    return load_project(doc)


def test_minimal_project():
    doc = project(requirements=(), vcriteria=[], vactivities=[], ucriteria=[], uactivities=[],
                  axioms=["B(n1) <-> B(g1)"])
    g = load_project(doc)
    assert len(g.goals) == 1 and len(g.needs) == 1
    assert g.threshold == 1.0


def test_threshold_is_read():
    assert load_project(project(threshold=0.7)).threshold == 0.7


def test_parse_error_names_artifact():
    doc = project()
    doc["needs"][0]["formula"] = "B(p"
    with pytest.raises(ProjectError) as info:
        load_project(doc)
    assert info.value.artifact == "n1"
    assert info.value.path == "needs[0].formula"


def test_confidence_sum_error():
    doc = project(vactivities=[activity("v1", [state("e1", "phi_r1", confidence=(0.6, 0.5))])])
    with pytest.raises(ProjectError, match=r"x_i \+ y_i = 1") as info:
        load_project(doc)
    assert info.value.artifact == "v1"


@pytest.mark.parametrize("mutate,fragment", [
    (lambda d: d.pop("system"), "required"),
    (lambda d: d.__setitem__("extra", 1), "Additional properties"),
    (lambda d: d["needs"].append(copy.deepcopy(d["needs"][0])), "duplicate need"),
    (lambda d: d["verification_criteria"][0].__setitem__("targets", ["r9"]), "unknown requirement"),
    (lambda d: d["verification_criteria"][0].__setitem__("targets", []), "schema error"),
    (lambda d: d["stakeholders"][0].__setitem__("goals", ["g9"]), "unknown goal"),
    (lambda d: d["outcomes"][0].__setitem__("satisfies", ["g9"]), "unknown goal"),
    (lambda d: d["needs"][0].__setitem__("formula", "[v]n1"), "dynamic"),
    (lambda d: d.__setitem__("threshold", 1.5), "schema error"),
    (lambda d: d["requirements"][0].__setitem__("parent", "r1"), "own parent"),
    (lambda d: d["verification_activities"][0].__setitem__("observed", ["nope"]), "not declared"),
    (lambda d: d["verification_activities"][0]["evidence"]["states"][0].__setitem__("relation", "maybe"),
     "schema error"),
])
def test_load_errors(mutate, fragment):
    doc = project()
    mutate(doc)
    with pytest.raises(ProjectError, match=fragment):
        load_project(doc)


def test_parent_cycle_rejected():
    doc = project(requirements=("r1", "r2"))
    doc["requirements"][0]["parent"] = "r2"
    doc["requirements"][1]["parent"] = "r1"
    with pytest.raises(ProjectError, match="cycle"):
        load_project(doc)


def test_schema_error_reports_artifact():
    doc = project()
    doc["needs"][0]["formula"] = 5
    with pytest.raises(ProjectError) as info:
        load_project(doc)
    assert info.value.artifact == "n1"


def test_schema_document_ships():
    schema = load_schema()
    assert schema["additionalProperties"] is False
    assert "threshold" in schema["properties"]


def test_load_project_file(tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps(project()))
    assert load_project_file(p).needs[0].id == "n1"
    p.write_text("{")
    with pytest.raises(ProjectError, match="invalid JSON"):
        load_project_file(p)


def test_value_labels():
    assert value_label(1.0) == "1"
    assert value_label(0.5) == "0_5"
    assert value_label("pass") == "pass"
    assert value_label(True) == "true"


# -- well-formedness ---------------------------------------------------------


def item(i, text):
    return SimpleNamespace(id=i, text=text, formula=None)


def test_well_formed_examples():
    assert well_formed([item("n1", "n1")], "needs").verified
    r = well_formed([item("n1", "n1 & n2")], "needs")
    assert not r.verified and not r.items[0].atomic and r.items[0].wff
    r = well_formed([item("r1", "p & !p")], "requirements")
    assert not r.verified and not r.items[0].consistent
    r = well_formed([item("r1", "B(p")], "requirements")
    assert not r.items[0].wff


def test_well_formed_on_loaded_graph():
    g = load_project(project(needs=("n1", "n2"), requirements=("r1",)))
    assert well_formed(g.needs, "needs").verified
    assert well_formed(g.requirements, "requirements").verified


# -- ledger -------------------------------------------------------------------


def test_apply_positive_observation():
    g = graph_with([state("e1", "phi_r1")])
    led = apply_activity(EvidenceLedger(), g.verification_activities[0], "e1")
    assert Know(Atom("e1")) in led.known_formulas()
    assert Believe(Atom("val__phi_r1__pass")) in led.believed_formulas()
    assert led.occurred == ("ev_v1",)


def test_apply_negated_observation():
    g = graph_with([state("e1", "phi_r1", relation="implication", confidence=(0.8, 0.2))])
    led = apply_activity(EvidenceLedger(), g.verification_activities[0], "!e1")
    assert Know(Not(Atom("e1"))) in led.known_formulas()
    assert Believe(Not(Atom("val__phi_r1__pass"))) in led.believed_formulas()


def test_contradiction_relation_belief():
    g = graph_with([state("e1", "phi_r1", relation="contradiction", confidence=(0.0, 1.0))])
    led = apply_activity(EvidenceLedger(), g.verification_activities[0], "e1")
    assert led.believed_formulas() == {Believe(Not(Atom("val__phi_r1__pass")))}


def test_conflicting_observation():
    g = graph_with([state("e1", "phi_r1")])
    a = g.verification_activities[0]
    led = apply_activity(EvidenceLedger(), a, "!e1")
    with pytest.raises(ConflictingEvidenceError):
        apply_activity(led, a, "e1")


def test_unknown_state():
    g = graph_with([state("e1", "phi_r1")])
    with pytest.raises(UnknownStateError):
        apply_activity(EvidenceLedger(), g.verification_activities[0], "e9")


def test_ledger_is_monotone_and_functional():
    g = load_project(project(requirements=("r1", "r2", "r3")))
    led = EvidenceLedger()
    for a in g.verification_activities:
        nxt = apply_activity(led, a, a.observed[0])
        assert led.known_formulas() <= nxt.known_formulas()
        assert led.believed_formulas() <= nxt.believed_formulas()
        led = nxt
    assert len(led.known) == 3


def test_reapplying_is_idempotent():
    g = graph_with([state("e1", "phi_r1")])
    a = g.verification_activities[0]
    once = apply_activity(EvidenceLedger(), a, "e1")
    assert apply_activity(once, a, "e1").facts() == once.facts()


def test_order_independence_for_independent_claims():
    rng = random.Random(4)
    for trial in range(20):
        n = rng.randint(2, 4)
        reqs = [f"r{i}" for i in range(n)]
        g = load_project(project(requirements=reqs))
        acts = list(g.verification_activities)
        a, b = rng.sample(acts, 2)
        ca, cb = (Believe(g.criterion(x.evidence.states[0].criterion).formula) for x in (a, b))
        for x, y in ((ca, cb), (cb, ca), (ca, Not(cb)), (Not(ca), cb)):
            assert not entails([x], y).holds
        ab = apply_activity(apply_activity(EvidenceLedger(), a, a.observed[0]), b, b.observed[0])
        ba = apply_activity(apply_activity(EvidenceLedger(), b, b.observed[0]), a, a.observed[0])
        assert ab.facts() == ba.facts()


def test_provenance_replays():
    g = load_project(project(requirements=("r1", "r2")))
    led = build_ledger(g)
    assert led.believed
    for entry in led.believed:
        assert entry.known in led.known_formulas()
        assert replay(entry)


def test_evidence_axioms_are_consistent_with_observations():
    g = graph_with([state("e1", "phi_r1"), state("e2", "phi_r1", value="fail")], ["e1"])
    ax = evidence_axioms(g.verification_activities, g)
    assert is_satisfiable(ax + [Know(Atom("e1"))]).satisfiable
    # two exclusive values cannot both be believed
    assert not is_satisfiable(ax + [Know(Atom("e1")), Know(Atom("e2"))]).satisfiable
    # belief in the pass value is linked to belief in the criterion
    assert entails([Know(Atom("e1"))], parse_formula("B(phi_r1)"), ax).holds
