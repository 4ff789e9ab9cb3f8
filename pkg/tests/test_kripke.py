import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epivv.kripke import (
    EpistemicModel,
    FrameViolationError,
    ModelError,
    check_frames,
    model_from_literal,
    model_to_literal,
    probe_formulas,
    satisfies,
    validate_axioms,
)
from epivv.logic import And, Atom, Believe, Implies, Know, Not, desugar, parse_formula
from support import formula_strategy, naive_eval, random_model


def one_world(atoms=("p",)):
    return EpistemicModel(("w1",), {("w1", "w1")}, {("w1", "w1")}, {"w1": set(atoms)}, "w1")


def test_identity_frames_ok():
    r = check_frames(one_world())
    assert r.knowledge_ok and r.belief_ok and not r.violations


def test_non_serial_belief_reported():
    m = EpistemicModel(("w1", "w2"), {("w1", "w1"), ("w2", "w2")}, {("w1", "w1")}, {})
    r = check_frames(m)
    assert r.knowledge_ok and not r.belief_ok
    assert any(v.prop == "serial" and v.witness == ("w2",) for v in r.violations)


def test_missing_reflexive_loop_reported():
    m = EpistemicModel(("w1", "w2"), {("w1", "w1")}, {("w1", "w1"), ("w2", "w1")}, {})
    r = check_frames(m)
    assert not r.knowledge_ok and r.belief_ok
    assert any(v.prop == "reflexive" and v.witness == ("w2",) for v in r.violations)


def test_euclidean_and_symmetric_witnesses():
    m = EpistemicModel(("a", "b", "c"),
                       {("a", "a"), ("b", "b"), ("c", "c"), ("a", "b")},
                       {("a", "b"), ("a", "c"), ("b", "b"), ("c", "c")}, {})
    r = check_frames(m)
    props = {(v.relation, v.prop) for v in r.violations}
    assert ("rel_K", "symmetric") in props
    assert ("rel_B", "euclidean") in props


def test_satisfies_examples():
    assert satisfies(one_world(), "w1", Know(Atom("p")))
    m = EpistemicModel(("w1", "w2"), {("w1", "w1"), ("w2", "w2")},
                       {("w1", "w2"), ("w2", "w2")}, {"w1": {"p"}, "w2": set()})
    assert not satisfies(m, "w1", Believe(Atom("p")))
    with pytest.raises(ModelError):
        satisfies(m, "w9", Atom("p"))


def test_satisfies_rejects_sugar():
    with pytest.raises(Exception):
        satisfies(one_world(), "w1", Implies(Atom("p"), Atom("p")))


@settings(max_examples=200, deadline=None)
@given(formula_strategy(sugar=False, dynamic=False), st.integers(0, 2 ** 16))
def test_negation_and_naive_agreement(f, seed):
    m = random_model(random.Random(seed), ["p", "q", "r"], 3)
    for w in m.worlds:
        assert satisfies(m, w, Not(f)) == (not satisfies(m, w, f))
        assert satisfies(m, w, f) == naive_eval(m, w, f)


@settings(max_examples=150, deadline=None)
@given(formula_strategy(atoms=("p", "q")), st.integers(0, 2 ** 16))
def test_monotone_neutrality(f, seed):
    core = desugar(f)
    m = random_model(random.Random(seed), ["p", "q"], 3)
    bigger = EpistemicModel(m.worlds, m.rel_K, m.rel_B,
                            {w: m.valuation[w] | {"fresh"} for w in m.worlds}, m.designated)
    for w in m.worlds:
        assert satisfies(m, w, core) == satisfies(bigger, w, core)


def test_model_literal_round_trip():
    m = random_model(random.Random(3), ["p", "q"], 3)
    assert model_from_literal(model_to_literal(m)) == m


def test_model_literal_errors():
    with pytest.raises(ModelError):
        model_from_literal({"worlds": []})
    with pytest.raises(ModelError):
        model_from_literal({"worlds": ["a"], "rel_K": [["a", "b"]]})
    with pytest.raises(ModelError):
        model_from_literal({"worlds": ["a"], "rel_K": [["a"]]})
    with pytest.raises(ModelError):
        EpistemicModel(("a",), set(), set(), {}, "z")


def test_validate_axioms_examples():
    m = random_model(random.Random(11), ["p", "q"], 4)
    r = validate_axioms(m, ["p", "q"], 2)
    assert r.holds and r.instances_checked > 0 and not r.counterexamples


def test_validate_axioms_requires_frames():
    m = EpistemicModel(("w1", "w2"), {("w1", "w1"), ("w2", "w2")}, {("w1", "w1")}, {})
    with pytest.raises(FrameViolationError):
        validate_axioms(m, ["p"], 1)


def _explicit_instances(probes):
    for a in probes:
        yield "T", Implies(Know(a), a)
        yield "4K", Implies(Know(a), Know(Know(a)))
        yield "5K", Implies(Not(Know(a)), Know(Not(Know(a))))
        yield "D", Implies(Believe(a), Not(Believe(Not(a))))
        yield "4B", Implies(Believe(a), Believe(Believe(a)))
        yield "5B", Implies(Not(Believe(a)), Believe(Not(Believe(a))))
        for b in probes[:6]:
            for op in (Know, Believe):
                yield "K", Implies(And(op(a), op(Implies(a, b))), op(b))


def test_explicit_instances_agree_with_validator():
    rng = random.Random(5)
    probes = probe_formulas(["p", "q"], 1)
    for _ in range(15):
        m = random_model(rng, ["p", "q"], rng.randint(1, 4))
        assert validate_axioms(m, ["p", "q"], 1).holds
        for _, inst in _explicit_instances(probes):
            assert all(naive_eval(m, w, inst) for w in m.worlds)


def test_broken_belief_frame_breaks_d():
    # no successor for w1: B(p) and B(!p) both hold there
    m = EpistemicModel(("w1",), {("w1", "w1")}, set(), {})
    assert satisfies(m, "w1", desugar(parse_formula("B(p) & B(!p)")))
