import pytest
from hypothesis import given
from hypothesis import strategies as st

from cplogic import fixtures
from cplogic.duality import to_simplicial
from cplogic.errors import SignatureMismatch, UnknownFacet, UnknownWorld
from cplogic.logic.formula import D, Iff, Implies, atom
from cplogic.logic.parser import parse_formula
from cplogic.logic.semantics import KripkeEvaluator, eval_kripke, eval_simplicial, valid_on
from cplogic.model import nonempty_groups
from cplogic.sampling import random_formula, random_model, random_pattern, random_signature

from oracles import naive_holds, naive_kripke

ENV = {"byz": fixtures.byzantine_pattern()}


def test_distributed_knowledge_needs_the_square():
    phi = parse_formula("D{a,b} p_c")
    assert not eval_kripke(fixtures.line_model(), "w", phi)
    assert eval_kripke(fixtures.square_model(), "w1", phi)


def test_same_contrast_on_complexes():
    phi = parse_formula("D{a,b} p_c")
    assert not eval_simplicial(fixtures.triangle_pair(), "X", phi)
    assert eval_simplicial(fixtures.triangle_cycle(), "X1", phi)


def test_byzantine_boxes():
    m = fixtures.byzantine_base()
    assert eval_kripke(m, "w1", parse_formula("[byz; Rab] K{b} p_a", env=ENV))
    assert eval_kripke(m, "w1", parse_formula("[byz; I] ~K{b} p_a", env=ENV))
    assert eval_kripke(m, "w1", parse_formula("[byz; Rab] ~K{a} K{b} p_a", env=ENV))
    assert not eval_kripke(m, "w1", parse_formula("K{b} p_a"))


def test_one_way_message_pins_the_receiver():
    phi = parse_formula("[{{b>c}}; {b>c}] D{c} p_b", agents="abc")
    assert eval_simplicial(fixtures.share_ac(), "X", phi)
    assert not eval_simplicial(fixtures.share_ac(), "X", parse_formula("D{c} p_b"))


def test_atoms_follow_face_valuation():
    c = fixtures.share_a()
    assert eval_simplicial(c, "X", atom("p_b"))
    assert not eval_simplicial(c, "Y", atom("p_b"))
    assert not eval_simplicial(c, "X", atom("p_a"))


def test_signature_checks():
    with pytest.raises(SignatureMismatch):
        eval_kripke(fixtures.byzantine_base(), "w1", atom("p_b"))
    with pytest.raises(SignatureMismatch):
        eval_kripke(fixtures.byzantine_base(), "w1", D({"c"}, atom("p_a")))
    with pytest.raises(SignatureMismatch):
        eval_kripke(fixtures.line_model(), "w", parse_formula("[byz; I] p_a", env=ENV))
    with pytest.raises(UnknownWorld):
        eval_kripke(fixtures.byzantine_base(), "w9", atom("p_a"))
    with pytest.raises(UnknownFacet):
        eval_simplicial(fixtures.share_a(), "Z", atom("p_b"))


def test_truth_set():
    ev = KripkeEvaluator(fixtures.anne_bill())
    assert ev.truth_set(parse_formula("K{a} p_a")) == {"u", "v"}
    assert ev.truth_set(parse_formula("D{a,b} p_b")) == {"t", "u"}


@given(st.randoms(use_true_random=False))
def test_whole_group_knowledge_is_truth(rng):
    sig = random_signature(rng)
    m = random_model(rng, sig, 5)
    phi = random_formula(rng, sig, depth=3, max_boxes=1)
    assert valid_on(m, Iff(D(sig.agents, phi), phi))
    c, _ = to_simplicial(m)
    assert valid_on(c, Iff(D(sig.agents, phi), phi))


@given(st.randoms(use_true_random=False))
def test_agrees_with_naive_evaluation(rng):
    sig = random_signature(rng)
    m = random_model(rng, sig)
    patterns = [random_pattern(rng, sig.agents) for _ in range(2)]
    phi = random_formula(rng, sig, depth=3, max_boxes=2, patterns=patterns)
    plain = naive_kripke(m)
    for w in m.worlds:
        assert eval_kripke(m, w, phi) == naive_holds(plain, w, phi)


@given(st.randoms(use_true_random=False))
def test_bigger_groups_know_more(rng):
    sig = random_signature(rng)
    m = random_model(rng, sig)
    phi = random_formula(rng, sig, depth=2, max_boxes=1)
    groups = nonempty_groups(sig.agents)
    for b in groups:
        for c in groups:
            if b <= c:
                assert valid_on(m, Implies(D(b, phi), D(c, phi)))
