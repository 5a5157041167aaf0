import pytest
from hypothesis import given
from hypothesis import strategies as st

from cplogic import fixtures
from cplogic.bisim import (
    COLLECTIVE,
    STANDARD,
    Refinement,
    bisimilar,
    collective_bisim_kripke,
    collective_bisim_simplicial,
    distinguishing_formula,
    models_bisimilar,
    point_label,
    standard_bisim_kripke,
    standard_bisim_simplicial,
)
from cplogic.errors import ArePointsBisimilar, SignatureMismatch
from cplogic.logic.formula import atom, box_count
from cplogic.logic.printer import format_formula
from cplogic.logic.semantics import eval_kripke, eval_simplicial, evaluator_for
from cplogic.sampling import (
    bisimilar_simplicial_variant,
    bisimilar_variant,
    random_formula,
    random_model,
    random_pattern,
    random_signature,
    random_simplicial,
)
from cplogic.model import build_model
from cplogic.pattern import gen_pattern
from cplogic.update import update_kripke, update_simplicial

from oracles import brute_force_largest_bisimulation, kripke_view, simplicial_view


def test_line_and_square_differ_only_collectively():
    m, mp = fixtures.line_model(), fixtures.square_model()
    assert standard_bisim_kripke(m, "w", mp, "w1").related
    result = collective_bisim_kripke(m, "w", mp, "w1")
    assert not result.related
    assert result.verdict == "not-related"
    phi = result.certificate
    assert box_count(phi) == 0
    assert eval_kripke(m, "w", phi)
    assert not eval_kripke(mp, "w1", phi)
    assert format_formula(phi) == "~D{a,b} p_c"


def test_triangles_differ_only_collectively():
    c, cp = fixtures.triangle_pair(), fixtures.triangle_cycle()
    assert standard_bisim_simplicial(c, "X", cp, "X1").related
    result = collective_bisim_simplicial(c, "X", cp, "X1")
    assert not result.related
    assert eval_simplicial(c, "X", result.certificate)
    assert not eval_simplicial(cp, "X1", result.certificate)


def test_witness_relation_is_the_largest_bisimulation():
    m, mp = fixtures.line_model(), fixtures.square_model()
    result = standard_bisim_kripke(m, "w", mp, "w1")
    assert ("w", "w1") in result.relation
    assert result.relation == brute_force_largest_bisimulation(m, mp, kripke_view, collective=False)


def test_self_comparison_and_errors():
    m = fixtures.anne_bill()
    for w in m.worlds:
        assert bisimilar(m, w, m, w)
        with pytest.raises(ArePointsBisimilar):
            distinguishing_formula(m, w, m, w)
    with pytest.raises(SignatureMismatch):
        Refinement(m, fixtures.line_model())
    with pytest.raises(TypeError):
        Refinement(m, fixtures.share_a())
    with pytest.raises(ValueError):
        Refinement(m, m, "sideways")


def test_distinguishing_formula_separates_different_atoms():
    m = fixtures.anne_bill()
    phi = distinguishing_formula(m, "u", m, "s")
    assert eval_kripke(m, "u", phi) and not eval_kripke(m, "s", phi)


def test_flipped_atom_is_the_certificate():
    base = fixtures.byzantine_base()
    flipped = build_model(["a", "b"], {"a": ["p"]}, ["w1", "w2"], {"b": [["w1", "w2"]]}, {"w2": ["p_a"]})
    result = standard_bisim_kripke(base, "w1", flipped, "w1")
    assert not result.related
    assert result.certificate == atom("p_a")


def test_silent_update_relates_each_world_to_its_copy():
    m = fixtures.anne_bill()
    silent = update_kripke(m, gen_pattern("silent", m.agents))
    for w in m.worlds:
        assert collective_bisim_kripke(m, w, silent, f"({w}|I)").related


def test_point_labels():
    assert point_label("w1") == "w1"
    assert point_label(frozenset({"y", "x"})) == "{x,y}"


@given(st.randoms(use_true_random=False))
def test_kripke_refinement_matches_brute_force(rng):
    sig = random_signature(rng, max_agents=2)
    left, right = random_model(rng, sig, 3), random_model(rng, sig, 3)
    for kind in (COLLECTIVE, STANDARD):
        got = Refinement(left, right, kind).pairs()
        assert got == brute_force_largest_bisimulation(left, right, kripke_view, kind == COLLECTIVE)


@given(st.randoms(use_true_random=False))
def test_simplicial_refinement_matches_brute_force(rng):
    sig = random_signature(rng, max_agents=2)
    left, right = random_simplicial(rng, sig, 3, 2), random_simplicial(rng, sig, 3, 2)
    for kind in (COLLECTIVE, STANDARD):
        got = Refinement(left, right, kind).pairs()
        assert got == brute_force_largest_bisimulation(left, right, simplicial_view, kind == COLLECTIVE)


@given(st.randoms(use_true_random=False))
def test_collective_implies_standard(rng):
    sig = random_signature(rng)
    left, right = random_model(rng, sig), random_model(rng, sig)
    assert Refinement(left, right, COLLECTIVE).pairs() <= Refinement(left, right, STANDARD).pairs()


@given(st.randoms(use_true_random=False))
def test_non_bisimilar_points_get_checked_formulas(rng):
    sig = random_signature(rng)
    left, right = random_model(rng, sig), random_model(rng, sig)
    ref = Refinement(left, right)
    le, re_ = evaluator_for(left), evaluator_for(right)
    for i, w in enumerate(left.worlds):
        for j, v in enumerate(right.worlds):
            if ref.related_index(i, j):
                continue
            phi = ref.distinguishing(i, j)
            assert le.extension(phi) >> i & 1
            assert not re_.extension(phi) >> j & 1


@given(st.randoms(use_true_random=False))
def test_bisimilar_points_agree_on_formulas(rng):
    sig = random_signature(rng)
    m = random_model(rng, sig)
    variant, world_map = bisimilar_variant(rng, m)
    assert models_bisimilar(m, variant)
    phi = random_formula(rng, sig, depth=3, max_boxes=2)
    for w in m.worlds:
        assert bisimilar(m, w, variant, world_map[w])
        assert eval_kripke(m, w, phi) == eval_kripke(variant, world_map[w], phi)


@given(st.randoms(use_true_random=False))
def test_updates_preserve_bisimilarity(rng):
    sig = random_signature(rng)
    m = random_model(rng, sig)
    variant, world_map = bisimilar_variant(rng, m)
    u = random_pattern(rng, sig.agents)
    left, right = update_kripke(m, u), update_kripke(variant, u)
    ref = Refinement(left, right)
    for w in m.worlds:
        for g in u:
            label = g.label()
            assert ref.related(f"({w}|{label})", f"({world_map[w]}|{label})")


@given(st.randoms(use_true_random=False))
def test_simplicial_updates_preserve_bisimilarity(rng):
    sig = random_signature(rng)
    c = random_simplicial(rng, sig)
    variant, facet_map = bisimilar_simplicial_variant(rng, c)
    assert models_bisimilar(c, variant)
    u = random_pattern(rng, sig.agents)
    assert models_bisimilar(update_simplicial(c, u), update_simplicial(variant, u))
