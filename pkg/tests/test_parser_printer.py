import pytest
from hypothesis import given
from hypothesis import strategies as st

from cplogic import fixtures
from cplogic.errors import (
    FormulaSyntaxError,
    GraphNotInPattern,
    ParseError,
    UnknownAgent,
    UnknownAtom,
    UnknownId,
    UnknownPattern,
)
from cplogic.logic.formula import And, Box, D, Iff, Implies, Not, Or, atom
from cplogic.logic.parser import parse_formula
from cplogic.logic.printer import format_formula
from cplogic.model import LocalAtom, Signature
from cplogic.pattern import build_graph, gen_pattern
from cplogic.sampling import random_formula, random_signature

SIG = Signature.make(["a", "b", "c"], [LocalAtom("p", x) for x in "abc"])
BYZ = fixtures.byzantine_pattern()
ENV = {"byz": BYZ}
pa, pb, pc = atom("p_a"), atom("p_b"), atom("p_c")


def test_distributed_knowledge():
    assert parse_formula("D{a,b} p_c", SIG) == D({"a", "b"}, pc)
    assert parse_formula("D{b,a} p_c") == D({"a", "b"}, pc)


def test_box_with_named_pattern_and_edge_graph():
    phi = parse_formula("[byz; Rab] ~K{b} p_a", env=ENV)
    rab = build_graph(["a", "b"], [("a", "b")])
    assert phi == Box(BYZ, rab, Not(D({"b"}, pa)))


def test_graph_outside_pattern():
    with pytest.raises(GraphNotInPattern):
        parse_formula("[byz; U] p_a", env=ENV)
    with pytest.raises(GraphNotInPattern):
        Box(BYZ, build_graph(["a", "b"], [("b", "a")]), pa)


def test_pattern_and_graph_literals():
    phi = parse_formula("[{I,{a>b}}; {a>b}] p_a", agents=["a", "b"])
    assert phi.pattern == BYZ
    assert phi.graph == build_graph(["a", "b"], [("a", "b")])
    empty = parse_formula("[{{}}; {}] p_a", agents=["a", "b"])
    assert empty.graph.is_identity()


def test_graphs_by_name_from_env():
    rbc = fixtures.rbc_graph()
    phi = parse_formula("[pat; g] D{c} p_b", SIG, {"pat": fixtures.rbc_pattern(), "g": rbc})
    assert phi.graph == rbc


def test_sugar_expands_to_core_connectives():
    assert parse_formula("p_a | p_b") == Not(And(Not(pa), Not(pb)))
    assert parse_formula("p_a -> p_b") == Implies(pa, pb)
    assert parse_formula("p_a <-> p_b") == Iff(pa, pb)
    assert parse_formula("K{a} p_a") == D({"a"}, pa)


def test_precedence_and_associativity():
    assert parse_formula("~p_a & p_b") == And(Not(pa), pb)
    assert parse_formula("p_a & p_b | p_c") == Or(And(pa, pb), pc)
    assert parse_formula("p_a -> p_b -> p_c") == Implies(pa, Implies(pb, pc))
    assert parse_formula("D{a} p_a & p_b") == And(D({"a"}, pa), pb)
    assert parse_formula("p_a | p_b -> p_c") == Implies(Or(pa, pb), pc)
    assert parse_formula("(((p_a)))") == pa


@pytest.mark.parametrize(
    "text, position",
    [
        ("p_a &", 5),
        ("p_a & & p_b", 6),
        ("(p_a", 4),
        ("p_a $ p_b", 4),
        ("K{a,b} p_a", 0),
        ("pa", 0),
        ("p_a p_b", 4),
    ],
)
def test_syntax_errors_carry_positions(text, position):
    with pytest.raises(FormulaSyntaxError) as exc:
        parse_formula(text)
    assert exc.value.position == position
    assert isinstance(exc.value, ParseError)


def test_lookup_errors():
    with pytest.raises(UnknownAtom):
        parse_formula("q_a", SIG)
    with pytest.raises(UnknownAgent):
        parse_formula("p_z", SIG)
    with pytest.raises(UnknownAgent):
        parse_formula("D{z} p_a", SIG)
    with pytest.raises(UnknownPattern):
        parse_formula("[nope; I] p_a", SIG)
    with pytest.raises(UnknownId):
        parse_formula("[byz; Rzz] p_a", env=ENV)


def test_printer_examples():
    assert format_formula(parse_formula("D{b,a} p_c")) == "D{a,b} p_c"
    assert format_formula(Or(pa, Not(pb))) == "p_a | ~p_b"
    assert format_formula(Implies(pa, Implies(pb, pc))) == "p_a -> p_b -> p_c"
    nested = Implies(Implies(pa, pb), pc)
    assert format_formula(nested) == "p_a & ~p_b | p_c"
    assert parse_formula(format_formula(nested)) == nested
    assert format_formula(Not(And(pa, pb))) == "~(p_a & p_b)"
    assert format_formula(parse_formula("[byz; Rab] p_a", env=ENV), ENV) == "[byz;{a>b}] p_a"


@given(st.randoms(use_true_random=False))
def test_print_then_parse_is_identity(rng):
    sig = random_signature(rng)
    phi = random_formula(rng, sig, depth=4)
    assert parse_formula(format_formula(phi), sig) == phi


@given(st.randoms(use_true_random=False))
def test_named_patterns_round_trip(rng):
    sig = Signature.make(["a", "b"], [LocalAtom("p", "a"), LocalAtom("p", "b")])
    env = {"snap": gen_pattern("immediate_snapshot", "ab"), "byz": BYZ}
    phi = random_formula(rng, sig, depth=4, patterns=list(env.values()))
    text = format_formula(phi, env)
    assert parse_formula(text, sig, env) == phi


_atoms = st.sampled_from([pa, pb, pc])
_formulas = st.recursive(
    _atoms,
    lambda sub: st.one_of(
        sub.map(Not),
        st.tuples(sub, sub).map(lambda t: And(*t)),
        st.tuples(sub, sub).map(lambda t: Or(*t)),
        st.tuples(sub, sub).map(lambda t: Implies(*t)),
        st.tuples(sub, sub).map(lambda t: Iff(*t)),
        st.tuples(st.sets(st.sampled_from("abc"), min_size=1), sub).map(lambda t: D(*t)),
    ),
    max_leaves=8,
)


@given(_formulas)
def test_sugared_round_trip(phi):
    assert parse_formula(format_formula(phi), SIG) == phi
