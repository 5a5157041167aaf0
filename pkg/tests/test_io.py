import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cplogic import fixtures, io
from cplogic.errors import NotReflexive, ParseError, ValidationError
from cplogic.pattern import gen_pattern
from cplogic.sampling import random_model, random_pattern, random_signature, random_simplicial


@pytest.mark.parametrize("name", sorted(fixtures.KRIPKE_FIXTURES))
def test_kripke_fixtures_round_trip(name):
    m = fixtures.KRIPKE_FIXTURES[name]()
    text = io.dumps(io.model_to_json(m))
    assert io.structure_from_json(json.loads(text)) == m


@pytest.mark.parametrize("name", sorted(fixtures.SIMPLICIAL_FIXTURES))
def test_simplicial_fixtures_round_trip(name):
    c = fixtures.SIMPLICIAL_FIXTURES[name]()
    back = io.structure_from_json(json.loads(io.dumps(io.simplicial_to_json(c))))
    assert back == c
    assert back.facet_names == c.facet_names


@given(st.randoms(use_true_random=False))
def test_random_structures_round_trip(rng):
    sig = random_signature(rng)
    m, c = random_model(rng, sig), random_simplicial(rng, sig)
    assert io.model_from_json(json.loads(io.dumps(io.model_to_json(m)))) == m
    assert io.simplicial_from_json(json.loads(io.dumps(io.simplicial_to_json(c)))) == c
    p = random_pattern(rng, sig.agents)
    assert io.pattern_from_json(json.loads(io.dumps(io.pattern_to_json(p)))) == p


def test_pattern_generator_form():
    data = {"agents": ["a", "b", "c"], "gen": "gossip", "params": {"mode": "push", "timing": "async"}}
    assert io.pattern_from_json(data) == gen_pattern("gossip", "abc", {"mode": "push", "timing": "async"})


def test_explicit_graphs_must_list_loops():
    with pytest.raises(NotReflexive):
        io.pattern_from_json({"agents": ["a", "b"], "graphs": [[["a", "b"]]]})
    with pytest.raises(ValidationError):
        io.pattern_from_json({"agents": ["a"], "graphs": [[["a"]]]})
    with pytest.raises(ValidationError):
        io.pattern_from_json({"agents": ["a"]})


def test_embedded_patterns():
    byz = fixtures.byzantine_pattern()
    data = io.model_to_json(fixtures.byzantine_base(), {"byz": byz})
    assert io.embedded_patterns(data) == {"byz": byz}
    assert io.model_from_json(data) == fixtures.byzantine_base()


def test_kind_detection():
    assert io.detect_kind({"relations": {}}) == io.KRIPKE
    assert io.detect_kind({"facets": []}) == io.SIMPLICIAL
    with pytest.raises(ValidationError):
        io.detect_kind({"worlds": []})
    with pytest.raises(ValidationError):
        io.model_from_json({"agents": ["a"]})


def test_files(tmp_path):
    path = tmp_path / "m.json"
    io.save(path, io.model_to_json(fixtures.anne_bill()))
    assert io.load_structure(path) == fixtures.anne_bill()
    assert path.read_text() == io.dumps(io.model_to_json(fixtures.anne_bill()))
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(ParseError):
        io.read_json(bad)
    with pytest.raises(ParseError):
        io.read_json(tmp_path / "missing.json")
