"""Updating epistemic and simplicial models with a communication pattern."""

from __future__ import annotations

from .errors import AgentSetMismatch
from .model import EpistemicModel
from .pattern import CommGraph, CommPattern
from .simplicial import SimplicialModel, facet_label


def _check_agents(model, pattern):
    if tuple(pattern.agents) != tuple(model.agents):
        raise AgentSetMismatch(
            f"pattern over {list(pattern.agents)} applied to a model over {list(model.agents)}"
        )


def updated_world_id(world: str, graph: CommGraph) -> str:
    return f"({world}|{graph.label()})"


def update_kripke(model: EpistemicModel, pattern: CommPattern) -> EpistemicModel:
    """``M ⊙ U``: worlds W × U, valuation inherited from the first component.

    (w, R) and (w', R') are a-indistinguishable iff R a = R' a and w, w' are
    indistinguishable for every agent in R a.
    """
    _check_agents(model, pattern)
    worlds = []
    valuation = {}
    blocks = {a: {} for a in model.agents}
    for i, w in enumerate(model.worlds):
        for g in pattern.graphs:
            u = updated_world_id(w, g)
            worlds.append(u)
            valuation[u] = model.valuation[w]
            for a in model.agents:
                senders = tuple(sorted(g.receives(a)))
                key = (senders, tuple(model.class_id(b, i) for b in senders))
                blocks[a].setdefault(key, []).append(u)
    partitions = {a: list(blocks[a].values()) for a in model.agents}
    return EpistemicModel(model.signature, worlds, partitions, valuation)


def updated_vertex_id(vertex: str, witness) -> str:
    return f"({vertex}|{facet_label(witness)})"


def _facet_update(model: SimplicialModel, facet, graph: CommGraph):
    out = {}
    for v in facet:
        senders = graph.receives(model.colour(v))
        witness = frozenset(u for u in facet if model.colour(u) in senders)
        out[updated_vertex_id(v, witness)] = model.vertices[v]
    return out


def facet_update(model: SimplicialModel, facet, graph: CommGraph) -> frozenset:
    """``Y_R``: the facet of the updated model generated by facet Y and graph R."""
    return frozenset(_facet_update(model, model.facet(facet), graph))


def update_simplicial(model: SimplicialModel, pattern: CommPattern) -> SimplicialModel:
    """``C ⊘ U``: one facet ``Y_R`` per facet Y and graph R, merged when equal.

    Each vertex v of Y becomes ``(v, X)`` where X is the face of Y coloured by
    the senders v's agent hears from under R.
    """
    _check_agents(model, pattern)
    vertices = {}
    facets = set()
    names = {}
    reverse = {}
    for f in model.facets:
        for g in pattern.graphs:
            vs = _facet_update(model, f, g)
            vertices.update(vs)
            new = frozenset(vs)
            facets.add(new)
            reverse[(f, g)] = new
    for name, f in model.facet_names.items():
        for g in pattern.graphs:
            names[f"({name}|{g.label()})"] = reverse[(f, g)]
    return SimplicialModel(model.signature, vertices, facets, names)
