"""Translations between epistemic and simplicial models.

``to_simplicial`` turns each agent's equivalence class into a vertex and each
world into the facet of its classes.  ``to_kripke`` turns facets into worlds,
indistinguishable for ``a`` exactly when they share their ``a``-vertex.  Both
return the point map together with the model.
"""

from __future__ import annotations

from .model import EpistemicModel
from .simplicial import SimplicialModel, facet_label


def class_vertex_id(agent, block) -> str:
    return f"{agent}:" + "{" + ",".join(sorted(block)) + "}"


def to_simplicial(model: EpistemicModel):
    """Return the complex and the map ``{world: facet}``."""
    vertices = {}
    world_map = {}
    for w in model.worlds:
        facet = []
        for a in model.agents:
            block = model.agent_class(a, w)
            v = class_vertex_id(a, block)
            # locality makes this independent of the chosen representative
            vertices[v] = (a, model.local_valuation(w, a))
            facet.append(v)
        world_map[w] = frozenset(facet)
    names = {w: f for w, f in world_map.items()}
    return SimplicialModel(model.signature, vertices, set(world_map.values()), names), world_map


def to_kripke(model: SimplicialModel):
    """Return the epistemic model and the map ``{facet: world}``."""
    facet_map = {f: facet_label(f) for f in model.facets}
    if len(set(facet_map.values())) != len(facet_map):
        raise ValueError("vertex ids make facet labels ambiguous")
    partitions = {}
    for a in model.agents:
        blocks = {}
        for f in model.facets:
            blocks.setdefault(model.vertex_of(f, a), []).append(facet_map[f])
        partitions[a] = list(blocks.values())
    valuation = {}
    for f in model.facets:
        atoms = set()
        for v in f:
            atoms |= model.vertices[v].atoms
        valuation[facet_map[f]] = frozenset(atoms)
    return EpistemicModel(model.signature, list(facet_map.values()), partitions, valuation), facet_map
