"""Random structures and formulas for property tests and the falsifier.

Every generator takes a :class:`random.Random` so runs are reproducible from
a seed.  Random models are local by construction: each agent's atoms are
valued per equivalence class, not per world.
"""

from __future__ import annotations

import random

from .logic.formula import And, Atom, Box, D, Not
from .model import EpistemicModel, LocalAtom, Signature
from .pattern import CommPattern, build_graph
from .simplicial import SimplicialModel

AGENT_NAMES = ("a", "b", "c", "d", "e", "f")


def random_signature(rng: random.Random, max_agents=3, atoms_per_agent=1, min_agents=1) -> Signature:
    n = rng.randint(min_agents, max_agents)
    agents = AGENT_NAMES[:n]
    names = ["p", "q", "r"][:atoms_per_agent]
    return Signature.make(agents, [LocalAtom(p, a) for a in agents for p in names])


def random_blocks(rng: random.Random, n: int) -> list:
    """A random set partition of range(n), as a block label per element."""
    labels = []
    used = 0
    for _ in range(n):
        k = rng.randint(0, used)
        labels.append(k)
        used = max(used, k + 1)
    return labels


def _subset(rng, items):
    return frozenset(x for x in sorted(items) if rng.random() < 0.5)


def random_model(rng: random.Random, signature: Signature, max_worlds=4, min_worlds=1) -> EpistemicModel:
    n = rng.randint(min_worlds, max_worlds)
    worlds = [f"w{i + 1}" for i in range(n)]
    partitions = {}
    valuation = {w: set() for w in worlds}
    for a in signature.agents:
        labels = random_blocks(rng, n)
        own = signature.atoms_of(a)
        block_val = {k: _subset(rng, own) for k in set(labels)}
        blocks = {}
        for w, k in zip(worlds, labels):
            blocks.setdefault(k, []).append(w)
            valuation[w] |= block_val[k]
        partitions[a] = list(blocks.values())
    return EpistemicModel(signature, worlds, partitions, valuation)


def random_simplicial(rng: random.Random, signature: Signature, max_facets=4, max_vertices=3) -> SimplicialModel:
    """Facets pick one vertex per colour from a small random vertex pool."""
    pool = {}
    for a in signature.agents:
        own = signature.atoms_of(a)
        for k in range(rng.randint(1, max_vertices)):
            pool.setdefault(a, []).append((f"{a}{k}", (a, _subset(rng, own))))
    facets = set()
    for _ in range(rng.randint(1, max_facets)):
        facets.add(frozenset(rng.choice(pool[a])[0] for a in signature.agents))
    used = set().union(*facets)
    vertices = {v: spec for a in signature.agents for v, spec in pool[a] if v in used}
    return SimplicialModel(signature, vertices, facets)


def random_graph(rng: random.Random, agents, density=0.4):
    agents = tuple(sorted(agents))
    pairs = [(a, b) for a in agents for b in agents if a != b and rng.random() < density]
    return build_graph(agents, pairs)


def random_pattern(rng: random.Random, agents, max_graphs=3) -> CommPattern:
    agents = tuple(sorted(agents))
    graphs = {random_graph(rng, agents, rng.choice((0.2, 0.5, 0.8))) for _ in range(rng.randint(1, max_graphs))}
    return CommPattern(agents, frozenset(graphs))


def random_group(rng: random.Random, agents) -> frozenset:
    agents = sorted(agents)
    while True:
        g = frozenset(a for a in agents if rng.random() < 0.5)
        if g:
            return g


def random_formula(rng: random.Random, signature: Signature, depth=3, max_boxes=2, patterns=None):
    """A random formula; ``max_boxes`` bounds box nesting on every branch.

    Boxes use ``patterns`` if given, otherwise fresh random patterns.
    """
    atoms = sorted(signature.atoms)
    agents = signature.agents

    def gen(d, boxes):
        if d == 0 or rng.random() < 0.2:
            return Atom(rng.choice(atoms))
        roll = rng.random()
        if roll < 0.2:
            return Not(gen(d - 1, boxes))
        if roll < 0.45:
            return And(gen(d - 1, boxes), gen(d - 1, boxes))
        if roll < 0.75 or boxes == 0:
            return D(random_group(rng, agents), gen(d - 1, boxes))
        pat = rng.choice(patterns) if patterns else random_pattern(rng, agents)
        return Box(pat, rng.choice(pat.graphs), gen(d - 1, boxes - 1))

    if not atoms:
        raise ValueError("signature has no atoms to build formulas from")
    return gen(depth, max_boxes)


# -- bisimilar variants --------------------------------------------------------


def bisimilar_variant(rng: random.Random, model: EpistemicModel) -> tuple:
    """A collectively bisimilar copy and the world map from the original.

    The model is joined with a renamed copy of itself; then, for random agents,
    a class is merged with its copy's class.  Every group class of the result
    is a union of a class and (possibly) its copy, so ``w`` and both of its
    images are related.  World ids are shuffled.
    """
    worlds = model.worlds
    tag = {w: (w, 0) for w in worlds}
    twin = {w: (w, 1) for w in worlds}
    parts = {}
    for a in model.agents:
        blocks = []
        for block in model.partitions[a]:
            left = [tag[w] for w in block]
            right = [twin[w] for w in block]
            if rng.random() < 0.5:
                blocks.append(left + right)
            else:
                blocks.extend([left, right])
        parts[a] = blocks
    every = [tag[w] for w in worlds] + [twin[w] for w in worlds]
    names = [f"x{i}" for i in range(len(every))]
    rng.shuffle(names)
    rename = dict(zip(every, names))
    val = {rename[x]: model.valuation[x[0]] for x in every}
    parts = {a: [[rename[x] for x in b] for b in blocks] for a, blocks in parts.items()}
    out = EpistemicModel(model.signature, names, parts, val)
    return out, {w: rename[tag[w]] for w in worlds}


def bisimilar_simplicial_variant(rng: random.Random, model: SimplicialModel) -> tuple:
    """Simplicial counterpart: join with a copy, glue random vertices to their copies."""
    glued = {v for v in model.vertices if rng.random() < 0.5}
    names = {}
    verts = {}
    fresh = [f"y{i}" for i in range(2 * len(model.vertices))]
    rng.shuffle(fresh)
    k = 0
    for v in sorted(model.vertices):
        for side in (0, 1):
            if side == 1 and v in glued:
                names[(v, 1)] = names[(v, 0)]
                continue
            names[(v, side)] = fresh[k]
            verts[fresh[k]] = tuple(model.vertices[v])
            k += 1
    facets = {frozenset(names[(v, side)] for v in f) for f in model.facets for side in (0, 1)}
    out = SimplicialModel(model.signature, verts, facets)
    return out, {f: frozenset(names[(v, 0)] for v in f) for f in model.facets}
