"""Bounded search for validity counterexamples.

The search first walks every local model with at most three worlds, two
agents and the formula's atoms (one model per isomorphism class), then
samples random models up to the caller's bounds.  Finding nothing proves
nothing beyond those bounds.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Optional

from ..errors import BoundsError
from ..model import EpistemicModel, Signature
from ..sampling import AGENT_NAMES, random_model, random_simplicial
from ..simplicial import SimplicialModel
from .formula import agents_of, atoms_of, patterns_of
from .semantics import evaluator_for

KRIPKE = "kripke"
SIMPLICIAL = "simplicial"

EXHAUSTIVE_WORLDS = 3
EXHAUSTIVE_AGENTS = 2


@dataclass(frozen=True)
class Bounds:
    max_worlds: int = 3
    max_agents: int = 2
    atoms_per_agent: int = 1
    trials: int = 0

    def check(self):
        if self.max_worlds < 1 or self.max_agents < 1:
            raise BoundsError("bounds need at least one world and one agent")
        if self.atoms_per_agent < 0 or self.trials < 0:
            raise BoundsError("atom and trial bounds must be nonnegative")


@dataclass(frozen=True)
class Counterexample:
    model: Any
    point: Any
    semantics: str
    exhaustive: bool


# -- enumeration ---------------------------------------------------------------


def set_partitions(n: int):
    """Restricted growth strings of length n (one per set partition)."""

    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for k in range(top + 2):
            yield from rec(prefix + [k], max(top, k))

    if n == 0:
        yield ()
        return
    yield from rec([0], 0)


def _normal(labels):
    seen = {}
    return tuple(seen.setdefault(k, len(seen)) for k in labels)


def _agent_options(n, own):
    """(block labels, block valuation) pairs for one agent over n points."""
    own = sorted(own)
    subsets = [frozenset(c) for r in range(len(own) + 1) for c in itertools.combinations(own, r)]
    for labels in set_partitions(n):
        blocks = max(labels) + 1
        for vals in itertools.product(subsets, repeat=blocks):
            yield labels, vals


def _canonical(n, shape):
    """Least relabelling of a (labels, values) tuple over all point orders."""
    best = None
    for perm in itertools.permutations(range(n)):
        key = []
        for labels, vals in shape:
            moved = [labels[p] for p in perm]
            key.append((_normal(moved), tuple(tuple(sorted(vals[k])) for k in moved)))
        key = tuple(key)
        if best is None or key < best:
            best = key
    return best


def _shapes(signature: Signature, max_points: int):
    """Yield (n, shape) for every local structure up to isomorphism."""
    per_agent = [signature.atoms_of(a) for a in signature.agents]
    for n in range(1, max_points + 1):
        seen = set()
        options = [list(_agent_options(n, own)) for own in per_agent]
        for shape in itertools.product(*options):
            key = _canonical(n, shape)
            if key in seen:
                continue
            seen.add(key)
            yield n, shape


def _point_atoms(shape, i):
    out = frozenset()
    for labels, vals in shape:
        out |= vals[labels[i]]
    return out


def enumerate_models(signature: Signature, max_worlds=EXHAUSTIVE_WORLDS):
    """Every local epistemic model with at most ``max_worlds`` worlds, up to isomorphism."""
    for n, shape in _shapes(signature, max_worlds):
        worlds = [f"w{i + 1}" for i in range(n)]
        parts = {}
        for a, (labels, _) in zip(signature.agents, shape):
            blocks = {}
            for w, k in zip(worlds, labels):
                blocks.setdefault(k, []).append(w)
            parts[a] = list(blocks.values())
        val = {w: _point_atoms(shape, i) for i, w in enumerate(worlds)}
        yield EpistemicModel(signature, worlds, parts, val)


def enumerate_simplicial(signature: Signature, max_facets=EXHAUSTIVE_WORLDS):
    """Every simplicial model with at most ``max_facets`` facets, up to isomorphism.

    An agent's block labels say which facets share that agent's vertex.
    """
    for n, shape in _shapes(signature, max_facets):
        vertices = {}
        facets = set()
        for i in range(n):
            facet = []
            for a, (labels, vals) in zip(signature.agents, shape):
                v = f"{a}{labels[i]}"
                vertices[v] = (a, vals[labels[i]])
                facet.append(v)
            facets.add(frozenset(facet))
        # identical facets collapse; such shapes duplicate a smaller one
        if len(facets) == n:
            yield SimplicialModel(signature, vertices, facets)


# -- search --------------------------------------------------------------------


def formula_signature(phi, max_agents, atoms_per_agent, extra_agents=0) -> Signature:
    """The formula's own signature, padded with ``extra_agents`` fresh agents."""
    pats = patterns_of(phi)
    if pats:
        agent_sets = {p.agents for p in pats}
        if len(agent_sets) > 1:
            raise BoundsError("the formula mixes patterns over different agent sets")
        agents = list(agent_sets.pop())
        if extra_agents:
            return None
    else:
        agents = sorted(agents_of(phi)) or [AGENT_NAMES[0]]
        fresh = [a for a in AGENT_NAMES if a not in agents]
        agents += fresh[:extra_agents]
    if not set(agents_of(phi)) <= set(agents):
        raise BoundsError("the formula mentions agents outside its patterns' agent set")
    if len(agents) > max_agents:
        return None
    atoms = atoms_of(phi)
    for a in agents:
        if sum(1 for p in atoms if p.owner == a) > atoms_per_agent:
            raise BoundsError(f"formula has more than {atoms_per_agent} atom(s) for agent {a}")
    return Signature.make(agents, atoms)


def _signatures(phi, max_agents, atoms_per_agent):
    needed = formula_signature(phi, 10**6, atoms_per_agent)
    if len(needed.agents) > max_agents:
        raise BoundsError(f"formula needs {len(needed.agents)} agents; bound is {max_agents}")
    out = []
    for extra in range(0, max_agents + 1):
        sig = formula_signature(phi, max_agents, atoms_per_agent, extra)
        if sig is None:
            break
        out.append(sig)
    return out


def _first_failure(model, phi):
    ev = evaluator_for(model)
    bad = ev.full & ~ev.extension(phi)
    if not bad:
        return None
    i = (bad & -bad).bit_length() - 1
    if isinstance(model, EpistemicModel):
        return model.worlds[i]
    return model.facets[i]


def search_counterexample(
    phi, bounds: Bounds = Bounds(), seed: int = 0, semantics: str = KRIPKE
) -> Optional[Counterexample]:
    """A pointed model falsifying ``phi``, or None if the bounded search finds none."""
    bounds.check()
    if semantics not in (KRIPKE, SIMPLICIAL):
        raise ValueError(f"unknown semantics {semantics!r}")
    sigs = _signatures(phi, bounds.max_agents, bounds.atoms_per_agent)
    enum = enumerate_models if semantics == KRIPKE else enumerate_simplicial
    core_agents = min(bounds.max_agents, EXHAUSTIVE_AGENTS)
    for sig in sigs:
        if len(sig.agents) > core_agents:
            continue
        for model in enum(sig, min(bounds.max_worlds, EXHAUSTIVE_WORLDS)):
            point = _first_failure(model, phi)
            if point is not None:
                return Counterexample(model, point, semantics, True)
    rng = random.Random(seed)
    for _ in range(bounds.trials):
        sig = rng.choice(sigs)
        if semantics == KRIPKE:
            model = random_model(rng, sig, bounds.max_worlds)
        else:
            model = random_simplicial(rng, sig, bounds.max_worlds)
        point = _first_failure(model, phi)
        if point is not None:
            return Counterexample(model, point, semantics, False)
    return None
