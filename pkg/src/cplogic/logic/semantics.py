"""Satisfaction on epistemic models and on simplicial models.

Each evaluator computes the extension of a formula (the set of worlds or
facets where it holds) as a bitmask and memoizes it per subformula.  A box
builds the updated model once per pattern and reuses it for every
subformula under that pattern.  An evaluator is a single evaluation context:
create one per thread.
"""

from __future__ import annotations

from ..errors import SignatureMismatch, UnknownWorld
from ..model import EpistemicModel
from ..simplicial import SimplicialModel
from ..update import facet_update, update_kripke, update_simplicial, updated_world_id
from .formula import And, Atom, Box, D, Not, subformulas


def check_signature(phi, signature):
    """Raise :class:`SignatureMismatch` unless ``phi`` only uses the signature."""
    agents = set(signature.agents)
    for f in subformulas(phi):
        if isinstance(f, Atom) and f.atom not in signature.atoms:
            raise SignatureMismatch(f"atom {f.atom} is not in the model's signature")
        if isinstance(f, D) and not f.group <= agents:
            raise SignatureMismatch(f"group {sorted(f.group)} is not within the model's agents")
        if isinstance(f, Box) and tuple(f.pattern.agents) != tuple(signature.agents):
            raise SignatureMismatch("pattern agent set differs from the model's agents")


class _Evaluator:
    def __init__(self, model):
        self.model = model
        self.full = (1 << self.size) - 1
        self._ext = {}
        self._updates = {}

    def extension(self, phi) -> int:
        """Bitmask of the points where ``phi`` holds."""
        try:
            return self._ext[phi]
        except KeyError:
            pass
        if isinstance(phi, Atom):
            out = self._atom(phi.atom)
        elif isinstance(phi, Not):
            out = self.full & ~self.extension(phi.sub)
        elif isinstance(phi, And):
            out = self.extension(phi.left) & self.extension(phi.right)
        elif isinstance(phi, D):
            miss = self.full & ~self.extension(phi.sub)
            group = phi.group
            out = 0
            for i in range(self.size):
                if not self.model.group_mask(i, group) & miss:
                    out |= 1 << i
        elif isinstance(phi, Box):
            sub_eval, table = self._updated(phi.pattern)
            inner = sub_eval.extension(phi.sub)
            k = phi.pattern.position(phi.graph)
            out = 0
            for i in range(self.size):
                if inner >> table[i][k] & 1:
                    out |= 1 << i
        else:
            raise TypeError(f"not a formula: {phi!r}")
        self._ext[phi] = out
        return out

    def _updated(self, pattern):
        try:
            return self._updates[pattern]
        except KeyError:
            entry = self._updates[pattern] = self._build_update(pattern)
            return entry


class KripkeEvaluator(_Evaluator):
    def __init__(self, model: EpistemicModel):
        self.size = len(model.worlds)
        super().__init__(model)

    def _atom(self, p):
        val = self.model.valuation
        return sum(1 << i for i, w in enumerate(self.model.worlds) if p in val[w])

    def _build_update(self, pattern):
        updated = update_kripke(self.model, pattern)
        table = [
            [updated.index[updated_world_id(w, g)] for g in pattern.graphs] for w in self.model.worlds
        ]
        return KripkeEvaluator(updated), table

    def holds(self, world, phi) -> bool:
        if world not in self.model.index:
            raise UnknownWorld(f"unknown world {world!r}")
        return bool(self.extension(phi) >> self.model.index[world] & 1)

    def truth_set(self, phi) -> frozenset:
        ext = self.extension(phi)
        return frozenset(w for i, w in enumerate(self.model.worlds) if ext >> i & 1)


class SimplicialEvaluator(_Evaluator):
    def __init__(self, model: SimplicialModel):
        self.size = len(model.facets)
        super().__init__(model)

    def _atom(self, p):
        # p holds at X iff some vertex of X carries it; only the p-owner's vertex can carry it
        out = 0
        for i, f in enumerate(self.model.facets):
            if any(p in self.model.vertices[v].atoms for v in f):
                out |= 1 << i
        return out

    def _build_update(self, pattern):
        updated = update_simplicial(self.model, pattern)
        table = [
            [updated.index[facet_update(self.model, f, g)] for g in pattern.graphs]
            for f in self.model.facets
        ]
        return SimplicialEvaluator(updated), table

    def holds(self, facet, phi) -> bool:
        f = self.model.facet(facet)
        return bool(self.extension(phi) >> self.model.index[f] & 1)

    def truth_set(self, phi) -> frozenset:
        ext = self.extension(phi)
        return frozenset(f for i, f in enumerate(self.model.facets) if ext >> i & 1)


def eval_kripke(model: EpistemicModel, world, phi) -> bool:
    """``M, w |= phi``."""
    check_signature(phi, model.signature)
    return KripkeEvaluator(model).holds(world, phi)


def eval_simplicial(model: SimplicialModel, facet, phi) -> bool:
    """``C, X |= phi`` for a facet X (vertex collection or facet name)."""
    check_signature(phi, model.signature)
    return SimplicialEvaluator(model).holds(facet, phi)


def evaluator_for(model):
    if isinstance(model, EpistemicModel):
        return KripkeEvaluator(model)
    return SimplicialEvaluator(model)


def valid_on(model, phi) -> bool:
    """``phi`` holds at every point of ``model``."""
    ev = evaluator_for(model)
    return ev.extension(phi) == ev.full
