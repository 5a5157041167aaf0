"""Collective and standard bisimulation by partition-style refinement.

The checker starts from all pairs of points that agree on atoms and deletes,
stage by stage, every pair that violates forth or back for some group.  The
surviving relation is the largest bisimulation.  Each deleted pair remembers
why it was deleted; that record is turned into a distinguishing formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .errors import ArePointsBisimilar, SignatureMismatch
from .logic.formula import Atom, D, Dhat, Not, conj, disj
from .logic.semantics import evaluator_for
from .model import EpistemicModel, nonempty_groups
from .simplicial import SimplicialModel, facet_label

COLLECTIVE = "collective"
STANDARD = "standard"


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class _View:
    """Points, per-point atoms and group neighbourhoods of either structure."""

    def __init__(self, model):
        self.model = model
        if isinstance(model, EpistemicModel):
            self.points = model.worlds
            self.val = [model.valuation[w] for w in model.worlds]
            self.index = model.index
        elif isinstance(model, SimplicialModel):
            self.points = model.facets
            self.val = [frozenset().union(*(model.vertices[v].atoms for v in f)) for f in model.facets]
            self.index = model.index
        else:
            raise TypeError(f"not a model: {model!r}")

    def locate(self, point):
        if isinstance(self.model, SimplicialModel):
            return self.index[self.model.facet(point)]
        self.model._check_world(point)
        return self.index[point]


class Refinement:
    """Largest bisimulation between two models, with deletion reasons."""

    def __init__(self, left, right, kind=COLLECTIVE):
        if type(left) is not type(right):
            raise TypeError("compare models of the same kind; translate first")
        if left.signature != right.signature:
            raise SignatureMismatch("models have different signatures")
        if kind not in (COLLECTIVE, STANDARD):
            raise ValueError(f"unknown bisimulation kind {kind!r}")
        self.kind = kind
        self.left, self.right = _View(left), _View(right)
        agents = left.agents
        self.groups = nonempty_groups(agents) if kind == COLLECTIVE else [frozenset([a]) for a in agents]
        self.reason = {}
        self.stages = 0
        self._run()

    def _run(self):
        L, R = self.left, self.right
        nl, nr = len(L.points), len(R.points)
        rel = [0] * nl
        for i in range(nl):
            for j in range(nr):
                if L.val[i] == R.val[j]:
                    rel[i] |= 1 << j
                else:
                    self.reason[(i, j)] = (0, "atoms", None, None)
        lm, rm = L.model, R.model
        stage = 0
        while True:
            stage += 1
            relT = [0] * nr
            for i in range(nl):
                for j in _bits(rel[i]):
                    relT[j] |= 1 << i
            doomed = []
            for i in range(nl):
                for j in _bits(rel[i]):
                    why = self._violation(i, j, rel, relT, lm, rm)
                    if why is not None:
                        doomed.append((i, j))
                        self.reason[(i, j)] = (stage,) + why
            if not doomed:
                break
            for i, j in doomed:
                rel[i] &= ~(1 << j)
        self.stages = stage - 1
        self.rel = rel

    def _violation(self, i, j, rel, relT, lm, rm):
        for group in self.groups:
            ml, mr = lm.group_mask(i, group), rm.group_mask(j, group)
            for v in _bits(ml):
                if not rel[v] & mr:
                    return ("forth", group, v)
            for v in _bits(mr):
                if not relT[v] & ml:
                    return ("back", group, v)
        return None

    def related_index(self, i, j) -> bool:
        return bool(self.rel[i] >> j & 1)

    def related(self, left_point, right_point) -> bool:
        return self.related_index(self.left.locate(left_point), self.right.locate(right_point))

    def pairs(self) -> frozenset:
        return frozenset(
            (self.left.points[i], self.right.points[j]) for i in range(len(self.rel)) for j in _bits(self.rel[i])
        )

    def is_total(self) -> bool:
        """Every point on either side is related to some point on the other."""
        right = 0
        for row in self.rel:
            if not row:
                return False
            right |= row
        return right == (1 << len(self.right.points)) - 1

    def index_pairs(self) -> frozenset:
        return frozenset((i, j) for i in range(len(self.rel)) for j in _bits(self.rel[i]))

    # -- distinguishing formulas ------------------------------------------
    def certified_formula(self, i, j):
        """:meth:`distinguishing`, confirmed by evaluating it on both models."""
        phi = self.distinguishing(i, j)
        left_holds = evaluator_for(self.left.model).extension(phi) >> i & 1
        right_holds = evaluator_for(self.right.model).extension(phi) >> j & 1
        if not left_holds or right_holds:
            raise AssertionError("distinguishing formula failed its own check")
        return phi

    def distinguishing(self, i, j, _memo=None):
        """A box-free formula true at left point i and false at right point j."""
        memo = {} if _memo is None else _memo
        if (i, j) in memo:
            return memo[(i, j)]
        if (i, j) not in self.reason:
            raise ArePointsBisimilar("the points are bisimilar")
        _, how, group, w = self.reason[(i, j)]
        if how == "atoms":
            lv, rv = self.left.val[i], self.right.val[j]
            p = min(lv ^ rv)
            out = Atom(p) if p in lv else Not(Atom(p))
        elif how == "forth":
            mr = self.right.model.group_mask(j, group)
            parts = _dedup(self.distinguishing(w, v, memo) for v in _bits(mr))
            out = Dhat(group, conj(parts))
        else:
            ml = self.left.model.group_mask(i, group)
            parts = _dedup(self.distinguishing(v, w, memo) for v in _bits(ml))
            out = D(group, disj(parts))
        memo[(i, j)] = out
        return out


def _dedup(formulas):
    seen = []
    for f in formulas:
        if f not in seen:
            seen.append(f)
    return seen


@dataclass(frozen=True)
class BisimWitness:
    kind: str
    left: Any
    right: Any
    related: bool
    relation: frozenset
    certificate: Any

    @property
    def verdict(self):
        return "related" if self.related else "not-related"


def _witness(left, lp, right, rp, kind):
    ref = Refinement(left, right, kind)
    i, j = ref.left.locate(lp), ref.right.locate(rp)
    if ref.related_index(i, j):
        pairs = ref.pairs()
        return BisimWitness(kind, lp, rp, True, pairs, pairs)
    phi = ref.certified_formula(i, j)
    return BisimWitness(kind, lp, rp, False, ref.pairs(), phi)


def collective_bisim_kripke(m1: EpistemicModel, w1, m2: EpistemicModel, w2) -> BisimWitness:
    return _witness(m1, w1, m2, w2, COLLECTIVE)


def standard_bisim_kripke(m1: EpistemicModel, w1, m2: EpistemicModel, w2) -> BisimWitness:
    return _witness(m1, w1, m2, w2, STANDARD)


def collective_bisim_simplicial(c1: SimplicialModel, x1, c2: SimplicialModel, x2) -> BisimWitness:
    return _witness(c1, x1, c2, x2, COLLECTIVE)


def standard_bisim_simplicial(c1: SimplicialModel, x1, c2: SimplicialModel, x2) -> BisimWitness:
    return _witness(c1, x1, c2, x2, STANDARD)


def distinguishing_formula(left, lp, right, rp, kind=COLLECTIVE):
    """Formula true at ``(left, lp)`` and false at ``(right, rp)``; checked by evaluation."""
    ref = Refinement(left, right, kind)
    i, j = ref.left.locate(lp), ref.right.locate(rp)
    if ref.related_index(i, j):
        raise ArePointsBisimilar("the points are bisimilar; no formula distinguishes them")
    return ref.certified_formula(i, j)


def bisimilar(left, lp, right, rp, kind=COLLECTIVE) -> bool:
    return Refinement(left, right, kind).related(lp, rp)


def models_bisimilar(left, right, kind=COLLECTIVE) -> bool:
    """Whole-model bisimilarity: the largest bisimulation is total on both sides."""
    return Refinement(left, right, kind).is_total()


def point_label(point) -> str:
    return facet_label(point) if isinstance(point, frozenset) else str(point)
