"""Finite local epistemic models.

Relations are stored as partitions of the world set, one per agent.  Worlds
are opaque strings kept in lexicographic order; the position of a world in
``model.worlds`` is its index in every bitmask this module hands out.
"""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Mapping, NamedTuple

from .errors import (
    EmptyGroup,
    LocalityError,
    PartitionError,
    UnknownAgent,
    UnknownAtom,
    UnknownWorld,
    ValidationError,
)

_AGENT_RE = re.compile(r"[A-Za-z0-9]+\Z")
_ATOM_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class LocalAtom(NamedTuple):
    """Propositional variable ``name`` owned by agent ``owner`` (written ``name_owner``)."""

    name: str
    owner: str

    def __str__(self):
        return f"{self.name}_{self.owner}"


def parse_atom(token: str) -> LocalAtom:
    """Split ``p_a`` at its last underscore into ``LocalAtom('p', 'a')``."""
    name, sep, owner = token.rpartition("_")
    if not sep or not name or not _ATOM_NAME_RE.match(name) or not _AGENT_RE.match(owner):
        raise ValidationError(f"malformed atom token {token!r}; expected name_agent")
    return LocalAtom(name, owner)


def check_agent_id(agent: str) -> str:
    if not isinstance(agent, str) or not _AGENT_RE.match(agent):
        raise ValidationError(f"malformed agent id {agent!r}")
    return agent


class Signature(NamedTuple):
    agents: tuple
    atoms: frozenset

    @classmethod
    def make(cls, agents, atoms=()):
        agents = tuple(sorted({check_agent_id(a) for a in agents}))
        if not agents:
            raise ValidationError("agent set must be nonempty")
        atoms = frozenset(parse_atom(p) if isinstance(p, str) else LocalAtom(*p) for p in atoms)
        for p in atoms:
            if p.owner not in agents:
                raise UnknownAgent(f"atom {p} owned by undeclared agent {p.owner!r}")
        return cls(agents, atoms)

    def atoms_of(self, agent):
        return frozenset(p for p in self.atoms if p.owner == agent)


def normalize_group(group, agents) -> frozenset:
    """Validate a nonempty agent group against ``agents``."""
    if isinstance(group, str):
        group = (group,)
    group = frozenset(group)
    if not group:
        raise EmptyGroup("agent group must be nonempty")
    unknown = group.difference(agents)
    if unknown:
        raise UnknownAgent(f"unknown agent(s) {sorted(unknown)}")
    return group


def nonempty_groups(agents) -> list:
    """All nonempty subsets of ``agents``, smaller groups first, then lexicographic."""
    agents = sorted(agents)
    out = []
    for k in range(1, len(agents) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(agents, k))
    return out


def _sorted_partition(blocks) -> tuple:
    return tuple(sorted((frozenset(b) for b in blocks), key=lambda b: sorted(b)))


class EpistemicModel:
    """A triple (W, ~, L) over a signature; immutable once built.

    The constructor validates the partitions and, unless ``local=False``,
    the locality requirement.  Use :func:`build_model` for loosely typed input.
    """

    __slots__ = ("signature", "worlds", "index", "partitions", "valuation", "_class_of", "_masks")

    def __init__(self, signature: Signature, worlds, partitions, valuation, *, local=True):
        self.signature = signature
        worlds = list(worlds)
        self.worlds = tuple(sorted(set(worlds)))
        if not self.worlds:
            raise ValidationError("an epistemic model needs at least one world")
        if len(self.worlds) != len(worlds):
            raise ValidationError("duplicate world ids")
        self.index = {w: i for i, w in enumerate(self.worlds)}

        self.valuation = {}
        for w in self.worlds:
            atoms = frozenset(valuation.get(w, ()))
            stray = atoms - signature.atoms
            if stray:
                raise UnknownAtom(f"world {w!r} valuates undeclared atom(s) {sorted(map(str, stray))}")
            self.valuation[w] = atoms
        for w in valuation:
            if w not in self.index:
                raise UnknownWorld(f"valuation mentions unknown world {w!r}")

        self.partitions = {}
        self._class_of = {}
        self._masks = {}
        for a in partitions:
            if a not in signature.agents:
                raise UnknownAgent(f"relation given for undeclared agent {a!r}")
        for a in signature.agents:
            blocks = partitions.get(a)
            if blocks is None:
                blocks = [(w,) for w in self.worlds]
            class_of = [None] * len(self.worlds)
            clean = []
            for k, block in enumerate(blocks):
                block = list(block)
                if not block:
                    raise PartitionError(f"agent {a!r}: empty class")
                for w in block:
                    i = self.index.get(w)
                    if i is None:
                        raise UnknownWorld(f"agent {a!r}: class mentions unknown world {w!r}")
                    if class_of[i] is not None:
                        raise PartitionError(f"agent {a!r}: world {w!r} occurs in two classes")
                    class_of[i] = k
                clean.append(frozenset(block))
            missing = [self.worlds[i] for i, c in enumerate(class_of) if c is None]
            if missing:
                raise PartitionError(f"agent {a!r}: worlds {missing} not covered")
            part = _sorted_partition(clean)
            self.partitions[a] = part
            ids = {}
            for k, block in enumerate(part):
                for w in block:
                    ids[w] = k
            self._class_of[a] = tuple(ids[w] for w in self.worlds)
            block_mask = [sum(1 << self.index[w] for w in block) for block in part]
            self._masks[a] = tuple(block_mask[c] for c in self._class_of[a])

        if local:
            violations = check_locality(self)
            if violations:
                a, v, w = violations[0]
                raise LocalityError(
                    f"agent {a!r} cannot distinguish {v!r} and {w!r} but their {a}-atoms differ",
                    violation=violations[0],
                )

    # -- queries ---------------------------------------------------------
    @property
    def agents(self):
        return self.signature.agents

    @property
    def atoms(self):
        return self.signature.atoms

    def _check_world(self, w):
        if w not in self.index:
            raise UnknownWorld(f"unknown world {w!r}")

    def agent_class(self, agent, w) -> frozenset:
        self._check_world(w)
        if agent not in self._class_of:
            raise UnknownAgent(f"unknown agent {agent!r}")
        return self.partitions[agent][self._class_of[agent][self.index[w]]]

    def group_mask(self, i: int, group) -> int:
        """Bitmask of worlds ~_group-related to the world with index ``i``."""
        mask = -1
        for a in group:
            mask &= self._masks[a][i]
        return mask

    def group_class(self, w, group) -> frozenset:
        self._check_world(w)
        group = normalize_group(group, self.agents)
        mask = self.group_mask(self.index[w], group)
        return frozenset(v for j, v in enumerate(self.worlds) if mask >> j & 1)

    def related(self, w, v, group) -> bool:
        self._check_world(w)
        self._check_world(v)
        group = normalize_group(group, self.agents)
        i, j = self.index[w], self.index[v]
        return all(self._class_of[a][i] == self._class_of[a][j] for a in group)

    def class_id(self, agent, i: int) -> int:
        return self._class_of[agent][i]

    def pairs(self, agent) -> frozenset:
        """The equivalence relation ~_agent as a set of ordered pairs."""
        return frozenset((v, w) for block in self.partitions[agent] for v in block for w in block)

    def local_valuation(self, w, agent) -> frozenset:
        return frozenset(p for p in self.valuation[w] if p.owner == agent)

    # -- dunder ----------------------------------------------------------
    def _key(self):
        return (
            self.signature,
            self.worlds,
            tuple((a, self.partitions[a]) for a in self.agents),
            tuple(self.valuation[w] for w in self.worlds),
        )

    def __eq__(self, other):
        if not isinstance(other, EpistemicModel):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"EpistemicModel(agents={list(self.agents)}, worlds={len(self.worlds)})"


def build_model(agents, atoms, worlds, relations: Mapping, valuation: Mapping) -> EpistemicModel:
    """Validate loosely typed input and return an :class:`EpistemicModel`.

    ``atoms`` is an iterable of ``p_a`` tokens or ``(name, owner)`` pairs, or a
    mapping ``{agent: [name, ...]}``.  An agent missing from ``relations`` gets
    the identity relation.
    """
    if isinstance(atoms, Mapping):
        atoms = [LocalAtom(n, a) for a, names in atoms.items() for n in names]
    sig = Signature.make(agents, atoms)
    val = {}
    for w, ps in valuation.items():
        val[w] = frozenset(parse_atom(p) if isinstance(p, str) else LocalAtom(*p) for p in ps)
    return EpistemicModel(sig, list(worlds), dict(relations), val)


def check_locality(model: EpistemicModel) -> list:
    """Every ``(agent, v, w)`` with v ~agent w (v < w) but differing agent-atoms."""
    out = []
    for a in model.agents:
        for block in model.partitions[a]:
            members = sorted(block)
            for v, w in itertools.combinations(members, 2):
                if model.local_valuation(v, a) != model.local_valuation(w, a):
                    out.append((a, v, w))
    return out


def group_related(model: EpistemicModel, w, v, group) -> bool:
    """``w ~_B v``: related by every agent in the nonempty group ``B``."""
    return model.related(w, v, group)


def rename_worlds(model: EpistemicModel, mapping: Mapping) -> EpistemicModel:
    """Copy of ``model`` with world ``w`` renamed to ``mapping[w]`` (must be injective)."""
    parts = {a: [[mapping[w] for w in block] for block in model.partitions[a]] for a in model.agents}
    val = {mapping[w]: model.valuation[w] for w in model.worlds}
    return EpistemicModel(model.signature, [mapping[w] for w in model.worlds], parts, val)


def find_isomorphism(left: EpistemicModel, right: EpistemicModel):
    """A world bijection preserving valuations and every relation, or ``None``."""
    if left.signature != right.signature or len(left.worlds) != len(right.worlds):
        return None
    cand = {
        w: [v for v in right.worlds if right.valuation[v] == left.valuation[w]] for w in left.worlds
    }
    order = list(left.worlds)

    def extend(k, mapping, used):
        if k == len(order):
            return dict(mapping)
        w = order[k]
        i = left.index[w]
        for v in cand[w]:
            if v in used:
                continue
            j = right.index[v]
            ok = True
            for u, x in mapping.items():
                iu, jx = left.index[u], right.index[x]
                for a in left.agents:
                    if (left.class_id(a, i) == left.class_id(a, iu)) != (
                        right.class_id(a, j) == right.class_id(a, jx)
                    ):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                mapping[w] = v
                used.add(v)
                found = extend(k + 1, mapping, used)
                if found is not None:
                    return found
                del mapping[w]
                used.discard(v)
        return None

    return extend(0, {}, set())
