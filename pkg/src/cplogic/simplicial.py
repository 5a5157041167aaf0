"""Pure chromatic simplicial models, stored by their facets.

Faces are the downward closure of the facets and are never materialized.
Facets are frozensets of vertex ids; ``model.facets`` lists them in canonical
order (by sorted vertex ids) and bitmasks index into that order.
"""

from __future__ import annotations

from typing import Mapping, NamedTuple

from .errors import (
    NonMaximalFacet,
    NotChromatic,
    NotPure,
    OrphanVertex,
    UnknownAgent,
    UnknownFace,
    UnknownFacet,
    UnknownId,
    ValidationError,
    ValuationOwnerError,
)
from .model import LocalAtom, Signature, parse_atom


class Vertex(NamedTuple):
    colour: str
    atoms: frozenset


def facet_label(facet) -> str:
    return "{" + ",".join(sorted(facet)) + "}"


def _facet_key(facet):
    return tuple(sorted(facet))


class SimplicialModel:
    """Pure chromatic complex with coloured, valuated vertices; immutable once built."""

    __slots__ = ("signature", "vertices", "facets", "index", "facet_names", "_vertex_of", "_masks", "_star")

    def __init__(self, signature: Signature, vertices: Mapping, facets, facet_names=None):
        self.signature = signature
        self.vertices = {}
        for v, (colour, atoms) in vertices.items():
            if not isinstance(v, str) or not v:
                raise ValidationError(f"malformed vertex id {v!r}")
            if colour not in signature.agents:
                raise UnknownAgent(f"vertex {v!r} coloured by undeclared agent {colour!r}")
            atoms = frozenset(atoms)
            for p in atoms:
                if p.owner != colour:
                    raise ValuationOwnerError(f"vertex {v!r} of colour {colour!r} carries {p}")
                if p not in signature.atoms:
                    raise ValidationError(f"vertex {v!r} carries undeclared atom {p}")
            self.vertices[v] = Vertex(colour, atoms)

        clean = set()
        for f in facets:
            f = frozenset(f)
            if not f:
                raise ValidationError("empty facet")
            for v in f:
                if v not in self.vertices:
                    raise UnknownId(f"facet {facet_label(f)} mentions unknown vertex {v!r}")
            colours = [self.vertices[v].colour for v in f]
            if len(set(colours)) != len(colours):
                raise NotChromatic(f"facet {facet_label(f)} has two vertices of one colour")
            clean.add(f)
        if not clean:
            raise ValidationError("a simplicial model needs at least one facet")
        for f in clean:
            for g in clean:
                if f < g:
                    raise NonMaximalFacet(f"facet {facet_label(f)} is contained in {facet_label(g)}")
        n = len(signature.agents)
        for f in clean:
            if len(f) != n:
                raise NotPure(f"facet {facet_label(f)} has {len(f)} vertices, expected {n}")
        used = set().union(*clean)
        orphans = sorted(set(self.vertices) - used)
        if orphans:
            raise OrphanVertex(f"vertices {orphans} belong to no facet")

        self.facets = tuple(sorted(clean, key=_facet_key))
        self.index = {f: i for i, f in enumerate(self.facets)}
        self._vertex_of = {a: [None] * len(self.facets) for a in signature.agents}
        self._star = {v: 0 for v in self.vertices}
        for i, f in enumerate(self.facets):
            for v in f:
                self._vertex_of[self.vertices[v].colour][i] = v
                self._star[v] |= 1 << i
        self._masks = {
            a: tuple(self._star[v] for v in self._vertex_of[a]) for a in signature.agents
        }
        self.facet_names = {}
        for name, f in (facet_names or {}).items():
            f = frozenset(f)
            if f not in self.index:
                raise UnknownFacet(f"facet name {name!r} refers to a non-facet {facet_label(f)}")
            self.facet_names[name] = f

    @property
    def agents(self):
        return self.signature.agents

    @property
    def atoms(self):
        return self.signature.atoms

    def facet(self, ref) -> frozenset:
        """Resolve a facet given as a vertex collection or a facet name."""
        if isinstance(ref, str):
            if ref in self.facet_names:
                return self.facet_names[ref]
            raise UnknownFacet(f"unknown facet name {ref!r}")
        f = frozenset(ref)
        if f not in self.index:
            raise UnknownFacet(f"{facet_label(f)} is not a facet")
        return f

    def colour(self, v) -> str:
        return self.vertices[v].colour

    def vertex_of(self, facet, agent):
        """The unique ``agent``-coloured vertex of a facet."""
        return self._vertex_of[agent][self.index[self.facet(facet)]]

    def group_mask(self, i: int, group) -> int:
        """Facets Y (as bitmask) sharing a ``group``-coloured face with the i-th facet."""
        mask = -1
        for a in group:
            mask &= self._masks[a][i]
        return mask

    def is_face(self, face) -> bool:
        face = frozenset(face)
        return bool(face) and any(face <= f for f in self.facets)

    def _key(self):
        return (
            self.signature,
            tuple(sorted(self.vertices.items())),
            self.facets,
        )

    def __eq__(self, other):
        if not isinstance(other, SimplicialModel):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (
            f"SimplicialModel(agents={list(self.agents)}, vertices={len(self.vertices)}, "
            f"facets={len(self.facets)})"
        )


def build_simplicial(agents, atoms, vertices: Mapping, facets, facet_names=None) -> SimplicialModel:
    """Validate loosely typed input.

    ``vertices`` maps id to ``{"colour": a, "atoms": [...]}`` or to a
    ``(colour, atoms)`` pair.  If ``atoms`` is None the signature's atoms are
    collected from the vertices.
    """
    norm = {}
    collected = set()
    for v, spec in vertices.items():
        if isinstance(spec, Mapping):
            colour, ps = spec.get("colour"), spec.get("atoms", ())
        else:
            colour, ps = spec
        ps = frozenset(parse_atom(p) if isinstance(p, str) else LocalAtom(*p) for p in ps)
        collected |= ps
        norm[v] = (colour, ps)
    if atoms is None:
        atoms = collected
    elif isinstance(atoms, Mapping):
        atoms = [LocalAtom(n, a) for a, names in atoms.items() for n in names]
    sig = Signature.make(agents, atoms)
    return SimplicialModel(sig, norm, facets, facet_names)


def intersection_colours(model: SimplicialModel, x, y) -> frozenset:
    """Colours of the vertices two facets share."""
    x, y = model.facet(x), model.facet(y)
    return frozenset(model.colour(v) for v in x & y)


def face_valuation(model: SimplicialModel, face) -> frozenset:
    """Union of the vertex valuations of a face."""
    face = frozenset(face)
    if not model.is_face(face):
        raise UnknownFace(f"{facet_label(face)} is not a face of the complex")
    out = set()
    for v in face:
        out |= model.vertices[v].atoms
    return frozenset(out)


def rename_vertices(model: SimplicialModel, mapping: Mapping) -> SimplicialModel:
    verts = {mapping[v]: tuple(spec) for v, spec in model.vertices.items()}
    facets = [frozenset(mapping[v] for v in f) for f in model.facets]
    names = {n: frozenset(mapping[v] for v in f) for n, f in model.facet_names.items()}
    return SimplicialModel(model.signature, verts, facets, names)
