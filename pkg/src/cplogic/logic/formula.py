"""Formula AST for the language with distributed knowledge and pattern boxes.

Primitive nodes are :class:`Atom`, :class:`Not`, :class:`And`, :class:`D`
and :class:`Box`.  Disjunction, implication, equivalence and ``K`` are
builder functions that expand into the primitives.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import EmptyGroup, GraphNotInPattern
from ..model import LocalAtom, parse_atom
from ..pattern import CommGraph, CommPattern


class Formula:
    """Common base; subclasses are frozen dataclasses with a cached hash."""

    def _cached_hash(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self.__dataclass_fields__))
            object.__setattr__(self, "_hash", h)
            return h

    def __str__(self):
        from .printer import format_formula

        return format_formula(self)

    def __invert__(self):
        return Not(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)


@dataclass(frozen=True)
class Atom(Formula):
    atom: LocalAtom

    __hash__ = Formula._cached_hash


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula

    __hash__ = Formula._cached_hash


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    __hash__ = Formula._cached_hash


@dataclass(frozen=True)
class D(Formula):
    """Distributed knowledge of a nonempty group."""

    group: frozenset
    sub: Formula

    __hash__ = Formula._cached_hash

    def __post_init__(self):
        if not isinstance(self.group, frozenset):
            object.__setattr__(self, "group", frozenset(self.group))
        if not self.group:
            raise EmptyGroup("distributed knowledge needs a nonempty group")


@dataclass(frozen=True)
class Box(Formula):
    """``[U, R] sub``: after pattern U with actual graph R, ``sub`` holds."""

    pattern: CommPattern
    graph: CommGraph
    sub: Formula

    __hash__ = Formula._cached_hash

    def __post_init__(self):
        if self.graph not in self.pattern:
            raise GraphNotInPattern(f"graph {self.graph.label()} is not in pattern {self.pattern}")


# -- builders ---------------------------------------------------------------


def atom(token) -> Atom:
    return Atom(parse_atom(token) if isinstance(token, str) else LocalAtom(*token))


def neg(phi: Formula) -> Formula:
    """Negation that cancels a double negation."""
    return phi.sub if isinstance(phi, Not) else Not(phi)


def Or(left, right) -> Formula:
    return Not(And(Not(left), Not(right)))


def Implies(left, right) -> Formula:
    return Not(And(left, Not(right)))


def Iff(left, right) -> Formula:
    return And(Implies(left, right), Implies(right, left))


def K(agent, phi) -> Formula:
    return D(frozenset([agent]), phi)


def Dhat(group, phi) -> Formula:
    """Dual of distributed knowledge: ``~D_B ~phi``."""
    return Not(D(frozenset(group), neg(phi)))


def conj(parts) -> Formula:
    """Left-nested conjunction; a single conjunct is returned as is."""
    parts = list(parts)
    if not parts:
        raise ValueError("empty conjunction")
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts) -> Formula:
    parts = list(parts)
    if not parts:
        raise ValueError("empty disjunction")
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


# -- inspection -------------------------------------------------------------


def subformulas(phi: Formula):
    """Yield every node (pre-order)."""
    stack = [phi]
    while stack:
        f = stack.pop()
        yield f
        if isinstance(f, And):
            stack.append(f.right)
            stack.append(f.left)
        elif isinstance(f, (Not, D, Box)):
            stack.append(f.sub)


def atoms_of(phi) -> frozenset:
    return frozenset(f.atom for f in subformulas(phi) if isinstance(f, Atom))


def agents_of(phi) -> frozenset:
    """Agents mentioned by atoms, groups and patterns."""
    out = set()
    for f in subformulas(phi):
        if isinstance(f, Atom):
            out.add(f.atom.owner)
        elif isinstance(f, D):
            out |= f.group
        elif isinstance(f, Box):
            out |= set(f.pattern.agents)
    return frozenset(out)


def patterns_of(phi) -> frozenset:
    return frozenset(f.pattern for f in subformulas(phi) if isinstance(f, Box))


def box_count(phi) -> int:
    return sum(1 for f in subformulas(phi) if isinstance(f, Box))


def box_nesting(phi) -> int:
    """Maximal number of boxes on a root-to-leaf path."""
    if isinstance(phi, Atom):
        return 0
    if isinstance(phi, And):
        return max(box_nesting(phi.left), box_nesting(phi.right))
    inner = box_nesting(phi.sub)
    return inner + 1 if isinstance(phi, Box) else inner


def size(phi) -> int:
    return sum(1 for _ in subformulas(phi))


def depth(phi) -> int:
    if isinstance(phi, Atom):
        return 0
    if isinstance(phi, And):
        return 1 + max(depth(phi.left), depth(phi.right))
    return 1 + depth(phi.sub)


def substitute(chi: Formula, target: LocalAtom, replacement: Formula) -> Formula:
    """Uniform substitution ``chi[target/replacement]``."""
    if isinstance(chi, Atom):
        return replacement if chi.atom == target else chi
    if isinstance(chi, Not):
        return Not(substitute(chi.sub, target, replacement))
    if isinstance(chi, And):
        return And(substitute(chi.left, target, replacement), substitute(chi.right, target, replacement))
    if isinstance(chi, D):
        return D(chi.group, substitute(chi.sub, target, replacement))
    return Box(chi.pattern, chi.graph, substitute(chi.sub, target, replacement))
