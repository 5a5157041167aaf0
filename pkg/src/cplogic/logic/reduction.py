"""Eliminate pattern boxes with the reduction axioms, innermost box first.

    [U,R] p_a        <->  p_a
    [U,R] ~phi       <->  ~[U,R] phi
    [U,R] (phi & psi) <-> [U,R] phi & [U,R] psi
    [U,R] D_B phi    <->  AND over R' in U with R'B ≡ RB of  D_{RB} [U,R'] phi

Conjuncts of the last rule follow the pattern's canonical graph order.
"""

from __future__ import annotations

from ..pattern import group_view_equal, in_neighbourhood
from .formula import And, Atom, Box, D, Not, conj

DEFAULT_STEP_LIMIT = 1_000_000


class ReductionLimit(RuntimeError):
    pass


def reduce_formula(phi, step_limit=DEFAULT_STEP_LIMIT):
    """Return an equivalent box-free formula."""
    steps = 0
    pushed = {}

    def push(pattern, graph, psi):
        # psi is already box-free; every call strictly shrinks psi
        nonlocal steps
        key = (pattern, graph, psi)
        if key in pushed:
            return pushed[key]
        steps += 1
        if steps > step_limit:
            raise ReductionLimit(f"reduction exceeded {step_limit} rewrite steps")
        if isinstance(psi, Atom):
            out = psi
        elif isinstance(psi, Not):
            out = Not(push(pattern, graph, psi.sub))
        elif isinstance(psi, And):
            out = And(push(pattern, graph, psi.left), push(pattern, graph, psi.right))
        elif isinstance(psi, D):
            heard = in_neighbourhood(graph, psi.group)
            out = conj(
                D(heard, push(pattern, other, psi.sub))
                for other in pattern.graphs
                if group_view_equal(other, graph, psi.group)
            )
        else:
            raise TypeError(f"unexpected node under a box: {psi!r}")
        pushed[key] = out
        return out

    def walk(f):
        if isinstance(f, Atom):
            return f
        if isinstance(f, Not):
            return Not(walk(f.sub))
        if isinstance(f, And):
            return And(walk(f.left), walk(f.right))
        if isinstance(f, D):
            return D(f.group, walk(f.sub))
        return push(f.pattern, f.graph, walk(f.sub))

    return walk(phi)
