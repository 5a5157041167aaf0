"""Render formulas in the concrete grammar accepted by the parser.

Negated conjunctions of the shapes produced by ``|``, ``->`` and ``<->`` are
printed back in their sugared form; the output always re-parses to the same
AST.
"""

from __future__ import annotations

from .formula import And, Atom, Box, D, Not

IFF, IMP, OR, AND, UNARY = 1, 2, 3, 4, 5


def graph_text(graph, names=None):
    if names and graph in names:
        return names[graph]
    label = graph.label()
    return label if label in ("I", "U") else "{" + label + "}"


def pattern_text(pattern, names=None):
    if names and pattern in names:
        return names[pattern]
    return "{" + ",".join(graph_text(g) for g in pattern.graphs) + "}"


def _sugar(phi):
    """Return (op, left, right) if ``phi`` is a sugared binary, else None."""
    if isinstance(phi, Not) and isinstance(phi.sub, And):
        left, right = phi.sub.left, phi.sub.right
        if isinstance(right, Not):
            if isinstance(left, Not):
                return OR, left.sub, right.sub
            return IMP, left, right.sub
    if isinstance(phi, And):
        a, b = _sugar(phi.left), _sugar(phi.right)
        if a and b and a[0] == IMP and b[0] == IMP and a[1] == b[2] and a[2] == b[1]:
            return IFF, a[1], a[2]
    return None


_SYMBOL = {IFF: "<->", IMP: "->", OR: "|", AND: "&"}


def format_formula(phi, env=None) -> str:
    """Print ``phi``; ``env`` maps names to patterns/graphs to print by name."""
    names = {}
    for name, obj in (env or {}).items():
        names.setdefault(obj, name)
    return _fmt(phi, names)[0]


def _fmt(phi, names):
    sugared = _sugar(phi)
    if sugared is None and isinstance(phi, And):
        sugared = (AND, phi.left, phi.right)
    if sugared is not None:
        op, left, right = sugared
        lt, lp = _fmt(left, names)
        rt, rp = _fmt(right, names)
        if op == IMP:
            lpar, rpar = lp <= op, rp < op
        else:
            lpar, rpar = lp < op, rp <= op
        if lpar:
            lt = f"({lt})"
        if rpar:
            rt = f"({rt})"
        return f"{lt} {_SYMBOL[op]} {rt}", op

    if isinstance(phi, Atom):
        return str(phi.atom), UNARY
    sub, sp = _fmt(phi.sub, names)
    if sp < UNARY:
        sub = f"({sub})"
    if isinstance(phi, Not):
        return f"~{sub}", UNARY
    if isinstance(phi, D):
        group = ",".join(sorted(phi.group))
        op = "K" if len(phi.group) == 1 else "D"
        return f"{op}{{{group}}} {sub}", UNARY
    if isinstance(phi, Box):
        return f"[{pattern_text(phi.pattern, names)};{graph_text(phi.graph, names)}] {sub}", UNARY
    raise TypeError(f"not a formula: {phi!r}")
