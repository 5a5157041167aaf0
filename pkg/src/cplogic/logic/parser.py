"""Recursive-descent parser for formula text.

Grammar, loosest binding first::

    iff   := imp ("<->" imp)*
    imp   := or ("->" imp)?
    or    := and ("|" and)*
    and   := unary ("&" unary)*
    unary := "~" unary | "[" pat ";" graph "]" unary
           | "D{" agent ("," agent)* "}" unary | "K{" agent "}" unary
           | atom | "(" iff ")"
    pat   := NAME | "{" graph ("," graph)* "}"
    graph := NAME | "{" [agent ">" agent ("," agent ">" agent)*] "}"

Atoms are ``name_agent``.  Graph names ``I`` and ``U`` are the identity and
universal graphs; ``Rxy`` is ``I`` plus the edge (x, y).  Other names are
looked up in the pattern environment.
"""

from __future__ import annotations

import re

from ..errors import FormulaSyntaxError, UnknownAgent, UnknownAtom, UnknownId, UnknownPattern, ValidationError
from ..model import parse_atom
from ..pattern import CommGraph, CommPattern, build_graph, identity_graph, universal_graph
from .formula import And, Atom, Box, D, Iff, Implies, Not, Or

_TOKEN = re.compile(r"\s*(?:(<->|->|[~&|()\[\]{};,>])|([A-Za-z0-9][A-Za-z0-9_]*))")


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip():
                raise FormulaSyntaxError(f"unexpected character {rest.strip()[0]!r}", len(text) - len(rest.lstrip()))
            break
        sym, ident = m.groups()
        start = m.start(1) if sym else m.start(2)
        tokens.append(("sym", sym, start) if sym else ("id", ident, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, signature, env, agents=None):
        self.tokens = _tokenize(text)
        self.k = 0
        self.signature = signature
        self.env = env or {}
        self.agents = tuple(sorted(agents)) if agents else None

    # -- token helpers -----------------------------------------------------
    def peek(self, offset=0):
        return self.tokens[min(self.k + offset, len(self.tokens) - 1)]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def at(self, sym):
        kind, value, _ = self.peek()
        return kind == "sym" and value == sym

    def expect(self, sym):
        kind, value, pos = self.take()
        if kind != "sym" or value != sym:
            found = "end of input" if kind == "end" else repr(value)
            raise FormulaSyntaxError(f"expected {sym!r}, found {found}", pos)

    def ident(self, what):
        kind, value, pos = self.take()
        if kind != "id":
            found = "end of input" if kind == "end" else repr(value)
            raise FormulaSyntaxError(f"expected {what}, found {found}", pos)
        return value, pos

    # -- grammar -----------------------------------------------------------
    def parse(self):
        phi = self.iff()
        kind, value, pos = self.peek()
        if kind != "end":
            raise FormulaSyntaxError(f"unexpected {value!r}", pos)
        return phi

    def iff(self):
        left = self.imp()
        while self.at("<->"):
            self.take()
            left = Iff(left, self.imp())
        return left

    def imp(self):
        left = self.disj()
        if self.at("->"):
            self.take()
            return Implies(left, self.imp())
        return left

    def disj(self):
        left = self.conj()
        while self.at("|"):
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.at("&"):
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self):
        kind, value, pos = self.peek()
        if kind == "sym" and value == "~":
            self.take()
            return Not(self.unary())
        if kind == "sym" and value == "(":
            self.take()
            inner = self.iff()
            self.expect(")")
            return inner
        if kind == "sym" and value == "[":
            self.take()
            pattern = self.pattern()
            self.expect(";")
            graph = self.graph(pattern.agents)
            self.expect("]")
            return Box(pattern, graph, self.unary())
        if kind == "id" and value in ("D", "K") and self.peek(1)[:2] == ("sym", "{"):
            self.take()
            self.take()
            group = [self.agent()]
            while self.at(","):
                self.take()
                group.append(self.agent())
            self.expect("}")
            if value == "K" and len(group) != 1:
                raise FormulaSyntaxError("K takes exactly one agent", pos)
            return D(frozenset(group), self.unary())
        if kind == "id":
            self.take()
            return self.atom(value, pos)
        found = "end of input" if kind == "end" else repr(value)
        raise FormulaSyntaxError(f"expected a formula, found {found}", pos)

    # -- leaves --------------------------------------------------------------
    def agent(self):
        name, pos = self.ident("an agent")
        if self.signature is not None and name not in self.signature.agents:
            raise UnknownAgent(f"unknown agent {name!r} at position {pos}")
        return name

    def atom(self, token, pos):
        if "_" not in token:
            raise FormulaSyntaxError(f"{token!r} is not an atom (expected name_agent)", pos)
        try:
            p = parse_atom(token)
        except ValidationError as exc:
            raise FormulaSyntaxError(str(exc), pos) from None
        if self.signature is not None:
            if p.owner not in self.signature.agents:
                raise UnknownAgent(f"atom {token} owned by unknown agent {p.owner!r}")
            if p not in self.signature.atoms:
                raise UnknownAtom(f"unknown atom {token!r} at position {pos}")
        return Atom(p)

    def pattern_agents(self):
        if self.signature is not None:
            return self.signature.agents
        if self.agents is not None:
            return self.agents
        for obj in self.env.values():
            if isinstance(obj, (CommPattern, CommGraph)):
                return obj.agents
        raise FormulaSyntaxError("a pattern literal needs a signature to fix the agent set", self.peek()[2])

    def pattern(self):
        if self.at("{"):
            self.take()
            agents = self.pattern_agents()
            graphs = [self.graph(agents)]
            while self.at(","):
                self.take()
                graphs.append(self.graph(agents))
            self.expect("}")
            return CommPattern(tuple(agents), frozenset(graphs))
        name, pos = self.ident("a pattern name")
        obj = self.env.get(name)
        if not isinstance(obj, CommPattern):
            raise UnknownPattern(f"unknown pattern {name!r} at position {pos}")
        return obj

    def graph(self, agents):
        if self.at("{"):
            self.take()
            pairs = []
            while not self.at("}"):
                a, apos = self.ident("an agent")
                self.expect(">")
                b, _ = self.ident("an agent")
                if a not in agents or b not in agents:
                    raise UnknownAgent(f"edge {a}>{b} at position {apos} leaves the agent set")
                pairs.append((a, b))
                if not self.at(","):
                    break
                self.take()
            self.expect("}")
            return build_graph(agents, pairs)
        name, pos = self.ident("a graph name")
        obj = self.env.get(name)
        if isinstance(obj, CommGraph):
            if obj.agents != tuple(agents):
                raise UnknownId(f"graph {name!r} is over a different agent set")
            return obj
        if name == "I":
            return identity_graph(agents)
        if name == "U":
            return universal_graph(agents)
        if name.startswith("R"):
            rest = name[1:]
            splits = [(rest[:i], rest[i:]) for i in range(1, len(rest)) if rest[:i] in agents and rest[i:] in agents]
            if len(splits) == 1:
                return build_graph(agents, [splits[0]])
        raise UnknownId(f"unknown graph {name!r} at position {pos}")


def parse_formula(text: str, signature=None, env=None, agents=None):
    """Parse ``text``; ``env`` maps names to :class:`CommPattern` or :class:`CommGraph`.

    Without a signature, pattern literals range over ``agents`` (or the agent
    set of the first pattern in ``env``).
    """
    return _Parser(text, signature, env, agents).parse()
