"""Communication graphs and patterns, plus the named pattern families."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    AgentSetMismatch,
    BadParams,
    EmptyGroup,
    NotReflexive,
    SizeError,
    UnknownAgent,
    UnknownFamily,
    ValidationError,
)
from .model import check_agent_id, normalize_group

FULL_ASYNC_EAGER_LIMIT = 4
FULL_ASYNC_LAZY_LIMIT = 6


@dataclass(frozen=True)
class CommGraph:
    """Reflexive relation on the agents; ``(a, b)`` means b receives a's message."""

    agents: tuple
    edges: frozenset
    _inn: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        inn = {b: set() for b in self.agents}
        for a, b in self.edges:
            if a not in inn or b not in inn:
                raise UnknownAgent(f"edge ({a}, {b}) mentions an undeclared agent")
            inn[b].add(a)
        for a in self.agents:
            if a not in inn[a]:
                raise NotReflexive(f"graph lacks the loop ({a}, {a})")
        object.__setattr__(self, "_inn", {b: frozenset(s) for b, s in inn.items()})

    def receives(self, agent) -> frozenset:
        """``R a``: the agents whose message ``agent`` receives."""
        try:
            return self._inn[agent]
        except KeyError:
            raise UnknownAgent(f"unknown agent {agent!r}") from None

    def key(self) -> tuple:
        """Canonical serialization: the sorted pair list."""
        return tuple(sorted(self.edges))

    def is_identity(self):
        return all(a == b for a, b in self.edges)

    def is_universal(self):
        return len(self.edges) == len(self.agents) ** 2

    def label(self) -> str:
        """Short canonical label: ``I``, ``U``, or the non-loop edges ``a>b,b>c``."""
        if self.is_identity():
            return "I"
        if self.is_universal() and len(self.agents) > 1:
            return "U"
        return ",".join(f"{a}>{b}" for a, b in self.key() if a != b)

    def __str__(self):
        return self.label()


def build_graph(agents, pairs, auto_reflexive=True) -> CommGraph:
    agents = tuple(sorted({check_agent_id(a) for a in agents}))
    if not agents:
        raise ValidationError("agent set must be nonempty")
    edges = set()
    for pair in pairs:
        a, b = pair
        if a not in agents or b not in agents:
            raise UnknownAgent(f"edge ({a}, {b}) mentions an undeclared agent")
        edges.add((a, b))
    if auto_reflexive:
        edges.update((a, a) for a in agents)
    return CommGraph(agents, frozenset(edges))


def identity_graph(agents) -> CommGraph:
    return build_graph(agents, ())


def universal_graph(agents) -> CommGraph:
    return build_graph(agents, itertools.product(agents, agents))


def in_neighbourhood(graph: CommGraph, x) -> frozenset:
    """``R x`` for an agent, or the union ``R B`` for a nonempty group."""
    if isinstance(x, str):
        return graph.receives(x)
    group = normalize_group(x, graph.agents)
    out = set()
    for b in group:
        out |= graph.receives(b)
    return frozenset(out)


def group_view_equal(r1: CommGraph, r2: CommGraph, group) -> bool:
    """``R B ≡ R' B``: every member of the group receives from the same senders."""
    if r1.agents != r2.agents:
        raise AgentSetMismatch("graphs over different agent sets")
    group = normalize_group(group, r1.agents)
    return all(r1.receives(a) == r2.receives(a) for a in group)


@dataclass(frozen=True)
class CommPattern:
    """Nonempty set of communication graphs over one agent set."""

    agents: tuple
    graph_set: frozenset
    _order: tuple = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not self.graph_set:
            raise ValidationError("a communication pattern must be nonempty")
        for g in self.graph_set:
            if g.agents != self.agents:
                raise AgentSetMismatch("all graphs of a pattern must share its agent set")
        object.__setattr__(self, "_order", tuple(sorted(self.graph_set, key=CommGraph.key)))

    @property
    def graphs(self) -> tuple:
        """Graphs in canonical order (sorted by serialized pair list)."""
        return self._order

    def __len__(self):
        return len(self._order)

    def __iter__(self):
        return iter(self._order)

    def __contains__(self, graph):
        return graph in self.graph_set

    def position(self, graph) -> int:
        return self._order.index(graph)

    def __str__(self):
        return "{" + ", ".join(g.label() for g in self._order) + "}"


def build_pattern(agents, graphs) -> CommPattern:
    agents = tuple(sorted({check_agent_id(a) for a in agents}))
    graphs = list(graphs)
    for g in graphs:
        if g.agents != agents:
            raise AgentSetMismatch(f"graph over {list(g.agents)} in pattern over {list(agents)}")
    return CommPattern(agents, frozenset(graphs))


# -- families ---------------------------------------------------------------


def ordered_partitions(items):
    """Yield every ordered set partition of ``items`` as a list of frozensets."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in ordered_partitions(rest):
        # put ``first`` into an existing block, or into a new block at any slot
        for k in range(len(sub)):
            yield sub[:k] + [sub[k] | {first}] + sub[k + 1 :]
        for k in range(len(sub) + 1):
            yield sub[:k] + [frozenset({first})] + sub[k:]


def schedule_graph(agents, schedule) -> CommGraph:
    """Graph induced by a schedule: b reads a iff a's class is not after b's."""
    pos = {a: k for k, block in enumerate(schedule) for a in block}
    return build_graph(agents, [(a, b) for a in agents for b in agents if pos[a] <= pos[b]])


def iter_full_async(agents):
    """Lazily yield every reflexive graph over ``agents``."""
    agents = tuple(sorted(agents))
    if len(agents) > FULL_ASYNC_LAZY_LIMIT:
        raise SizeError(f"full_async over {len(agents)} agents is refused (limit {FULL_ASYNC_LAZY_LIMIT})")
    off = [(a, b) for a in agents for b in agents if a != b]
    for bits in range(1 << len(off)):
        yield build_graph(agents, [e for k, e in enumerate(off) if bits >> k & 1])


def _gossip_call(mode, a, b):
    if mode == "pushpull":
        return [(a, b), (b, a)]
    if mode == "push":
        return [(a, b)]
    if mode == "pull":
        return [(b, a)]
    raise BadParams(f"gossip mode must be pushpull, push or pull, not {mode!r}")


def gen_pattern(family: str, agents, params=None) -> CommPattern:
    """Generate one of the named pattern families over ``agents``.

    Families and their params:

    * ``byzantine`` -- ``sender``, ``receiver`` (default: first two agents)
    * ``immediate_snapshot``, ``full_async``, ``silent``, ``public_announcement``
    * ``group_announcement`` -- ``group``: list of announcing agents
    * ``gossip`` -- ``mode`` in pushpull/push/pull, ``timing`` in sync/async
    """
    params = dict(params or {})
    agents = tuple(sorted({check_agent_id(a) for a in agents}))
    if not agents:
        raise BadParams("agent set must be nonempty")

    if family == "byzantine":
        if len(agents) < 2 and not params:
            raise BadParams("byzantine needs two agents")
        a = params.pop("sender", agents[0])
        b = params.pop("receiver", agents[1] if len(agents) > 1 else None)
        _no_extra(family, params)
        if a not in agents or b not in agents or a == b:
            raise BadParams("byzantine needs two distinct declared agents")
        graphs = [identity_graph(agents), build_graph(agents, [(a, b)])]
    elif family == "immediate_snapshot":
        _no_extra(family, params)
        graphs = {schedule_graph(agents, s) for s in ordered_partitions(agents)}
    elif family == "full_async":
        _no_extra(family, params)
        if len(agents) > FULL_ASYNC_EAGER_LIMIT:
            raise SizeError(
                f"full_async over {len(agents)} agents is too large to materialize; use iter_full_async"
            )
        graphs = list(iter_full_async(agents))
    elif family == "silent":
        _no_extra(family, params)
        graphs = [identity_graph(agents)]
    elif family == "public_announcement":
        _no_extra(family, params)
        graphs = [universal_graph(agents)]
    elif family == "group_announcement":
        group = params.pop("group", None)
        _no_extra(family, params)
        if group is None:
            raise BadParams("group_announcement needs a 'group' parameter")
        try:
            group = normalize_group(group, agents)
        except (EmptyGroup, UnknownAgent) as exc:
            raise BadParams(str(exc)) from None
        graphs = [build_graph(agents, [(b, a) for b in group for a in agents])]
    elif family == "gossip":
        mode = params.pop("mode", "pushpull")
        timing = params.pop("timing", "sync")
        _no_extra(family, params)
        if len(agents) < 2:
            raise BadParams("gossip needs at least two agents")
        if timing not in ("sync", "async"):
            raise BadParams(f"gossip timing must be sync or async, not {timing!r}")
        graphs = {
            build_graph(agents, _gossip_call(mode, a, b))
            for a in agents
            for b in agents
            if a != b
        }
        if timing == "async":
            graphs.add(identity_graph(agents))
    else:
        raise UnknownFamily(f"unknown pattern family {family!r}")
    return build_pattern(agents, graphs)


def _no_extra(family, params):
    if params:
        raise BadParams(f"unexpected parameter(s) for {family}: {sorted(params)}")


FAMILIES = (
    "byzantine",
    "immediate_snapshot",
    "full_async",
    "silent",
    "public_announcement",
    "group_announcement",
    "gossip",
)
