"""
The flow network F(Ā,B̄) of a structured system, its cost-augmented form
F(Ā,B̄,c), integral maximum flow and an exact minimum cost flow.

Vertex layout (roles from ``utils.choices``)::

    s -> N_i -> u'_j -> t
    s -> x'_k -> x_r -> t
    s -> x'_k -> u_j -> u'_j -> t

Every edge has capacity 1 except (u'_j, t), which has capacity n + 1. Only
the (u'_j, t) edges carry a cost once the network is augmented.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from inputselect.structural.core import StructuredSystem, as_cost
from inputselect.structural.exceptions import DimensionMismatch, Infeasible
from inputselect.structural.graph import SccDecomposition, state_sccs
from inputselect.structural.utils.choices import (
    ROLE_INPUT,
    ROLE_PRIMED_INPUT,
    ROLE_PRIMED_STATE,
    ROLE_SCC,
    ROLE_SINK,
    ROLE_SOURCE,
    ROLE_STATE,
)

logger = logging.getLogger(__name__)


class Vertex(NamedTuple):
    role: str
    index: int = 0

    def label(self) -> str:
        """Human readable, 1-based name such as ``x'3`` or ``N2``."""
        if self.role in (ROLE_SOURCE, ROLE_SINK):
            return self.role
        if self.role == ROLE_PRIMED_STATE:
            return f"x'{self.index + 1}"
        if self.role == ROLE_PRIMED_INPUT:
            return f"u'{self.index + 1}"
        return f"{self.role}{self.index + 1}"


SOURCE = Vertex(ROLE_SOURCE)
SINK = Vertex(ROLE_SINK)


@dataclass(frozen=True)
class FlowEdge:
    tail: Vertex
    head: Vertex
    capacity: int
    cost: Fraction = Fraction(0)


@dataclass(frozen=True)
class FlowNetwork:
    n: int
    m: int
    q: int
    vertices: tuple[Vertex, ...]
    edges: tuple[FlowEdge, ...]
    _index: dict[tuple[Vertex, Vertex], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {(e.tail, e.head): pos for pos, e in enumerate(self.edges)})

    @property
    def source(self) -> Vertex:
        return SOURCE

    @property
    def sink(self) -> Vertex:
        return SINK

    def edge_index(self, tail: Vertex, head: Vertex) -> int:
        return self._index[(tail, head)]

    def has_edge(self, tail: Vertex, head: Vertex) -> bool:
        return (tail, head) in self._index

    def edges_out_of(self, v: Vertex) -> list[FlowEdge]:
        return [e for e in self.edges if e.tail == v]

    def in_degree(self, v: Vertex) -> int:
        return sum(1 for e in self.edges if e.head == v)

    def total_cost(self) -> Fraction:
        return sum((e.cost for e in self.edges), Fraction(0))

    def to_networkx(self, integer_costs: bool = False) -> tuple[nx.DiGraph, int]:
        """
        Build a networkx DiGraph with ``capacity``/``weight`` edge attributes.
        With ``integer_costs`` every cost is multiplied by the returned scale so
        that network simplex works on exact integers.
        """
        scale = math.lcm(1, *(e.cost.denominator for e in self.edges)) if integer_costs else 1
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            weight = int(e.cost * scale) if integer_costs else e.cost
            g.add_edge(e.tail, e.head, capacity=e.capacity, weight=weight)
        return g, scale


@dataclass(frozen=True)
class FlowVector:
    """Integer flow on every edge of ``network``, aligned with ``network.edges``."""

    network: FlowNetwork
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != len(self.network.edges):
            raise DimensionMismatch("flow vector length differs from the number of edges")

    @classmethod
    def zero(cls, network: FlowNetwork) -> FlowVector:
        return cls(network, (0,) * len(network.edges))

    @classmethod
    def from_mapping(cls, network: FlowNetwork, flows) -> FlowVector:
        """``flows`` maps (tail, head) to an amount; missing edges carry nothing."""
        values = [0] * len(network.edges)
        for (tail, head), amount in flows.items():
            values[network.edge_index(tail, head)] += amount
        return cls(network, tuple(values))

    def flow(self, tail: Vertex, head: Vertex) -> int:
        return self.values[self.network.edge_index(tail, head)]

    @property
    def value(self) -> int:
        """Total flow leaving the source."""
        return sum(v for e, v in zip(self.network.edges, self.values) if e.tail == SOURCE)

    def violations(self) -> list[str]:
        problems = []
        balance: dict[Vertex, int] = {v: 0 for v in self.network.vertices}
        for e, v in zip(self.network.edges, self.values):
            if v < 0 or v > e.capacity:
                problems.append(f"{e.tail.label()}->{e.head.label()} carries {v} outside [0, {e.capacity}]")
            balance[e.tail] -= v
            balance[e.head] += v
        for vertex, net in balance.items():
            if vertex not in (SOURCE, SINK) and net != 0:
                problems.append(f"conservation fails at {vertex.label()} (excess {net})")
        return problems

    def is_feasible(self) -> bool:
        return not self.violations()

    def objective(self) -> Fraction:
        """Flow-weighted cost, the sum of c(e) f(e)."""
        return sum((e.cost * v for e, v in zip(self.network.edges, self.values)), Fraction(0))

    def support_cost(self) -> Fraction:
        """Each edge with positive flow charged once."""
        return sum((e.cost for e, v in zip(self.network.edges, self.values) if v > 0), Fraction(0))

    def support(self) -> list[FlowEdge]:
        return [e for e, v in zip(self.network.edges, self.values) if v > 0]


def build_flow_network(sys: StructuredSystem, scc: SccDecomposition) -> FlowNetwork:
    n, m, q = sys.n, sys.m, scc.q
    scc_nodes = [Vertex(ROLE_SCC, i) for i in range(q)]
    primed_states = [Vertex(ROLE_PRIMED_STATE, k) for k in range(n)]
    states = [Vertex(ROLE_STATE, r) for r in range(n)]
    inputs = [Vertex(ROLE_INPUT, j) for j in range(m)]
    primed_inputs = [Vertex(ROLE_PRIMED_INPUT, j) for j in range(m)]
    vertices = (SOURCE, *scc_nodes, *primed_states, *states, *inputs, *primed_inputs, SINK)

    edges: list[FlowEdge] = []
    edges += [FlowEdge(SOURCE, node, 1) for node in scc_nodes]
    edges += [FlowEdge(SOURCE, node, 1) for node in primed_states]
    for i, component in enumerate(scc.non_top_linked):
        members = set(scc.members(component))
        touching = sorted({j for r, j in sys.b_bar.nonzeros if r in members})
        edges += [FlowEdge(scc_nodes[i], primed_inputs[j], 1) for j in touching]
    edges += [FlowEdge(primed_states[k], states[r], 1) for k, r in sys.a_bar.sorted_entries()]
    edges += [FlowEdge(primed_states[k], inputs[j], 1) for k, j in sys.b_bar.sorted_entries()]
    edges += [FlowEdge(inputs[j], primed_inputs[j], 1) for j in range(m)]
    edges += [FlowEdge(primed_inputs[j], SINK, n + 1) for j in range(m)]
    edges += [FlowEdge(states[r], SINK, 1) for r in range(n)]

    net = FlowNetwork(n, m, q, vertices, tuple(edges))
    logger.debug("flow network: %d vertices, %d edges (q=%d)", len(vertices), len(edges), q)
    return net


def augment_costs(net: FlowNetwork, p_u: Sequence[int | str | Fraction]) -> FlowNetwork:
    """Put input j's cost on (u'_j, t); every other edge costs nothing."""
    if len(p_u) != net.m:
        raise DimensionMismatch(f"expected {net.m} input costs, got {len(p_u)}")
    costs = [as_cost(c) for c in p_u]
    edges = tuple(
        FlowEdge(e.tail, e.head, e.capacity, costs[e.tail.index] if e.tail.role == ROLE_PRIMED_INPUT else Fraction(0))
        for e in net.edges
    )
    return FlowNetwork(net.n, net.m, net.q, net.vertices, edges)


def build_cost_network(sys: StructuredSystem, scc: SccDecomposition | None = None) -> FlowNetwork:
    """F(Ā,B̄,c) in one step."""
    return augment_costs(build_flow_network(sys, scc or state_sccs(sys)), sys.input_costs)


def max_flow(net: FlowNetwork) -> FlowVector:
    """Integral maximum s-t flow (Edmonds-Karp, augmenting along edges in insertion order)."""
    if not net.edges_out_of(SOURCE):
        return FlowVector.zero(net)
    g, _ = net.to_networkx()
    value, flow_dict = nx.maximum_flow(g, SOURCE, SINK, flow_func=edmonds_karp)
    result = FlowVector(net, tuple(flow_dict[e.tail][e.head] for e in net.edges))
    assert result.value == value
    return result


def min_cost_flow(net: FlowNetwork, required_value: int) -> FlowVector:
    """
    Integral flow of value ``required_value`` minimising the sum of c(e) f(e).
    Costs are non-negative, so no flow of larger value is ever cheaper.

    Raises ``Infeasible`` when the maximum flow is below ``required_value``.
    """
    if required_value < 0:
        raise ValueError("required_value must be non-negative")
    if required_value == 0:
        return FlowVector.zero(net)
    best_value = max_flow(net).value
    if best_value < required_value:
        raise Infeasible(f"maximum flow {best_value} is below the required {required_value}")

    g, scale = net.to_networkx(integer_costs=True)
    nx.set_node_attributes(g, 0, "demand")
    g.nodes[SOURCE]["demand"] = -required_value
    g.nodes[SINK]["demand"] = required_value
    try:
        scaled_cost, flow_dict = nx.network_simplex(g)
    except nx.NetworkXUnfeasible as exc:  # pragma: no cover - excluded by the max-flow check
        raise Infeasible(str(exc)) from exc

    result = FlowVector(net, tuple(flow_dict[e.tail][e.head] for e in net.edges))
    assert result.value == required_value
    assert result.objective() == Fraction(scaled_cost, scale)
    logger.debug("min cost flow of value %d costs %s", required_value, result.objective())
    return result


def restricted_to_edges(net: FlowNetwork, keep: Iterable[FlowEdge]) -> FlowNetwork:
    """The same network with only the given edges (used to prune provably idle edges)."""
    kept = set(keep)
    return FlowNetwork(net.n, net.m, net.q, net.vertices, tuple(e for e in net.edges if e in kept))
