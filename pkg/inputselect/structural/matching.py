"""
Bipartite graphs B(Ā) and B(Ā,B̄), maximum matching, and the minimum weight
right-perfect matching used as the first stage of input selection.

Left vertices are the states ``0..n-1`` followed (in B(Ā,B̄)) by the inputs
``n..n+m-1``; right vertices are the primed states ``0..n-1``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
from networkx.algorithms import bipartite

from inputselect.structural.core import StructuredSystem
from inputselect.structural.exceptions import Infeasible

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


@dataclass(frozen=True)
class BipartiteGraph:
    left_count: int
    right_count: int
    edges: frozenset[Edge]
    weights: Mapping[Edge, Fraction] | None = None
    # Left vertices below this index are states; the rest are inputs.
    state_count: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        if self.state_count is None:
            object.__setattr__(self, "state_count", self.left_count)
        for left, right in self.edges:
            if not (0 <= left < self.left_count and 0 <= right < self.right_count):
                raise ValueError(f"edge ({left}, {right}) out of range")
        if self.weights is not None and set(self.weights) != set(self.edges):
            raise ValueError("weights must be given for exactly the edges of the graph")

    def is_input(self, left: int) -> bool:
        assert self.state_count is not None
        return left >= self.state_count

    def weight(self, edge: Edge) -> Fraction:
        if self.weights is None:
            return Fraction(0)
        return self.weights[edge]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def with_edge(self, edge: Edge, weight: Fraction = Fraction(0)) -> BipartiteGraph:
        weights = None if self.weights is None else {**self.weights, edge: weight}
        return BipartiteGraph(self.left_count, self.right_count, self.edges | {edge}, weights, self.state_count)


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        lefts = [left for left, _ in self.pairs]
        rights = [right for _, right in self.pairs]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            raise ValueError("a matching may use each vertex at most once")

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs, key=lambda pair: (pair[1], pair[0])))

    def left_of(self, right: int) -> int | None:
        for left, r in self.pairs:
            if r == right:
                return left
        return None

    def weight(self, g: BipartiteGraph) -> Fraction:
        return sum((g.weight(pair) for pair in self.pairs), Fraction(0))

    def is_right_perfect(self, g: BipartiteGraph) -> bool:
        return len(self.pairs) == g.right_count and self.pairs <= g.edges


def build_state_bipartite(sys: StructuredSystem) -> BipartiteGraph:
    # (x_i, x'_j) whenever x_i -> x_j, i.e. Ā_ji ≠ 0.
    edges = frozenset((j, i) for i, j in sys.a_bar.nonzeros)
    return BipartiteGraph(sys.n, sys.n, edges, state_count=sys.n)


def build_system_bipartite(sys: StructuredSystem, weighted: bool = False) -> BipartiteGraph:
    n = sys.n
    state_edges = {(j, i): Fraction(0) for i, j in sys.a_bar.nonzeros}
    input_edges = {(n + j, k): sys.input_costs[j] for k, j in sys.b_bar.nonzeros}
    weights = {**state_edges, **input_edges}
    return BipartiteGraph(
        n + sys.m,
        n,
        frozenset(weights),
        weights if weighted else None,
        state_count=n,
    )


def _to_networkx(g: BipartiteGraph) -> tuple[nx.Graph, list[tuple[str, int]]]:
    nx_graph = nx.Graph()
    top = [("L", left) for left in range(g.left_count)]
    nx_graph.add_nodes_from(top, bipartite=0)
    nx_graph.add_nodes_from((("R", right) for right in range(g.right_count)), bipartite=1)
    nx_graph.add_edges_from((("L", left), ("R", right)) for left, right in g.sorted_edges())
    return nx_graph, top


def max_matching(g: BipartiteGraph) -> Matching:
    """Maximum cardinality matching (Hopcroft-Karp)."""
    nx_graph, top = _to_networkx(g)
    mate = bipartite.hopcroft_karp_matching(nx_graph, top_nodes=top)
    pairs = frozenset((node[1], mate[node][1]) for node in top if node in mate)
    return Matching(pairs)


def _integer_scale(weights) -> int:
    return math.lcm(1, *(w.denominator for w in weights))


def min_weight_perfect_matching(
    g: BipartiteGraph,
    preference: Mapping[int, int] | None = None,
) -> Matching:
    """
    Minimum total weight matching that saturates every right vertex; left
    vertices may stay unmatched.

    Among optimal matchings, the one with fewest input edges is returned; ties
    after that go to matchings whose input vertices have the smallest
    ``preference`` penalty (non-negative integers, default 0), then to the
    solver's deterministic order.

    Raises ``Infeasible`` when no right-perfect matching exists.
    """
    if g.weights is None:
        raise ValueError("min_weight_perfect_matching needs a weighted graph")
    if g.right_count > g.left_count:
        raise Infeasible(f"{g.right_count} right vertices cannot be saturated by {g.left_count} left vertices")
    if len(max_matching(g)) < g.right_count:
        raise Infeasible("no matching saturates every primed state (the system has a dilation)")

    preference = preference or {}
    penalty_cap = max([0, *preference.values()])
    scale = _integer_scale(g.weights.values())
    rights = g.right_count
    # Lexicographic (weight, input edges, preference) packed into one integer.
    secondary = rights * penalty_cap + 1
    primary = rights * secondary + rights * penalty_cap + 1

    def packed(edge: Edge) -> int:
        left, _ = edge
        cost = int(g.weights[edge] * scale) * primary  # type: ignore[index]
        if g.is_input(left):
            cost += secondary + preference.get(left, 0)
        return cost

    network = nx.DiGraph()
    network.add_node("s", demand=-rights)
    network.add_node("t", demand=rights)
    for left in range(g.left_count):
        network.add_edge("s", ("L", left), capacity=1, weight=0)
    for right in range(g.right_count):
        network.add_edge(("R", right), "t", capacity=1, weight=0)
    for edge in g.sorted_edges():
        left, right = edge
        network.add_edge(("L", left), ("R", right), capacity=1, weight=packed(edge))

    try:
        _, flow = nx.network_simplex(network)
    except nx.NetworkXUnfeasible as exc:  # pragma: no cover - ruled out by the matching check above
        raise Infeasible("no right-perfect matching") from exc

    pairs = frozenset(
        (left, right) for left, right in g.edges if flow[("L", left)].get(("R", right), 0) > 0
    )
    matching = Matching(pairs)
    logger.debug(
        "right-perfect matching of weight %s using %d input edges",
        matching.weight(g),
        input_edge_count(g, matching),
    )
    return matching


def input_edge_count(g: BipartiteGraph, matching: Matching) -> int:
    return sum(1 for left, _ in matching.pairs if g.is_input(left))
