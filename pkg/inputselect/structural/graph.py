"""
State and system digraphs of a structured system and the strongly connected
component decomposition of the state digraph.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import networkx as nx

from inputselect.structural.core import StructuredSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Digraph:
    """
    Vertices are ``0..vertex_count-1``; ``adjacency[v]`` lists out-neighbours in
    ascending order. In a system digraph states come first, then inputs.
    """

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_arcs(cls, vertex_count: int, arcs) -> Digraph:
        out: list[set[int]] = [set() for _ in range(vertex_count)]
        for tail, head in arcs:
            out[tail].add(head)
        return cls(vertex_count, tuple(tuple(sorted(heads)) for heads in out))

    def arcs(self) -> list[tuple[int, int]]:
        return [(tail, head) for tail, heads in enumerate(self.adjacency) for head in heads]

    def arc_count(self) -> int:
        return sum(len(heads) for heads in self.adjacency)

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.arcs())
        return g


@dataclass(frozen=True)
class SccDecomposition:
    """
    SCCs of the state digraph. Component ids are ordered by the smallest state
    they contain; ``non_top_linked`` lists the ids with no incoming condensation arc.
    """

    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    dag_edges: frozenset[tuple[int, int]]
    non_top_linked: tuple[int, ...]

    @property
    def q(self) -> int:
        return len(self.non_top_linked)

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    def members(self, component: int) -> tuple[int, ...]:
        return self.components[component]


def build_state_digraph(sys: StructuredSystem) -> Digraph:
    # Ā_ij ≠ 0 means x_j drives x_i.
    return Digraph.from_arcs(sys.n, ((j, i) for i, j in sys.a_bar.nonzeros))


def build_system_digraph(sys: StructuredSystem) -> Digraph:
    n = sys.n
    state_arcs = ((j, i) for i, j in sys.a_bar.nonzeros)
    input_arcs = ((n + j, i) for i, j in sys.b_bar.nonzeros)
    return Digraph.from_arcs(n + sys.m, [*state_arcs, *input_arcs])


def scc_decompose(g: Digraph) -> SccDecomposition:
    nx_graph = g.to_networkx()
    components = sorted(
        (tuple(sorted(component)) for component in nx.strongly_connected_components(nx_graph)),
        key=lambda members: members[0],
    )
    component_of = [0] * g.vertex_count
    for cid, members in enumerate(components):
        for v in members:
            component_of[v] = cid

    dag_edges = frozenset(
        (component_of[tail], component_of[head])
        for tail, head in g.arcs()
        if component_of[tail] != component_of[head]
    )
    has_incoming = {head for _, head in dag_edges}
    non_top_linked = tuple(cid for cid in range(len(components)) if cid not in has_incoming)
    if g.vertex_count:
        assert non_top_linked, "a nonempty condensation always has a source"

    logger.debug("%d SCCs, %d non-top-linked", len(components), len(non_top_linked))
    return SccDecomposition(tuple(component_of), tuple(components), dag_edges, non_top_linked)


def state_sccs(sys: StructuredSystem) -> SccDecomposition:
    return scc_decompose(build_state_digraph(sys))
