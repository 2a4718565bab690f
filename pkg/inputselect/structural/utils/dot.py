"""
Drawings of the digraphs, bipartite graphs and flow networks of a system.

Each ``*_graph`` function returns a networkx graph whose nodes are the
printed labels (x1, u'2, N1, ...) and whose node and edge attributes are
Graphviz attributes. ``to_dot`` turns such a graph into DOT source.
"""

from __future__ import annotations

import graphviz
import networkx as nx

from inputselect.structural.core import StructuredSystem
from inputselect.structural.flow import FlowNetwork, FlowVector
from inputselect.structural.graph import build_state_digraph, build_system_digraph, state_sccs
from inputselect.structural.matching import build_system_bipartite
from inputselect.structural.utils.choices import (
    ROLE_INPUT,
    ROLE_PRIMED_INPUT,
    ROLE_PRIMED_STATE,
    ROLE_SCC,
    ROLE_SINK,
    ROLE_SOURCE,
    ROLE_STATE,
)

ROLE_STYLE: dict[str, dict[str, str]] = {
    ROLE_SOURCE: {"shape": "doublecircle", "style": "filled", "fillcolor": "#99f4c9"},
    ROLE_SINK: {"shape": "doublecircle", "style": "filled", "fillcolor": "#ededed"},
    ROLE_SCC: {"shape": "box", "style": "rounded"},
    ROLE_PRIMED_STATE: {"shape": "circle", "style": "dashed"},
    ROLE_STATE: {"shape": "circle"},
    ROLE_INPUT: {"shape": "diamond"},
    ROLE_PRIMED_INPUT: {"shape": "diamond", "style": "dashed"},
}


def to_dot(g: nx.Graph, name: str) -> str:
    dot = (graphviz.Digraph if g.is_directed() else graphviz.Graph)(name, graph_attr={"rankdir": "LR"})
    for node, attrs in g.nodes(data=True):
        dot.node(str(node), **{key: str(value) for key, value in attrs.items()})
    for tail, head, attrs in g.edges(data=True):
        dot.edge(str(tail), str(head), **{key: str(value) for key, value in attrs.items()})
    return dot.source


def _left_label(sys: StructuredSystem, v: int) -> str:
    return f"x{v + 1}" if v < sys.n else f"u{v - sys.n + 1}"


def digraph_graph(sys: StructuredSystem, with_inputs: bool = True) -> nx.DiGraph:
    """D(Ā,B̄), or D(Ā) alone when ``with_inputs`` is false."""
    g = (build_system_digraph(sys) if with_inputs else build_state_digraph(sys)).to_networkx()
    for v in g:
        g.nodes[v].update(ROLE_STYLE[ROLE_STATE if v < sys.n else ROLE_INPUT])
    return nx.relabel_nodes(g, {v: _left_label(sys, v) for v in g})


def condensation_graph(sys: StructuredSystem) -> nx.DiGraph:
    """SCCs of D(Ā); non-top-linked ones are drawn bold and tagged N1..Nq."""
    scc = state_sccs(sys)
    tags = {component: f"N{pos + 1}" for pos, component in enumerate(scc.non_top_linked)}

    def label(component: int) -> str:
        members = ",".join(f"x{v + 1}" for v in scc.members(component))
        return f"{tags[component]}: {{{members}}}" if component in tags else f"{{{members}}}"

    g = nx.DiGraph()
    for c in range(len(scc.components)):
        g.add_node(label(c), **ROLE_STYLE[ROLE_SCC], **({"penwidth": "2"} if c in tags else {}))
    g.add_edges_from((label(a), label(b)) for a, b in sorted(scc.dag_edges))
    return g


def bipartite_graph(sys: StructuredSystem, weighted: bool = False) -> nx.Graph:
    bipartite = build_system_bipartite(sys, weighted=weighted)
    g = nx.Graph()
    for v in range(bipartite.left_count):
        g.add_node(_left_label(sys, v), **ROLE_STYLE[ROLE_STATE if v < sys.n else ROLE_INPUT])
    for k in range(bipartite.right_count):
        g.add_node(f"x'{k + 1}", **ROLE_STYLE[ROLE_PRIMED_STATE])
    for v, k in bipartite.sorted_edges():
        attrs = {"label": str(bipartite.weight((v, k)))} if weighted else {}
        g.add_edge(_left_label(sys, v), f"x'{k + 1}", **attrs)
    return g


def flownet_graph(net: FlowNetwork, flow: FlowVector | None = None) -> nx.DiGraph:
    """Edges are labelled ``capacity @ cost``, or ``flow/capacity @ cost`` when a flow is given."""
    g, _ = net.to_networkx()
    for v in g:
        g.nodes[v].update(ROLE_STYLE[v.role])
    for pos, e in enumerate(net.edges):
        attrs = g.edges[e.tail, e.head]
        amount = f"{flow.values[pos]}/" if flow is not None else ""
        attrs["label"] = f"{amount}{attrs.pop('capacity')} @ {attrs.pop('weight')}"
    return nx.relabel_nodes(g, {v: v.label() for v in g})


def digraph_to_dot(sys: StructuredSystem, with_inputs: bool = True) -> str:
    return to_dot(digraph_graph(sys, with_inputs), "D(A,B)" if with_inputs else "D(A)")


def condensation_to_dot(sys: StructuredSystem) -> str:
    return to_dot(condensation_graph(sys), "condensation of D(A)")


def bipartite_to_dot(sys: StructuredSystem, weighted: bool = False) -> str:
    return to_dot(bipartite_graph(sys, weighted), "B(A,B)")


def flownet_to_dot(net: FlowNetwork, flow: FlowVector | None = None) -> str:
    return to_dot(flownet_graph(net, flow), "F(A,B,c)")
