"""
Exhaustive solvers used to cross-check the polynomial ones on small instances.
They rely only on the matching/accessibility decider, never on
the flow machinery they are meant to check.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from inputselect.structural.controllability import is_controllable_lin
from inputselect.structural.core import InputSet, StructuredSystem, restrict_inputs, validate_system
from inputselect.structural.exceptions import NotControllable, TooLarge
from inputselect.structural.flow import SOURCE, FlowNetwork, FlowVector
from inputselect.structural.graph import state_sccs
from inputselect.structural.matching import BipartiteGraph

logger = logging.getLogger(__name__)

DEFAULT_SUBSET_LIMIT = 16
DEFAULT_EDGE_LIMIT = 24


@dataclass(frozen=True)
class OracleResult:
    optimum_cost: Fraction
    optimal_sets: tuple[InputSet, ...]
    subsets_examined: int

    @property
    def optimum_size(self) -> int:
        return min(len(s) for s in self.optimal_sets)


def brute_force_minccis(
    sys: StructuredSystem,
    limit: int = DEFAULT_SUBSET_LIMIT,
    all_optimal: bool = True,
) -> OracleResult:
    """
    Cheapest input subsets that keep the system structurally controllable.

    Subsets are visited in nondecreasing cost order; the scan stops after the
    first feasible cost level (or at the first feasible subset when
    ``all_optimal`` is false).
    """
    validate_system(sys)
    if sys.m > limit:
        raise TooLarge(f"{sys.m} inputs exceed the brute-force limit of {limit}")
    scc = state_sccs(sys)

    # Accessibility only depends on which SCCs each input touches: filter on that first.
    needed = set(scc.non_top_linked)
    reaches = [{scc.component_of[r] for r in sys.b_bar.column(j)} & needed for j in range(sys.m)]

    subsets = [
        combo for size in range(1, sys.m + 1) for combo in itertools.combinations(range(sys.m), size)
    ]
    subsets.sort(key=lambda combo: (sys.cost_of(combo), len(combo), combo))

    examined = 0
    optimum: Fraction | None = None
    optimal: list[InputSet] = []
    for combo in subsets:
        cost = sys.cost_of(combo)
        if optimum is not None and (cost > optimum or not all_optimal):
            break
        examined += 1
        if set().union(*(reaches[j] for j in combo)) != needed:
            continue
        if is_controllable_lin(restrict_inputs(sys, InputSet(combo)), scc).controllable:
            optimum = cost
            optimal.append(InputSet(combo))

    if optimum is None:
        raise NotControllable("no subset of the inputs makes the system structurally controllable")
    logger.debug("brute force: optimum %s after %d subsets", optimum, examined)
    return OracleResult(optimum, tuple(sorted(optimal, key=lambda s: s.indices)), examined)


def _splits(amount: int, capacities: list[int]) -> Iterator[tuple[int, ...]]:
    """Every way to spread ``amount`` over edges with the given capacities."""
    if not capacities:
        if amount == 0:
            yield ()
        return
    head, rest = capacities[0], capacities[1:]
    room = sum(rest)
    for x in range(min(amount, head) + 1):
        if amount - x <= room:
            for tail in _splits(amount - x, rest):
                yield (x, *tail)


def enumerate_feasible_flows(
    net: FlowNetwork,
    value: int,
    edge_limit: int = DEFAULT_EDGE_LIMIT,
) -> list[FlowVector]:
    """
    All integral feasible flows of exactly ``value``. The flow network is
    acyclic, so vertices are settled in topological order: whatever enters a
    vertex is split over its out-edges in every possible way.
    """
    if len(net.edges) > edge_limit:
        raise TooLarge(f"{len(net.edges)} edges exceed the enumeration limit of {edge_limit}")
    g, _ = net.to_networkx()
    rank = {v: pos for pos, v in enumerate(net.vertices)}
    order = [v for v in nx.lexicographical_topological_sort(g, key=rank.__getitem__) if v != net.sink]
    outgoing = {v: [pos for pos, e in enumerate(net.edges) if e.tail == v] for v in order}

    flows: list[FlowVector] = []
    values = [0] * len(net.edges)

    def settle(step: int) -> None:
        if step == len(order):
            flows.append(FlowVector(net, tuple(values)))
            return
        v = order[step]
        amount = value if v == SOURCE else sum(values[pos] for pos, e in enumerate(net.edges) if e.head == v)
        positions = outgoing[v]
        for split in _splits(amount, [net.edges[pos].capacity for pos in positions]):
            for pos, x in zip(positions, split):
                values[pos] = x
            settle(step + 1)
        for pos in positions:
            values[pos] = 0

    settle(0)
    return flows


def brute_force_mcff(net: FlowNetwork, value: int, edge_limit: int = DEFAULT_EDGE_LIMIT) -> Fraction | None:
    """Smallest fixed-charge cost (each loaded edge charged once) of a flow of ``value``."""
    flows = enumerate_feasible_flows(net, value, edge_limit)
    return min((f.support_cost() for f in flows), default=None)


def brute_force_max_matching_size(g: BipartiteGraph) -> int:
    neighbours = [[left for left, r in g.sorted_edges() if r == right] for right in range(g.right_count)]

    def best(right: int, used: frozenset[int]) -> int:
        if right == g.right_count:
            return 0
        result = best(right + 1, used)
        for left in neighbours[right]:
            if left not in used:
                result = max(result, 1 + best(right + 1, used | {left}))
        return result

    return best(0, frozenset())


def brute_force_min_perfect_matching_weight(g: BipartiteGraph) -> Fraction | None:
    """Lightest matching saturating every right vertex, or None if there is none."""
    neighbours = [[left for left, r in g.sorted_edges() if r == right] for right in range(g.right_count)]

    def best(right: int, used: frozenset[int]) -> Fraction | None:
        if right == g.right_count:
            return Fraction(0)
        options = []
        for left in neighbours[right]:
            if left not in used:
                rest = best(right + 1, used | {left})
                if rest is not None:
                    options.append(g.weight((left, right)) + rest)
        return min(options, default=None)

    return best(0, frozenset())
