"""
Minimum cost (and minimum cardinality) constrained input selection.

The approximation runs in two independent stages on F(Ā,B̄,c):

1. a minimum weight perfect matching of B(Ā,B̄), where state edges weigh 0 and
   an edge out of input j weighs p_u(j);
2. a greedy cover giving every non-top-linked SCC its cheapest adjacent input.

Both stages are turned into one integral flow of value q + n whose loaded
(u'_j, t) edges name the selected inputs. The flow-weighted cost of that flow
equals the minimum cost flow optimum of F(Ā,B̄,c), and the selected set costs
at most Δ times the true optimum, where Δ is the largest in-degree of a u'_j.
"""

from __future__ import annotations

import logging
from collections.abc import Collection, Mapping
from dataclasses import dataclass
from fractions import Fraction

from inputselect.structural.controllability import (
    ControllabilityVerdict,
    input_support_of_flow,
    is_controllable_flow,
)
from inputselect.structural.core import InputSet, StructuredMatrix, StructuredSystem, as_cost, validate_system
from inputselect.structural.exceptions import (
    DimensionMismatch,
    InvalidCover,
    InvalidMatching,
    NotControllable,
    NotObservable,
    UncoverableScc,
)
from inputselect.structural.flow import (
    SINK,
    SOURCE,
    FlowNetwork,
    FlowVector,
    Vertex,
    augment_costs,
    build_flow_network,
    restricted_to_edges,
)
from inputselect.structural.graph import SccDecomposition, state_sccs
from inputselect.structural.matching import (
    Matching,
    build_state_bipartite,
    build_system_bipartite,
    max_matching,
    min_weight_perfect_matching,
)
from inputselect.structural.utils.choices import (
    BOUND_DELTA,
    BOUND_DELTA_MINUS_ONE,
    BOUND_EXACT,
    ROLE_INPUT,
    ROLE_PRIMED_INPUT,
    ROLE_PRIMED_STATE,
    ROLE_SCC,
    ROLE_STATE,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SccCover:
    """``assignments[i] = (i, j)``: the i-th non-top-linked SCC is driven through input j."""

    assignments: tuple[tuple[int, int], ...]

    def inputs(self) -> set[int]:
        return {j for _, j in self.assignments}

    def cost(self, costs) -> Fraction:
        return sum((costs[j] for _, j in self.assignments), Fraction(0))


@dataclass(frozen=True)
class SelectionResult:
    inputs: InputSet
    # Each selected input's cost counted once.
    total_cost: Fraction
    certificate: FlowVector
    delta: int
    bound: str
    # Flow-weighted cost of the two-stage flow; equals the minimum cost flow optimum.
    lp_objective: Fraction
    matching: Matching
    cover: SccCover
    matching_weight: Fraction
    cover_cost: Fraction
    effective_delta: int

    @property
    def guarantee(self) -> int:
        """Factor by which ``total_cost`` may exceed the optimum."""
        return self.effective_delta


def _cover_candidates(net: FlowNetwork) -> list[list[int]]:
    return [
        sorted(e.head.index for e in net.edges_out_of(Vertex(ROLE_SCC, i)) if e.head.role == ROLE_PRIMED_INPUT)
        for i in range(net.q)
    ]


def _cheapest(candidates: list[int], costs) -> list[int]:
    best = min(costs[j] for j in candidates)
    return [j for j in candidates if costs[j] == best]


def greedy_scc_cover(
    sys: StructuredSystem,
    scc: SccDecomposition,
    net: FlowNetwork,
    selected: Collection[int] = (),
) -> SccCover:
    """
    Give each non-top-linked SCC its cheapest adjacent input. Among equally
    cheap inputs, one already in ``selected`` (or picked for an earlier SCC)
    wins, then the lowest index.
    """
    assert net.q == scc.q
    chosen = set(selected)
    assignments = []
    for i, candidates in enumerate(_cover_candidates(net)):
        if not candidates:
            members = [x + 1 for x in scc.members(scc.non_top_linked[i])]
            raise UncoverableScc(f"no input reaches the SCC of states {members}")
        cheapest = _cheapest(candidates, sys.input_costs)
        reused = [j for j in cheapest if j in chosen]
        j = reused[0] if reused else cheapest[0]
        if len(cheapest) > 1:
            logger.info("N%d: %d inputs tie at cost %s, took u%d", i + 1, len(cheapest), sys.input_costs[j], j + 1)
        chosen.add(j)
        assignments.append((i, j))
    return SccCover(tuple(assignments))


def construct_flow_vector(net: FlowNetwork, matching: Matching, cover: SccCover) -> FlowVector:
    """
    Unit paths s -> x'_k -> (x_r | u_j -> u'_j) -> t for every matched pair and
    s -> N_i -> u'_j -> t for every cover assignment. ``matching`` uses the
    B(Ā,B̄) numbering: left vertices at or above n are inputs.
    """
    n = net.n
    if len(matching) != n or {right for _, right in matching.pairs} != set(range(n)):
        raise InvalidMatching("the matching must saturate every primed state")
    if sorted(i for i, _ in cover.assignments) != list(range(net.q)):
        raise InvalidCover(f"the cover must assign each of the {net.q} non-top-linked SCCs exactly once")

    flows: dict[tuple[Vertex, Vertex], int] = {}

    def push(tail: Vertex, head: Vertex) -> None:
        if not net.has_edge(tail, head):
            raise InvalidMatching(f"{tail.label()}->{head.label()} is not an edge of the flow network")
        flows[(tail, head)] = flows.get((tail, head), 0) + 1

    for left, k in matching.pairs:
        primed = Vertex(ROLE_PRIMED_STATE, k)
        push(SOURCE, primed)
        if left < n:
            push(primed, Vertex(ROLE_STATE, left))
            push(Vertex(ROLE_STATE, left), SINK)
        else:
            j = left - n
            push(primed, Vertex(ROLE_INPUT, j))
            push(Vertex(ROLE_INPUT, j), Vertex(ROLE_PRIMED_INPUT, j))
            push(Vertex(ROLE_PRIMED_INPUT, j), SINK)

    # The cover has q entries, one per non-top-linked SCC.
    for i, j in cover.assignments:
        scc_node = Vertex(ROLE_SCC, i)
        if not net.has_edge(scc_node, Vertex(ROLE_PRIMED_INPUT, j)):
            raise InvalidCover(f"u{j + 1} does not reach N{i + 1}")
        push(SOURCE, scc_node)
        push(scc_node, Vertex(ROLE_PRIMED_INPUT, j))
        push(Vertex(ROLE_PRIMED_INPUT, j), SINK)

    f = FlowVector.from_mapping(net, flows)
    problems = f.violations()
    if problems:
        raise InvalidMatching("; ".join(problems))
    assert f.value == net.q + net.n
    return f


def _in_degrees(net: FlowNetwork) -> list[int]:
    return [net.in_degree(Vertex(ROLE_PRIMED_INPUT, j)) for j in range(net.m)]


def compute_delta(net: FlowNetwork) -> int:
    """Largest in-degree over the u'_j vertices (0 when there are no inputs)."""
    degrees = _in_degrees(net)
    if not degrees:
        return 0
    delta = max(degrees)
    assert 1 <= delta <= net.q + 1, f"Δ={delta} outside [1, {net.q + 1}]"
    return delta


def classify_special_case(sys: StructuredSystem, scc: SccDecomposition | None = None) -> str:
    scc = scc or state_sccs(sys)
    if scc.is_irreducible:
        return BOUND_EXACT
    if len(max_matching(build_state_bipartite(sys))) == sys.n:
        return BOUND_DELTA_MINUS_ONE
    return BOUND_DELTA


def effective_delta(net: FlowNetwork, bound: str) -> int:
    """
    Δ after removing the edges that provably carry no flow in the special
    cases: the (u_j, u'_j) edges when B(Ā) has a perfect matching, the SCC
    edges when D(Ā) is irreducible.
    """
    if bound == BOUND_DELTA_MINUS_ONE:
        pruned = restricted_to_edges(net, (e for e in net.edges if e.tail.role != ROLE_INPUT))
    elif bound == BOUND_EXACT:
        pruned = restricted_to_edges(net, (e for e in net.edges if e.tail.role != ROLE_SCC))
    else:
        return compute_delta(net)
    return max([1, *_in_degrees(pruned)])


def _cover_preference(sys: StructuredSystem, net: FlowNetwork) -> Mapping[int, int]:
    """
    Matching tie-break penalty per input vertex (B(Ā,B̄) numbering): q minus the
    number of SCCs for which that input is a cheapest cover candidate.
    """
    coverage = [0] * sys.m
    for candidates in _cover_candidates(net):
        if candidates:
            for j in _cheapest(candidates, sys.input_costs):
                coverage[j] += 1
    return {sys.n + j: net.q - coverage[j] for j in range(sys.m)}


def _require_controllable(sys: StructuredSystem, scc: SccDecomposition) -> ControllabilityVerdict:
    verdict = is_controllable_flow(sys, scc)
    if not verdict.controllable:
        raise NotControllable(
            f"the system is not structurally controllable even with all {sys.m} inputs "
            f"(max flow {verdict.max_flow_value} < q + n = {verdict.q + verdict.n})",
            verdict,
        )
    return verdict


def solve_minccis_approx(sys: StructuredSystem) -> SelectionResult:
    validate_system(sys)
    scc = state_sccs(sys)
    _require_controllable(sys, scc)

    net = augment_costs(build_flow_network(sys, scc), sys.input_costs)
    bipartite_graph = build_system_bipartite(sys, weighted=True)
    matching = min_weight_perfect_matching(bipartite_graph, _cover_preference(sys, net))
    matched_inputs = {left - sys.n for left, _ in matching.pairs if left >= sys.n}
    cover = greedy_scc_cover(sys, scc, net, selected=matched_inputs)

    two_stage = construct_flow_vector(net, matching, cover)
    matching_weight = matching.weight(bipartite_graph)
    cover_cost = cover.cost(sys.input_costs)
    lp_objective = two_stage.objective()
    assert lp_objective == matching_weight + cover_cost

    bound = classify_special_case(sys, scc)
    certificate = two_stage
    if bound == BOUND_EXACT and matched_inputs:
        # The single SCC is reached by every matched input; no extra input is needed.
        cheapest = min(sorted(matched_inputs), key=lambda j: sys.input_costs[j])
        certificate = construct_flow_vector(net, matching, SccCover(((0, cheapest),)))

    inputs = input_support_of_flow(certificate)
    total_cost = certificate.support_cost()
    assert total_cost == sys.cost_of(inputs)
    assert total_cost <= lp_objective

    result = SelectionResult(
        inputs=inputs,
        total_cost=total_cost,
        certificate=certificate,
        delta=compute_delta(net),
        bound=bound,
        lp_objective=lp_objective,
        matching=matching,
        cover=cover,
        matching_weight=matching_weight,
        cover_cost=cover_cost,
        effective_delta=effective_delta(net, bound),
    )
    logger.info(
        "selected %s at cost %s (LP %s, Δ=%d, bound %s)",
        inputs.one_based(),
        total_cost,
        lp_objective,
        result.delta,
        bound,
    )
    return result


def solve_mincis_approx(sys: StructuredSystem) -> SelectionResult:
    """Fewest inputs: the cost problem with every input costing 1."""
    result = solve_minccis_approx(sys.with_costs([1] * sys.m))
    assert result.total_cost == len(result.inputs)
    return result


def solve_min_cost_output_selection(
    a_bar: StructuredMatrix,
    c_bar: StructuredMatrix,
    p_y,
) -> SelectionResult:
    """
    Cheapest set of output rows of C̄ keeping (Ā, C̄) structurally observable,
    solved as input selection on (Āᵀ, C̄ᵀ). Selected indices are rows of C̄.
    """
    if c_bar.cols != a_bar.rows:
        raise DimensionMismatch(f"C̄ must have {a_bar.rows} columns, got {c_bar.cols}")
    dual = StructuredSystem(a_bar.transpose(), c_bar.transpose(), tuple(as_cost(c) for c in p_y))
    try:
        return solve_minccis_approx(dual)
    except NotControllable as exc:
        raise NotObservable(
            str(exc).replace("controllable", "observable").replace("inputs", "outputs"),
            exc.verdict,
        ) from exc
