import itertools
import logging
from fractions import Fraction

import pytest

from inputselect.structural.controllability import is_controllable_flow, is_controllable_lin
from inputselect.structural.core import StructuredMatrix, StructuredSystem, restrict_inputs
from inputselect.structural.exceptions import (
    DimensionMismatch,
    InvalidCover,
    InvalidMatching,
    NotControllable,
    NotObservable,
    UncoverableScc,
)
from inputselect.structural.flow import build_cost_network, min_cost_flow
from inputselect.structural.graph import state_sccs
from inputselect.structural.matching import Matching
from inputselect.structural.selection import (
    SccCover,
    classify_special_case,
    compute_delta,
    construct_flow_vector,
    effective_delta,
    greedy_scc_cover,
    solve_min_cost_output_selection,
    solve_minccis_approx,
    solve_mincis_approx,
)
from inputselect.structural.tests.factories import StructuredSystemFactory
from inputselect.structural.utils.choices import BOUND_DELTA, BOUND_DELTA_MINUS_ONE, BOUND_EXACT

# x1 <-> x2 and x1 <-> x3: one SCC, but x'2 and x'3 both need x1.
STAR_A = [(1, 0), (0, 1), (2, 0), (0, 2)]
# u1 -> x2, u2 -> x3, u3 -> x1.
STAR_B = [(1, 0), (2, 1), (0, 2)]

# Two independent self-looped states.
DIAGONAL_A = [(0, 0), (1, 1)]
# u1 -> x1, x2; u2 -> x1; u3 -> x2.
DIAGONAL_B = [(0, 0), (1, 0), (0, 1), (1, 2)]


@pytest.fixture
def star() -> StructuredSystem:
    return StructuredSystem.build(3, 3, STAR_A, STAR_B, [3, 2, 1])


@pytest.fixture
def diagonal() -> StructuredSystem:
    return StructuredSystem.build(2, 3, DIAGONAL_A, DIAGONAL_B, [3, 1, 1])


class TestSolveMinccisApprox:
    def test_four_state(self, four_state: StructuredSystem):
        result = solve_minccis_approx(four_state)
        assert result.inputs.one_based() == [2, 3]
        assert result.total_cost == 11
        assert result.lp_objective == 12
        assert result.delta == 3
        assert result.bound == BOUND_DELTA
        assert result.guarantee == 3
        assert result.matching_weight == 1
        assert result.cover_cost == 11
        assert result.certificate.value == 6

    def test_lp_objective_is_the_min_cost_flow_optimum(self, four_state: StructuredSystem):
        result = solve_minccis_approx(four_state)
        assert result.lp_objective == min_cost_flow(build_cost_network(four_state), 6).objective()

    def test_selection_is_controllable(self, four_state: StructuredSystem):
        result = solve_minccis_approx(four_state)
        restricted = restrict_inputs(four_state, result.inputs)
        assert is_controllable_lin(restricted)
        assert is_controllable_flow(restricted)

    def test_uniform_costs_pick_u3(self, four_state_uniform: StructuredSystem):
        result = solve_minccis_approx(four_state_uniform)
        assert result.inputs.one_based() == [3]
        assert result.total_cost == 1
        assert result.lp_objective == 3

    def test_not_controllable(self, fan_out_inaccessible: StructuredSystem):
        with pytest.raises(NotControllable) as exc_info:
            solve_minccis_approx(fan_out_inaccessible)
        assert exc_info.value.verdict is not None
        assert exc_info.value.verdict.max_flow_value == 2

    def test_no_inputs(self):
        with pytest.raises(NotControllable):
            solve_minccis_approx(StructuredSystem.build(2, 0, [(1, 0)], []))

    def test_zero_costs(self, four_state: StructuredSystem):
        result = solve_minccis_approx(four_state.with_costs([0, 0, 0]))
        assert result.total_cost == 0

    def test_irreducible_prunes_the_cover(self, star: StructuredSystem):
        result = solve_minccis_approx(star)
        assert result.bound == BOUND_EXACT
        # The matching already uses u2, which reaches the single SCC.
        assert result.inputs.one_based() == [2]
        assert result.total_cost == 2
        assert result.lp_objective == 3
        assert result.effective_delta == 1

    def test_perfect_state_matching_skips_input_edges(self, diagonal: StructuredSystem):
        result = solve_minccis_approx(diagonal)
        assert result.bound == BOUND_DELTA_MINUS_ONE
        assert result.matching_weight == 0
        assert result.inputs.one_based() == [2, 3]
        assert result.total_cost == 2
        assert result.delta == 3
        assert result.effective_delta == 2


class TestSolveMincisApprox:
    def test_four_state(self, four_state: StructuredSystem):
        result = solve_mincis_approx(four_state)
        assert result.inputs.one_based() == [3]
        assert result.total_cost == 1


class TestOutputSelection:
    def test_dual_of_four_state(self, four_state: StructuredSystem):
        a_bar = four_state.a_bar.transpose()
        c_bar = four_state.b_bar.transpose()
        result = solve_min_cost_output_selection(a_bar, c_bar, [1, 1, 10])
        assert result.inputs.one_based() == [2, 3]
        assert result.total_cost == 11

    def test_not_observable(self):
        a_bar = StructuredMatrix.from_entries(2, 2, [(1, 0)])
        c_bar = StructuredMatrix.from_entries(1, 2, [(0, 0)])
        with pytest.raises(NotObservable) as exc_info:
            solve_min_cost_output_selection(a_bar, c_bar, [1])
        assert "observable" in str(exc_info.value)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            solve_min_cost_output_selection(StructuredMatrix(2, 2), StructuredMatrix(1, 3), [1])


class TestGreedySccCover:
    def test_cheapest_input_per_scc(self, four_state: StructuredSystem):
        scc = state_sccs(four_state)
        cover = greedy_scc_cover(four_state, scc, build_cost_network(four_state, scc))
        assert cover.assignments == ((0, 1), (1, 2))
        assert cover.cost(four_state.input_costs) == 11

    def test_ties_prefer_selected_inputs(self, four_state_uniform: StructuredSystem):
        scc = state_sccs(four_state_uniform)
        net = build_cost_network(four_state_uniform, scc)
        assert greedy_scc_cover(four_state_uniform, scc, net).assignments == ((0, 1), (1, 2))
        assert greedy_scc_cover(four_state_uniform, scc, net, selected={2}).inputs() == {2}

    def test_ties_are_logged(self, four_state_uniform: StructuredSystem, caplog):
        scc = state_sccs(four_state_uniform)
        net = build_cost_network(four_state_uniform, scc)
        with caplog.at_level(logging.INFO, logger="inputselect"):
            greedy_scc_cover(four_state_uniform, scc, net)
        assert "N1: 2 inputs tie at cost 1, took u2" in caplog.text

    @pytest.mark.parametrize("seed", range(30))
    def test_cover_cost_is_the_cheapest_assignment(self, seed: int):
        sys = StructuredSystemFactory(n=6, m=3, density=0.2, input_density=0.4, seed=seed)
        scc = state_sccs(sys)
        net = build_cost_network(sys, scc)
        adjacent = [
            sorted({j for r, j in sys.b_bar.nonzeros if r in scc.members(component)})
            for component in scc.non_top_linked
        ]
        if not all(adjacent):
            with pytest.raises(UncoverableScc):
                greedy_scc_cover(sys, scc, net)
            return
        cheapest = min(
            sum((sys.input_costs[j] for j in choice), Fraction(0)) for choice in itertools.product(*adjacent)
        )
        for selected in ((), set(range(sys.m))):
            cover = greedy_scc_cover(sys, scc, net, selected=selected)
            assert cover.cost(sys.input_costs) == cheapest
            assert all(j in adjacent[i] for i, j in cover.assignments)

    def test_uncoverable(self, fan_out_inaccessible: StructuredSystem):
        scc = state_sccs(fan_out_inaccessible)
        with pytest.raises(UncoverableScc):
            greedy_scc_cover(fan_out_inaccessible, scc, build_cost_network(fan_out_inaccessible, scc))


class TestConstructFlowVector:
    def test_rejects_partial_matching(self, four_state: StructuredSystem):
        net = build_cost_network(four_state)
        with pytest.raises(InvalidMatching):
            construct_flow_vector(net, Matching(frozenset({(0, 0)})), SccCover(((0, 1), (1, 2))))

    def test_rejects_wrong_cover(self, four_state: StructuredSystem):
        net = build_cost_network(four_state)
        matching = Matching(frozenset({(6, 0), (1, 1), (0, 2), (3, 3)}))
        with pytest.raises(InvalidCover):
            construct_flow_vector(net, matching, SccCover(((0, 1),)))
        with pytest.raises(InvalidCover):
            # u1 does not reach N1 = {x2}.
            construct_flow_vector(net, matching, SccCover(((0, 0), (1, 2))))

    def test_builds_a_feasible_flow(self, four_state: StructuredSystem):
        net = build_cost_network(four_state)
        matching = Matching(frozenset({(6, 0), (1, 1), (0, 2), (3, 3)}))
        f = construct_flow_vector(net, matching, SccCover(((0, 2), (1, 2))))
        assert f.is_feasible()
        assert f.value == 6
        assert f.objective() == 30
        assert f.support_cost() == 10


class TestDelta:
    def test_four_state(self, four_state: StructuredSystem):
        assert compute_delta(build_cost_network(four_state)) == 3

    def test_no_inputs(self):
        assert compute_delta(build_cost_network(StructuredSystem.build(1, 0, [], []))) == 0

    def test_classify(self, four_state, star, diagonal):
        assert classify_special_case(four_state) == BOUND_DELTA
        assert classify_special_case(star) == BOUND_EXACT
        assert classify_special_case(diagonal) == BOUND_DELTA_MINUS_ONE

    def test_effective_delta_without_special_case(self, four_state: StructuredSystem):
        assert effective_delta(build_cost_network(four_state), BOUND_DELTA) == 3


def test_rational_costs(four_state: StructuredSystem):
    result = solve_minccis_approx(four_state.with_costs(["1/2", "1/3", "5/2"]))
    assert result.inputs.one_based() == [2, 3]
    assert result.total_cost == Fraction(17, 6)
    assert result.lp_objective == Fraction(19, 6)


@pytest.mark.parametrize("factor", [2, 7, Fraction(1, 3)])
@pytest.mark.parametrize("seed", range(15))
def test_scaling_every_cost_scales_the_selection(seed: int, factor):
    # Powers of two make every subset sum distinct, so the optimal matching and cover are unique.
    sys = StructuredSystemFactory(n=5, m=4, density=0.3, input_density=0.5, seed=seed)
    sys = sys.with_costs([2**j for j in range(sys.m)])
    scaled = sys.with_costs([factor * c for c in sys.input_costs])
    if not is_controllable_flow(sys):
        with pytest.raises(NotControllable):
            solve_minccis_approx(scaled)
        return
    base, result = solve_minccis_approx(sys), solve_minccis_approx(scaled)
    assert result.inputs == base.inputs
    assert result.total_cost == factor * base.total_cost
    assert result.lp_objective == factor * base.lp_objective


@pytest.mark.parametrize("seed", range(20))
def test_output_selection_is_input_selection_on_the_transpose(seed: int):
    sys = StructuredSystemFactory(n=5, m=3, density=0.3, input_density=0.5, seed=seed)
    a_bar, c_bar = sys.a_bar.transpose(), sys.b_bar.transpose()
    dual = StructuredSystem(a_bar.transpose(), c_bar.transpose(), sys.input_costs)
    if not is_controllable_flow(dual):
        with pytest.raises(NotObservable):
            solve_min_cost_output_selection(a_bar, c_bar, sys.input_costs)
        return
    outputs, inputs = solve_min_cost_output_selection(a_bar, c_bar, sys.input_costs), solve_minccis_approx(dual)
    assert outputs.inputs == inputs.inputs
    assert outputs.total_cost == inputs.total_cost
    assert outputs.lp_objective == inputs.lp_objective
