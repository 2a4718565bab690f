import itertools
from fractions import Fraction

import numpy as np
import pytest

from inputselect.structural.core import StructuredSystem
from inputselect.structural.exceptions import Infeasible
from inputselect.structural.matching import (
    BipartiteGraph,
    Matching,
    build_state_bipartite,
    build_system_bipartite,
    input_edge_count,
    max_matching,
    min_weight_perfect_matching,
)
from inputselect.structural.oracle import brute_force_max_matching_size, brute_force_min_perfect_matching_weight
from inputselect.structural.tests.factories import StructuredSystemFactory


class TestBuild:
    def test_state_bipartite(self, four_state: StructuredSystem):
        g = build_state_bipartite(four_state)
        assert (g.left_count, g.right_count) == (4, 4)
        assert len(g.edges) == 7
        # x4 -> x3 gives the edge (x4, x'3).
        assert (3, 2) in g.edges

    def test_system_bipartite_weights(self, four_state: StructuredSystem):
        g = build_system_bipartite(four_state, weighted=True)
        assert g.left_count == 7
        assert len(g.edges) == 14
        assert g.weight((0, 0)) == 0
        assert g.weight((6, 3)) == 10
        assert g.is_input(4) and not g.is_input(3)

    def test_unweighted_edges_weigh_nothing(self, four_state: StructuredSystem):
        assert build_system_bipartite(four_state).weight((6, 3)) == 0

    def test_out_of_range_edge(self):
        with pytest.raises(ValueError):
            BipartiteGraph(1, 1, frozenset({(1, 0)}))


class TestMatching:
    def test_vertices_used_once(self):
        with pytest.raises(ValueError):
            Matching(frozenset({(0, 0), (0, 1)}))

    def test_left_of(self):
        matching = Matching(frozenset({(2, 0), (1, 1)}))
        assert matching.left_of(1) == 1
        assert matching.left_of(2) is None


class TestMaxMatching:
    def test_four_state_state_matching(self, four_state: StructuredSystem):
        assert len(max_matching(build_state_bipartite(four_state))) == 3

    def test_four_state_system_matching_is_perfect(self, four_state: StructuredSystem):
        g = build_system_bipartite(four_state)
        assert max_matching(g).is_right_perfect(g)

    @pytest.mark.parametrize("seed", range(20))
    def test_agrees_with_exhaustive_search(self, seed: int):
        sys = StructuredSystemFactory(n=5, m=2, seed=seed)
        g = build_system_bipartite(sys)
        assert len(max_matching(g)) == brute_force_max_matching_size(g)


class TestMinWeightPerfectMatching:
    def test_needs_weights(self, four_state: StructuredSystem):
        with pytest.raises(ValueError):
            min_weight_perfect_matching(build_system_bipartite(four_state))

    def test_infeasible_with_a_dilation(self, fan_out_dilation: StructuredSystem):
        with pytest.raises(Infeasible):
            min_weight_perfect_matching(build_system_bipartite(fan_out_dilation, weighted=True))

    def test_four_state_uses_one_cheap_input(self, four_state: StructuredSystem):
        g = build_system_bipartite(four_state, weighted=True)
        matching = min_weight_perfect_matching(g)
        assert matching.is_right_perfect(g)
        assert matching.weight(g) == 1
        assert input_edge_count(g, matching) == 1

    def test_preference_breaks_ties(self, four_state_uniform: StructuredSystem):
        g = build_system_bipartite(four_state_uniform, weighted=True)
        # u3 (left vertex 6) carries no penalty; u1 and u2 do.
        matching = min_weight_perfect_matching(g, {4: 2, 5: 1, 6: 0})
        assert [left for left, _ in matching.pairs if g.is_input(left)] == [6]

    def test_fewest_input_edges_among_equal_weights(self):
        # One state, one zero-cost input; the state edge wins the tie.
        sys = StructuredSystem.build(1, 1, [(0, 0)], [(0, 0)], [0])
        g = build_system_bipartite(sys, weighted=True)
        assert input_edge_count(g, min_weight_perfect_matching(g)) == 0

    def test_rational_weights(self):
        sys = StructuredSystem.build(2, 2, [], [(0, 0), (1, 1), (0, 1)], ["1/2", "1/3"])
        g = build_system_bipartite(sys, weighted=True)
        matching = min_weight_perfect_matching(g)
        assert matching.weight(g) == Fraction(5, 6)

    @pytest.mark.parametrize("seed", range(30))
    def test_agrees_with_exhaustive_search(self, seed: int):
        sys = StructuredSystemFactory(n=4, m=3, density=0.4, input_density=0.5, seed=seed)
        g = build_system_bipartite(sys, weighted=True)
        expected = brute_force_min_perfect_matching_weight(g)
        if expected is None:
            with pytest.raises(Infeasible):
                min_weight_perfect_matching(g)
        else:
            assert min_weight_perfect_matching(g).weight(g) == expected

    @pytest.mark.parametrize("seed", range(25))
    def test_feasible_exactly_when_a_maximum_matching_saturates(self, seed: int):
        sys = StructuredSystemFactory(n=4, m=2, density=0.3, input_density=0.3, seed=seed)
        g = build_system_bipartite(sys, weighted=True)
        if len(max_matching(g)) == g.right_count:
            assert min_weight_perfect_matching(g).is_right_perfect(g)
        else:
            assert brute_force_min_perfect_matching_weight(g) is None
            with pytest.raises(Infeasible):
                min_weight_perfect_matching(g)


@pytest.mark.parametrize("seed", range(25))
def test_an_extra_edge_never_hurts(seed: int):
    sys = StructuredSystemFactory(n=4, m=2, density=0.3, input_density=0.4, seed=seed)
    g = build_system_bipartite(sys, weighted=True)
    rng = np.random.default_rng(seed)
    missing = sorted(set(itertools.product(range(g.left_count), range(g.right_count))) - g.edges)
    edge = missing[int(rng.integers(len(missing)))]
    bigger = g.with_edge(edge, Fraction(int(rng.integers(0, 10))))

    assert edge in bigger.edges
    assert len(max_matching(bigger)) >= len(max_matching(g))
    before = brute_force_min_perfect_matching_weight(g)
    if before is not None:
        assert min_weight_perfect_matching(bigger).weight(bigger) <= before
