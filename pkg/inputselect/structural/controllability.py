"""
Two independent structural controllability deciders.

``is_controllable_lin`` uses accessibility of every non-top-linked SCC plus a
perfect matching of B(Ā,B̄) (no dilation). ``is_controllable_flow`` asks
whether the maximum flow of F(Ā,B̄) reaches q + n. They must always agree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from inputselect.structural.core import InputSet, StructuredSystem
from inputselect.structural.exceptions import DeciderDisagreement, FlowTooSmall
from inputselect.structural.flow import SINK, FlowVector, Vertex, build_flow_network, max_flow
from inputselect.structural.graph import SccDecomposition, state_sccs
from inputselect.structural.matching import build_state_bipartite, build_system_bipartite, max_matching
from inputselect.structural.utils.choices import METHOD_FLOW, METHOD_LIN, ROLE_PRIMED_INPUT

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ControllabilityVerdict:
    controllable: bool
    q: int
    n: int
    method: str
    accessible: bool | None = None
    dilation_free: bool | None = None
    max_flow_value: int | None = None

    def __post_init__(self):
        if self.method == METHOD_LIN:
            assert self.controllable == (bool(self.accessible) and bool(self.dilation_free))
        elif self.method == METHOD_FLOW:
            assert self.max_flow_value is not None
            assert self.controllable == (self.max_flow_value >= self.q + self.n)

    def __bool__(self) -> bool:
        return self.controllable


@dataclass(frozen=True)
class Diagnosis:
    """Why a system fails: SCCs no input reaches, and primed states a maximum matching leaves bare."""

    inaccessible_sccs: tuple[tuple[int, ...], ...]
    unmatched_states: tuple[int, ...]
    matching_size: int

    @property
    def ok(self) -> bool:
        return not self.inaccessible_sccs and not self.unmatched_states


def _uncovered_components(sys: StructuredSystem, scc: SccDecomposition) -> list[int]:
    driven = {r for r, _ in sys.b_bar.nonzeros}
    return [c for c in scc.non_top_linked if not driven.intersection(scc.members(c))]


def check_accessibility(sys: StructuredSystem, scc: SccDecomposition) -> bool:
    """Every non-top-linked SCC has a state with a direct input."""
    return not _uncovered_components(sys, scc)


def check_no_dilation(sys: StructuredSystem) -> bool:
    return len(max_matching(build_system_bipartite(sys))) == sys.n


def is_controllable_lin(sys: StructuredSystem, scc: SccDecomposition | None = None) -> ControllabilityVerdict:
    scc = scc or state_sccs(sys)
    accessible = check_accessibility(sys, scc)
    dilation_free = check_no_dilation(sys)
    return ControllabilityVerdict(
        controllable=accessible and dilation_free,
        q=scc.q,
        n=sys.n,
        method=METHOD_LIN,
        accessible=accessible,
        dilation_free=dilation_free,
    )


def is_controllable_flow(sys: StructuredSystem, scc: SccDecomposition | None = None) -> ControllabilityVerdict:
    scc = scc or state_sccs(sys)
    if sys.n:
        assert scc.q >= 1
    value = max_flow(build_flow_network(sys, scc)).value
    assert value <= scc.q + sys.n
    return ControllabilityVerdict(
        controllable=value >= scc.q + sys.n,
        q=scc.q,
        n=sys.n,
        method=METHOD_FLOW,
        max_flow_value=value,
    )


def verify_deciders(
    sys: StructuredSystem, scc: SccDecomposition | None = None
) -> tuple[ControllabilityVerdict, ControllabilityVerdict]:
    """Run both deciders; raise ``DeciderDisagreement`` if they differ."""
    scc = scc or state_sccs(sys)
    lin = is_controllable_lin(sys, scc)
    flow = is_controllable_flow(sys, scc)
    if lin.controllable != flow.controllable:
        logger.error("deciders disagree: lin=%s flow=%s on %r", lin, flow, sys)
        raise DeciderDisagreement(f"lin says {lin.controllable}, flow says {flow.controllable}")
    return lin, flow


def input_support_of_flow(f: FlowVector) -> InputSet:
    """Inputs whose (u'_j, t) edge carries flow, for a flow of value at least q + n."""
    net = f.network
    if f.value < net.q + net.n:
        raise FlowTooSmall(f"flow value {f.value} is below q + n = {net.q + net.n}")
    return InputSet(tuple(j for j in range(net.m) if f.flow(Vertex(ROLE_PRIMED_INPUT, j), SINK) > 0))


def diagnose(sys: StructuredSystem, scc: SccDecomposition | None = None) -> Diagnosis:
    scc = scc or state_sccs(sys)
    matching = max_matching(build_system_bipartite(sys))
    matched = {right for _, right in matching.pairs}
    return Diagnosis(
        inaccessible_sccs=tuple(scc.members(c) for c in _uncovered_components(sys, scc)),
        unmatched_states=tuple(k for k in range(sys.n) if k not in matched),
        matching_size=len(matching),
    )


def minimum_inputs_lower_bound(sys: StructuredSystem) -> int:
    """
    No controllable selection can use fewer inputs than this: each primed
    state left over by a maximum matching of B(Ā) needs its own input, and
    at least one input is always needed.
    """
    if not sys.n:
        return 0
    return max(1, sys.n - len(max_matching(build_state_bipartite(sys))))
