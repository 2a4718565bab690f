"""
Report dictionaries written by the management commands (``--json``) and the
schema they follow. Costs are exact rationals rendered as strings ("11",
"21/2"); state, input and output numbers are 1-based.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from inputselect.structural.controllability import ControllabilityVerdict, Diagnosis
from inputselect.structural.graph import SccDecomposition
from inputselect.structural.oracle import OracleResult
from inputselect.structural.selection import SelectionResult

SCHEMA_VERSION = 1

REPORT_SCHEMA: dict[str, dict[str, type | tuple[type, ...]]] = {
    "check": {
        "schema_version": int,
        "command": str,
        "n": int,
        "m": int,
        "q": int,
        "discrete": bool,
        "controllable": bool,
        "non_top_linked": list,
        "lin": dict,
        "flow": dict,
        "diagnostics": dict,
    },
    "select": {
        "schema_version": int,
        "command": str,
        "objective": str,
        "selected": list,
        "labels": list,
        "total_cost": str,
        "lp_objective": str,
        "delta": int,
        "effective_delta": int,
        "bound": str,
        "matching_weight": str,
        "cover_cost": str,
        "lower_bound": int,
        "certificate": dict,
    },
    "oracle": {
        "schema_version": int,
        "command": str,
        "optimum_cost": str,
        "optimal_sets": list,
        "subsets_examined": int,
        "approx_cost": (str, type(None)),
        "ratio": (str, type(None)),
    },
}


def _states(members) -> list[int]:
    return [v + 1 for v in members]


def check_report(
    n: int,
    m: int,
    scc: SccDecomposition,
    lin: ControllabilityVerdict,
    flow: ControllabilityVerdict,
    diagnosis: Diagnosis,
    discrete: bool = False,
) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "check",
        "n": n,
        "m": m,
        "q": scc.q,
        "discrete": discrete,
        "controllable": lin.controllable and flow.controllable,
        "non_top_linked": [_states(scc.members(c)) for c in scc.non_top_linked],
        "lin": {
            "controllable": lin.controllable,
            "accessible": lin.accessible,
            "dilation_free": lin.dilation_free,
        },
        "flow": {
            "controllable": flow.controllable,
            "max_flow": flow.max_flow_value,
            "required": flow.q + flow.n,
        },
        "diagnostics": {
            "inaccessible_sccs": [_states(members) for members in diagnosis.inaccessible_sccs],
            "unmatched_states": _states(diagnosis.unmatched_states),
            "matching_size": diagnosis.matching_size,
        },
    }


def select_report(result: SelectionResult, objective: str, lower_bound: int, prefix: str = "u") -> dict[str, Any]:
    certificate = result.certificate
    loaded = [
        {"from": e.tail.label(), "to": e.head.label(), "flow": amount}
        for e, amount in zip(certificate.network.edges, certificate.values)
        if amount > 0
    ]
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "select",
        "objective": objective,
        "selected": result.inputs.one_based(),
        "labels": [f"{prefix}{j}" for j in result.inputs.one_based()],
        "total_cost": str(result.total_cost),
        "lp_objective": str(result.lp_objective),
        "delta": result.delta,
        "effective_delta": result.effective_delta,
        "bound": result.bound,
        "matching_weight": str(result.matching_weight),
        "cover_cost": str(result.cover_cost),
        "lower_bound": lower_bound,
        "certificate": {"value": certificate.value, "loaded_edges": loaded},
    }


def approximation_ratio(approx_cost: Fraction, optimum: Fraction) -> Fraction:
    if optimum == 0:
        # A zero optimum forces a zero-cost selection.
        assert approx_cost == 0
        return Fraction(1)
    return approx_cost / optimum


def oracle_report(result: OracleResult, approx_cost: Fraction | None = None) -> dict[str, Any]:
    ratio = None if approx_cost is None else approximation_ratio(approx_cost, result.optimum_cost)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "oracle",
        "optimum_cost": str(result.optimum_cost),
        "optimal_sets": [s.one_based() for s in result.optimal_sets],
        "subsets_examined": result.subsets_examined,
        "approx_cost": None if approx_cost is None else str(approx_cost),
        "ratio": None if ratio is None else str(ratio),
    }


def validate_report(report: dict[str, Any]) -> list[str]:
    """Problems with ``report`` against ``REPORT_SCHEMA``; empty when it conforms."""
    schema = REPORT_SCHEMA.get(report.get("command", ""))
    if schema is None:
        return [f"unknown report command {report.get('command')!r}"]
    problems = [f"missing key {key!r}" for key in schema if key not in report]
    problems += [
        f"{key!r} should be {expected}"
        for key, expected in schema.items()
        if key in report and not isinstance(report[key], expected)
    ]
    if report.get("schema_version") != SCHEMA_VERSION:
        problems.append(f"schema_version should be {SCHEMA_VERSION}")
    return problems
