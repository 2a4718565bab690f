"""Errors raised by the structural analysis and input selection code."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from inputselect.structural.controllability import ControllabilityVerdict


class StructuralError(Exception):
    """Base class for every error raised by this app."""


class DimensionMismatch(StructuralError, ValueError):
    pass


class NegativeCost(StructuralError, ValueError):
    pass


class IndexOutOfRange(StructuralError, IndexError):
    pass


class ParseError(StructuralError, ValueError):
    """An instance file could not be read. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BadSpec(StructuralError, ValueError):
    pass


class TooLarge(StructuralError):
    pass


class Infeasible(StructuralError):
    pass


class NotControllable(Infeasible):
    """No input subset makes the system structurally controllable."""

    def __init__(self, message: str, verdict: ControllabilityVerdict | None = None):
        self.verdict = verdict
        super().__init__(message)


class NotObservable(NotControllable):
    pass


class UncoverableScc(StructuralError):
    pass


class InvalidMatching(StructuralError):
    pass


class InvalidCover(StructuralError):
    pass


class FlowTooSmall(StructuralError):
    pass


class DeciderDisagreement(StructuralError):
    """The matching/accessibility decider and the flow decider returned different answers."""
