"""
Domain types shared by every other module: zero/nonzero patterns, structured
systems with their input costs, and input index sets.

Indices are 0-based here; instance files are 1-based (see ``utils.instances``).
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from inputselect.structural.exceptions import DimensionMismatch, IndexOutOfRange, NegativeCost

logger = logging.getLogger(__name__)

Cost = Fraction
Entry = tuple[int, int]


def as_cost(value: int | str | Fraction) -> Fraction:
    """Convert an integer, a ``"p/q"`` string or a Fraction into an exact cost."""
    return Fraction(value)


@dataclass(frozen=True)
class StructuredMatrix:
    """
    The star pattern of a structured matrix. An entry (i, j) in ``nonzeros`` is a
    free parameter; every other entry is a fixed zero.
    """

    rows: int
    cols: int
    nonzeros: frozenset[Entry] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "nonzeros", frozenset(self.nonzeros))
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch(f"negative shape {self.rows}x{self.cols}")
        for i, j in self.nonzeros:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexOutOfRange(f"entry ({i}, {j}) outside a {self.rows}x{self.cols} pattern")

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[Entry]) -> StructuredMatrix:
        return cls(rows, cols, frozenset((int(i), int(j)) for i, j in entries))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __contains__(self, entry: object) -> bool:
        return entry in self.nonzeros

    def __len__(self) -> int:
        return len(self.nonzeros)

    def sorted_entries(self) -> list[Entry]:
        return sorted(self.nonzeros)

    def column(self, j: int) -> list[int]:
        """Rows with a star in column ``j``, ascending."""
        return sorted(i for i, col in self.nonzeros if col == j)

    def transpose(self) -> StructuredMatrix:
        return StructuredMatrix(self.cols, self.rows, frozenset((j, i) for i, j in self.nonzeros))

    def select_columns(self, columns: Sequence[int]) -> StructuredMatrix:
        """Keep only ``columns`` (in the given order), reindexed densely."""
        position = {old: new for new, old in enumerate(columns)}
        kept = frozenset((i, position[j]) for i, j in self.nonzeros if j in position)
        return StructuredMatrix(self.rows, len(columns), kept)


@dataclass(frozen=True)
class InputSet:
    """A sorted, duplicate-free set of input (column) indices."""

    indices: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(set(int(j) for j in self.indices))))

    @classmethod
    def of(cls, *indices: int) -> InputSet:
        return cls(tuple(indices))

    def __iter__(self):
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, j: object) -> bool:
        return j in self.indices

    def check_bounds(self, m: int) -> None:
        for j in self.indices:
            if not 0 <= j < m:
                raise IndexOutOfRange(f"input index {j} outside [0, {m})")

    def one_based(self) -> list[int]:
        return [j + 1 for j in self.indices]


@dataclass(frozen=True)
class StructuredSystem:
    """
    A structured pair (Ā, B̄) with one non-negative cost per input column.

    ``input_ids`` maps each column of ``b_bar`` to its index in the system it was
    restricted from; for an unrestricted system it is the identity.
    """

    a_bar: StructuredMatrix
    b_bar: StructuredMatrix
    input_costs: tuple[Fraction, ...] = ()
    input_ids: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "input_costs", tuple(as_cost(c) for c in self.input_costs))
        if self.input_ids is None:
            object.__setattr__(self, "input_ids", tuple(range(self.b_bar.cols)))
        else:
            object.__setattr__(self, "input_ids", tuple(self.input_ids))

    @classmethod
    def build(
        cls,
        n: int,
        m: int,
        a_entries: Iterable[Entry],
        b_entries: Iterable[Entry],
        costs: Iterable[int | str | Fraction] | None = None,
    ) -> StructuredSystem:
        """Convenience constructor; costs default to 1 for every input."""
        cost_values = tuple(costs) if costs is not None else (1,) * m
        return cls(
            StructuredMatrix.from_entries(n, n, a_entries),
            StructuredMatrix.from_entries(n, m, b_entries),
            tuple(as_cost(c) for c in cost_values),
        )

    @property
    def n(self) -> int:
        return self.a_bar.rows

    @property
    def m(self) -> int:
        return self.b_bar.cols

    def cost_of(self, inputs: Iterable[int]) -> Fraction:
        return sum((self.input_costs[j] for j in set(inputs)), Fraction(0))

    def with_costs(self, costs: Iterable[int | str | Fraction]) -> StructuredSystem:
        return StructuredSystem(self.a_bar, self.b_bar, tuple(as_cost(c) for c in costs), self.input_ids)

    def full_input_set(self) -> InputSet:
        return InputSet(tuple(range(self.m)))


def validate_system(sys: StructuredSystem) -> None:
    """Raise unless the shapes agree and every cost is non-negative."""
    a_rows, a_cols = sys.a_bar.shape
    if a_rows < 1:
        raise DimensionMismatch("a system needs at least one state")
    if a_rows != a_cols:
        raise DimensionMismatch(f"Ā must be square, got {a_rows}x{a_cols}")
    if sys.b_bar.rows != a_rows:
        raise DimensionMismatch(f"B̄ has {sys.b_bar.rows} rows but Ā is {a_rows}x{a_rows}")
    if len(sys.input_costs) != sys.b_bar.cols:
        raise DimensionMismatch(f"B̄ has {sys.b_bar.cols} columns but {len(sys.input_costs)} costs were given")
    if len(sys.input_ids) != sys.b_bar.cols:
        raise DimensionMismatch("input index map does not match the number of B̄ columns")
    negative = [j for j, c in enumerate(sys.input_costs) if c < 0]
    if negative:
        raise NegativeCost(f"negative cost on input(s) {[j + 1 for j in negative]}")


def restrict_inputs(sys: StructuredSystem, sel: InputSet) -> StructuredSystem:
    """
    Keep only the input columns in ``sel``. The result's ``input_ids`` still
    point at the original columns, so restrictions compose.
    """
    sel.check_bounds(sys.m)
    columns = list(sel.indices)
    assert sys.input_ids is not None
    restricted = StructuredSystem(
        sys.a_bar,
        sys.b_bar.select_columns(columns),
        tuple(sys.input_costs[j] for j in columns),
        tuple(sys.input_ids[j] for j in columns),
    )
    logger.debug("restricted %d inputs to %s", sys.m, sel.one_based())
    return restricted
