"""
Plain-text and JSON instance files.

Text format, one statement per line, ``#`` starts a comment, indices 1-based::

    dims 4 3          # n states, m inputs (or p outputs)
    time discrete     # optional, default continuous
    A 1 1             # Ā_11 is a free parameter
    B 3 1             # B̄_31 is a free parameter
    C 2 4             # output instances use C (p x n) instead of B
    costs 1 1 21/2    # optional, one per input/output, default all 1

The canonical form (what ``dumps`` writes) lists ``dims``, ``time`` when
discrete, sorted ``A`` lines, sorted ``B``/``C`` lines and ``costs``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

from inputselect.structural.core import StructuredMatrix, StructuredSystem, as_cost
from inputselect.structural.exceptions import ParseError

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


@dataclass(frozen=True)
class InstanceFile:
    n: int
    m: int
    a_entries: tuple[Pair, ...]
    b_entries: tuple[Pair, ...]
    costs: tuple[Fraction, ...]
    discrete: bool = False
    # True when the second block is an output matrix C̄ (m rows = outputs, n columns).
    outputs: bool = False
    duplicates: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def from_system(cls, sys: StructuredSystem, discrete: bool = False) -> InstanceFile:
        return cls(
            sys.n,
            sys.m,
            tuple((i + 1, j + 1) for i, j in sys.a_bar.sorted_entries()),
            tuple((i + 1, j + 1) for i, j in sys.b_bar.sorted_entries()),
            tuple(sys.input_costs),
            discrete,
        )

    def _matrix(self, rows: int, cols: int, entries) -> StructuredMatrix:
        return StructuredMatrix.from_entries(rows, cols, ((i - 1, j - 1) for i, j in entries))

    def to_system(self) -> StructuredSystem:
        """The controllability instance. For an output file this is the dual (Āᵀ, C̄ᵀ)."""
        a_bar, c_or_b = self._matrix(self.n, self.n, self.a_entries), self._second_block()
        if self.outputs:
            return StructuredSystem(a_bar.transpose(), c_or_b.transpose(), self.costs)
        return StructuredSystem(a_bar, c_or_b, self.costs)

    def observation_pair(self) -> tuple[StructuredMatrix, StructuredMatrix, tuple[Fraction, ...]]:
        """(Ā, C̄, p_y). A ``B`` block is read as C̄ᵀ, one column per output."""
        a_bar = self._matrix(self.n, self.n, self.a_entries)
        block = self._second_block()
        c_bar = block if self.outputs else block.transpose()
        return a_bar, c_bar, self.costs

    def _second_block(self) -> StructuredMatrix:
        if self.outputs:
            return self._matrix(self.m, self.n, self.b_entries)
        return self._matrix(self.n, self.m, self.b_entries)


def _format_cost(cost: Fraction) -> str:
    return str(cost)


def _ints(tokens: list[str], count: int, line: int) -> list[int]:
    if len(tokens) != count:
        raise ParseError(f"expected {count} integers, got {len(tokens)}", line)
    try:
        return [int(token) for token in tokens]
    except ValueError as exc:
        raise ParseError(f"not an integer in {' '.join(tokens)!r}", line) from exc


def loads(text: str) -> InstanceFile:
    if text.lstrip().startswith("{"):
        return _loads_json(text)

    n = m = None
    discrete = False
    second_keyword = None
    a_entries: dict[Pair, int] = {}
    b_entries: dict[Pair, int] = {}
    costs: list[Fraction] | None = None
    duplicates: list[str] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]
        if keyword == "dims":
            if n is not None:
                raise ParseError("dims given twice", number)
            n, m = _ints(args, 2, number)
            if n < 1:
                raise ParseError("a system needs at least one state", number)
            if m < 0:
                raise ParseError("the input count must be non-negative", number)
        elif keyword == "time":
            if args not in (["continuous"], ["discrete"]):
                raise ParseError("time must be 'continuous' or 'discrete'", number)
            discrete = args[0] == "discrete"
        elif keyword in ("A", "B", "C"):
            if n is None or m is None:
                raise ParseError("dims must come before any entry", number)
            i, j = _ints(args, 2, number)
            if keyword == "A":
                rows, cols, target = n, n, a_entries
            else:
                if second_keyword not in (None, keyword):
                    raise ParseError("an instance has either B or C entries, not both", number)
                second_keyword = keyword
                rows, cols = (n, m) if keyword == "B" else (m, n)
                target = b_entries
            if not (1 <= i <= rows and 1 <= j <= cols):
                raise ParseError(f"{keyword} entry ({i}, {j}) outside a {rows}x{cols} matrix", number)
            if (i, j) in target:
                message = f"{keyword} ({i}, {j}) repeated on line {number} (first on line {target[(i, j)]})"
                logger.warning("%s; keeping one copy", message)
                duplicates.append(message)
            else:
                target[(i, j)] = number
        elif keyword == "costs":
            if m is None:
                raise ParseError("dims must come before costs", number)
            if len(args) != m:
                raise ParseError(f"expected {m} costs, got {len(args)}", number)
            try:
                costs = [as_cost(token) for token in args]
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad cost in {' '.join(args)!r}", number) from exc
        else:
            raise ParseError(f"unknown statement {keyword!r}", number)

    if n is None or m is None:
        raise ParseError("missing dims line")
    return InstanceFile(
        n,
        m,
        tuple(sorted(a_entries)),
        tuple(sorted(b_entries)),
        tuple(costs) if costs is not None else (Fraction(1),) * m,
        discrete,
        second_keyword == "C",
        tuple(duplicates),
    )


def _json_entries(keyword: str, pairs, duplicates: list[str]) -> tuple[Pair, ...]:
    seen: set[Pair] = set()
    for position, (i, j) in enumerate(pairs, start=1):
        pair = (int(i), int(j))
        if pair in seen:
            message = f"{keyword} {pair} repeated at position {position}"
            logger.warning("%s; keeping one copy", message)
            duplicates.append(message)
        seen.add(pair)
    return tuple(sorted(seen))


def _loads_json(text: str) -> InstanceFile:
    duplicates: list[str] = []
    try:
        data = json.loads(text)
        outputs = "C" in data
        n, m = int(data["n"]), int(data["m"])
        second = data["C"] if outputs else data.get("B", [])
        costs = data.get("costs")
        time = data.get("time", "continuous")
        instance = InstanceFile(
            n,
            m,
            _json_entries("A", data.get("A", []), duplicates),
            _json_entries("C" if outputs else "B", second, duplicates),
            tuple(as_cost(c) for c in costs) if costs is not None else (Fraction(1),) * m,
            time == "discrete",
            outputs,
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed JSON instance: {exc}") from exc
    if time not in ("continuous", "discrete"):
        raise ParseError("time must be 'continuous' or 'discrete'")
    if len(instance.costs) != m:
        raise ParseError(f"expected {m} costs, got {len(instance.costs)}")
    # Range checks are shared with the text format.
    return replace(loads(dumps(instance)), duplicates=tuple(duplicates))


def dumps(instance: InstanceFile) -> str:
    second = "C" if instance.outputs else "B"
    lines = [f"dims {instance.n} {instance.m}"]
    if instance.discrete:
        lines.append("time discrete")
    lines += [f"A {i} {j}" for i, j in sorted(instance.a_entries)]
    lines += [f"{second} {i} {j}" for i, j in sorted(instance.b_entries)]
    lines.append(" ".join(["costs", *(_format_cost(c) for c in instance.costs)]))
    return "\n".join(lines) + "\n"


def dumps_json(instance: InstanceFile) -> str:
    data = {
        "n": instance.n,
        "m": instance.m,
        "time": "discrete" if instance.discrete else "continuous",
        "A": [list(pair) for pair in instance.a_entries],
        "C" if instance.outputs else "B": [list(pair) for pair in instance.b_entries],
        "costs": [_format_cost(c) for c in instance.costs],
    }
    return json.dumps(data, indent=2) + "\n"


def read_instance(path: str | Path) -> InstanceFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read instance {path}: {exc.strerror}") from exc
    return loads(text)


def write_instance(instance: InstanceFile, path: str | Path) -> None:
    target = Path(path)
    target.write_text(dumps_json(instance) if target.suffix == ".json" else dumps(instance))
