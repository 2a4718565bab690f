"""
Seeded random instance families.

- ``erdos``: every Ā and B̄ entry present independently.
- ``chain``: x1 -> x2 -> ... -> xn, input 1 always drives x1.
- ``cycle``: the chain closed into a cycle plus random extra arcs; D(Ā) is
  irreducible and B(Ā) has a perfect matching.
- ``decoupled-diagonal``: Ā is the identity pattern (every state its own SCC,
  B(Ā) perfectly matched); input j drives state j and nothing else, so
  Δ = 2. Needs ``m >= n``; columns past n stay empty and ``input_density``
  is ignored.
- ``block``: ``blocks`` cycles chained by random forward arcs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from slugify import slugify

from inputselect.structural.core import StructuredSystem
from inputselect.structural.exceptions import BadSpec
from inputselect.structural.utils.choices import (
    FAMILY_BLOCK,
    FAMILY_CHAIN,
    FAMILY_CYCLE,
    FAMILY_DECOUPLED_DIAGONAL,
    FAMILY_ERDOS,
    GENERATOR_FAMILIES,
)


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    m: int
    density: float = 0.3
    input_density: float = 0.3
    cost_low: int = 1
    cost_high: int = 10
    seed: int = 0
    blocks: int = 2

    def validate(self) -> None:
        if self.family not in GENERATOR_FAMILIES:
            raise BadSpec(f"unknown family {self.family!r}; choose from {', '.join(GENERATOR_FAMILIES)}")
        if self.n < 1 or self.m < 0:
            raise BadSpec("need n >= 1 and m >= 0")
        if not (0 <= self.density <= 1 and 0 <= self.input_density <= 1):
            raise BadSpec("densities must lie in [0, 1]")
        if not 0 <= self.cost_low <= self.cost_high:
            raise BadSpec("need 0 <= cost_low <= cost_high")
        if self.family == FAMILY_BLOCK and not 1 <= self.blocks <= self.n:
            raise BadSpec("need 1 <= blocks <= n")
        if self.family == FAMILY_CHAIN and self.m < 1:
            raise BadSpec("the chain family needs at least one input")
        if self.family == FAMILY_DECOUPLED_DIAGONAL and self.m < self.n:
            raise BadSpec("the decoupled-diagonal family needs one input per state (m >= n)")

    def slug(self) -> str:
        return slugify(f"{self.family} n{self.n} m{self.m} seed{self.seed}")


def _random_pattern(rng: np.random.Generator, rows: int, cols: int, density: float) -> set[tuple[int, int]]:
    hits = rng.random((rows, cols)) < density
    return {(int(i), int(j)) for i, j in zip(*np.nonzero(hits))}


def _cycle(states: list[int]) -> set[tuple[int, int]]:
    # Arc x_a -> x_b is the entry Ā[b, a].
    return {(states[(pos + 1) % len(states)], a) for pos, a in enumerate(states)}


def generate(spec: GeneratorSpec) -> StructuredSystem:
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    n, m = spec.n, spec.m

    if spec.family == FAMILY_ERDOS:
        a_entries = _random_pattern(rng, n, n, spec.density)
        b_entries = _random_pattern(rng, n, m, spec.input_density)
    elif spec.family == FAMILY_CHAIN:
        a_entries = {(i + 1, i) for i in range(n - 1)}
        b_entries = _random_pattern(rng, n, m, spec.input_density) | {(0, 0)}
    elif spec.family == FAMILY_CYCLE:
        a_entries = _cycle(list(range(n))) | _random_pattern(rng, n, n, spec.density)
        b_entries = _random_pattern(rng, n, m, spec.input_density)
        if m and not b_entries:
            b_entries = {(int(rng.integers(n)), int(rng.integers(m)))}
    elif spec.family == FAMILY_DECOUPLED_DIAGONAL:
        a_entries = {(i, i) for i in range(n)}
        b_entries = {(i, i) for i in range(n)}
    else:
        bounds = np.linspace(0, n, spec.blocks + 1).astype(int)
        groups = [list(range(lo, hi)) for lo, hi in zip(bounds[:-1], bounds[1:])]
        a_entries = set().union(*(_cycle(group) for group in groups))
        for upstream, downstream in zip(groups[:-1], groups[1:]):
            links = rng.random((len(downstream), len(upstream))) < spec.density
            a_entries |= {(downstream[i], upstream[j]) for i, j in zip(*np.nonzero(links))}
            a_entries.add((downstream[0], upstream[-1]))
        b_entries = _random_pattern(rng, n, m, spec.input_density)

    costs = rng.integers(spec.cost_low, spec.cost_high + 1, size=m)
    return StructuredSystem.build(n, m, a_entries, b_entries, [int(c) for c in costs])
