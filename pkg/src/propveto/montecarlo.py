"""Seeded Impartial Culture sampling and the core / consumption simulations.

Randomness is pinned so results can be re-derived anywhere:

* generator: SplitMix64 (Steele, Lea & Flood 2014), state increment
  0x9E3779B97F4A7C15, finalizer multipliers 0xBF58476D1CE4E5B9 and
  0x94D049BB133111EB, shifts 30/27/31;
* bounded draws: rejection sampling on the full 64-bit output
  (reject r >= 2**64 - 2**64 % bound, return r % bound);
* shuffles: Fisher-Yates from the last index down, j = below(i + 1);
* per-sample seed: mix(mix(mix(master) ^ cell) ^ index), where mix is one
  SplitMix64 step applied to its argument as state.

Each profile draws from its own derived seed, so results do not depend on how
samples are spread across workers.  Aggregation is exact (``Fraction``).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .prefmodel import Ballot, Profile

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    z = (x + GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            r = self.next()
            if r < limit:
                return r % bound

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def derive_seed(master: int, cell: int, index: int) -> int:
    return mix64(mix64(mix64(master & MASK64) ^ cell) ^ index)


def sample_ic_profile(m: int, n: int, seed: int) -> Profile:
    """n independent uniformly random rankings of m candidates."""
    if m < 1 or n < 1:
        raise ValueError(f"need m, n >= 1, got m={m}, n={n}")
    rng = SplitMix64(seed)
    ballots = []
    for _ in range(n):
        order = list(range(m))
        rng.shuffle(order)
        ballots.append(Ballot(tuple(order)))
    return Profile(m, tuple(ballots))


# --- statistics --------------------------------------------------------------


def _core_proportion(p: Profile) -> Fraction:
    from .vetocore import compute_core

    return Fraction(len(compute_core(p)), p.m)


def _core_size(p: Profile) -> Fraction:
    from .vetocore import compute_core

    return Fraction(len(compute_core(p)))


def _winner_count(p: Profile) -> Fraction:
    from .rules import consumption_winners

    return Fraction(len(consumption_winners(p)[0]))


def last_place_prediction(p: Profile) -> frozenset[int]:
    """Candidates ranked last by fewer than n/m voters."""
    return frozenset(c for c, k in enumerate(p.last_place_counts()) if p.m * k < p.n)


def _prop4_agreement(p: Profile) -> Fraction:
    from .vetocore import compute_core

    return Fraction(int(compute_core(p) == last_place_prediction(p)))


STATISTICS: dict[str, Callable[[Profile], Fraction]] = {
    "core-proportion": _core_proportion,
    "core-size": _core_size,
    "winner-count": _winner_count,
    "prop4": _prop4_agreement,
}
ALIASES = {"consumption-winner-count": "winner-count", "prop4-agreement": "prop4"}


def statistic_fn(name: str) -> Callable[[Profile], Fraction]:
    name = ALIASES.get(name, name)
    try:
        return STATISTICS[name]
    except KeyError:
        raise ValueError(f"unknown statistic {name!r}; choose from {sorted(STATISTICS)}") from None


@dataclass(frozen=True)
class SimulationSpec:
    statistic: str
    grid: tuple[tuple[int, int], ...]  # (n, m) cells
    samples: int
    seed: int
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple((int(n), int(m)) for n, m in self.grid))
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not self.grid:
            raise ValueError("grid must be non-empty")
        for n, m in self.grid:
            if n < 1 or m < 1:
                raise ValueError(f"invalid cell n={n}, m={m}")
        statistic_fn(self.statistic)


@dataclass(frozen=True)
class CellResult:
    cell: int
    n: int
    m: int
    mean: float
    stddev: float
    stderr: float
    count: int
    exact_mean: Fraction = field(repr=False, compare=False, default=Fraction(0))


@dataclass(frozen=True)
class SimulationResult:
    spec: SimulationSpec
    cells: tuple[CellResult, ...]

    def cell(self, n: int, m: int) -> CellResult:
        for c in self.cells:
            if (c.n, c.m) == (n, m):
                return c
        raise KeyError((n, m))


def _evaluate(task: tuple[str, int, int, int, int, int, int]) -> list[Fraction]:
    stat, master, cell, n, m, start, stop = task
    fn = statistic_fn(stat)
    return [fn(sample_ic_profile(m, n, derive_seed(master, cell, k))) for k in range(start, stop)]


def _summarize(cell: int, n: int, m: int, values: Sequence[Fraction]) -> CellResult:
    count = len(values)
    total = sum(values, Fraction(0))
    mean = total / count
    if count > 1:
        var = (sum((v * v for v in values), Fraction(0)) - total * total / count) / (count - 1)
        stddev = math.sqrt(var)
    else:
        stddev = 0.0
    return CellResult(cell, n, m, float(mean), stddev, stddev / math.sqrt(count), count, mean)


def run_simulation(spec: SimulationSpec, chunk: int = 250) -> SimulationResult:
    tasks = []
    for cell, (n, m) in enumerate(spec.grid):
        for start in range(0, spec.samples, chunk):
            tasks.append((spec.statistic, spec.seed, cell, n, m, start, min(start + chunk, spec.samples)))
    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            parts = list(pool.map(_evaluate, tasks))
    else:
        parts = [_evaluate(t) for t in tasks]
    per_cell: dict[int, list[Fraction]] = {i: [] for i in range(len(spec.grid))}
    for task, values in zip(tasks, parts):
        per_cell[task[2]].extend(values)
    cells = tuple(_summarize(i, n, m, per_cell[i]) for i, (n, m) in enumerate(spec.grid))
    return SimulationResult(spec, cells)


def render_table(result: SimulationResult) -> str:
    """Means to two decimals, one row per n and one column per m (as in the published tables)."""
    ns = list(dict.fromkeys(c.n for c in result.cells))
    ms = list(dict.fromkeys(c.m for c in result.cells))
    lookup = {(c.n, c.m): c.mean for c in result.cells}
    width = max(6, *(len(str(m)) + 2 for m in ms))
    label = "n\\m"
    head = f"{label:>7} |"
    head += "".join(f"{m:>{width}}" for m in ms)
    lines = [head, "-" * 8 + "+" + "-" * (width * len(ms))]
    for n in ns:
        row = f"{n:>7} |"
        for m in ms:
            v = lookup.get((n, m))
            row += f"{'-' if v is None else f'{v:.2f}':>{width}}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def render_records(result: SimulationResult) -> str:
    """One line per cell: ``cell n m mean stddev stderr count``."""
    out = []
    for c in result.cells:
        out.append(f"{c.cell} {c.n} {c.m} {c.mean:.12g} {c.stddev:.12g} {c.stderr:.12g} {c.count}")
    return "\n".join(out) + "\n"
