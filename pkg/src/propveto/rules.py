"""Two rules that pick winners from inside the proportional veto core.

Veto by consumption: every candidate holds one unit; each voter eats their worst
remaining candidate at unit speed.  Candidates finishing at the same instant go
together; those finishing at time m/n (the final instant) win.  All arithmetic
uses ``fractions.Fraction`` because tie detection must be exact.

Voting by veto tokens: r clones per voter and t clones per candidate; voter
clones, in some order, strike one clone of their worst candidate that still has
clones until gcd(m, n) remain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .montecarlo import SplitMix64
from .prefmodel import Profile
from .vetocore import compute_coefficients


@dataclass(frozen=True)
class ConsumptionRound:
    duration: Fraction
    assignment: tuple[int, ...]  # voter -> candidate eaten during the round
    eliminated: frozenset[int]
    capacities: tuple[Fraction, ...]  # after the round; eliminated candidates hold 0


@dataclass(frozen=True)
class ConsumptionTrace:
    m: int
    n: int
    rounds: tuple[ConsumptionRound, ...]

    @property
    def durations(self) -> list[Fraction]:
        return [r.duration for r in self.rounds]

    @property
    def total_time(self) -> Fraction:
        return sum(self.durations, Fraction(0))


def consumption_winners(p: Profile) -> tuple[frozenset[int], ConsumptionTrace]:
    m, n = p.m, p.n
    orders = [b.order for b in p.ballots]
    cap = [Fraction(1)] * m
    alive = [True] * m
    pos = [m - 1] * n
    eating = [o[-1] for o in orders]
    count = [0] * m
    for d in eating:
        count[d] += 1
    eaten_now = {d for d in eating}
    remaining = m
    rounds = []
    while True:
        duration = min(cap[d] / count[d] for d in eaten_now)
        eliminated = []
        for d in eaten_now:
            cap[d] = cap[d] - duration * count[d]
            if cap[d] == 0:
                eliminated.append(d)
        for d in eliminated:
            alive[d] = False
        remaining -= len(eliminated)
        rounds.append(ConsumptionRound(duration, tuple(eating), frozenset(eliminated), tuple(cap)))
        if remaining == 0:
            break
        gone = set(eliminated)
        for i in range(n):
            if eating[i] in gone:
                order = orders[i]
                j = pos[i] - 1
                while not alive[order[j]]:
                    j -= 1
                pos[i] = j
                count[eating[i]] -= 1
                eating[i] = order[j]
                count[order[j]] += 1
        eaten_now = {d for d in eating}
    return rounds[-1].eliminated, ConsumptionTrace(m, n, tuple(rounds))


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def consumption_trace_render(trace: ConsumptionTrace) -> str:
    """Round-by-round report.  Candidates and voters are 1-based; rationals print as num/den."""
    lines = [f"veto by consumption: m={trace.m} n={trace.n} rounds={len(trace.rounds)}"]
    lines.append("durations: " + " ".join(_fmt(r.duration) for r in trace.rounds))
    elapsed = Fraction(0)
    for k, rnd in enumerate(trace.rounds, start=1):
        elapsed += rnd.duration
        lines.append(f"round {k}: duration {_fmt(rnd.duration)} ends {_fmt(elapsed)}")
        lines.append("  eating: " + " ".join(f"{i + 1}->{c + 1}" for i, c in enumerate(rnd.assignment)))
        lines.append("  eliminated: " + " ".join(str(c + 1) for c in sorted(rnd.eliminated)))
        caps = [f"{c + 1}:{_fmt(q)}" for c, q in enumerate(rnd.capacities) if q]
        lines.append("  remaining: " + (" ".join(caps) if caps else "-"))
    winners = sorted(trace.rounds[-1].eliminated)
    lines.append("winners: " + " ".join(str(c + 1) for c in winners))
    return "\n".join(lines) + "\n"


def parse_durations(report: str) -> list[Fraction]:
    for line in report.splitlines():
        if line.startswith("durations:"):
            return [Fraction(tok) for tok in line.split()[1:]]
    raise ValueError("report has no durations line")


# --- voting by veto tokens -------------------------------------------------


@dataclass(frozen=True)
class TokenOrder:
    """Order L over voter clones.

    ``kind`` is "seq" (all clones of voter 1, then voter 2, ...), "rr" (one
    clone of each voter per pass), "random" (seeded shuffle), or "explicit"
    (``slots`` lists (voter, clone) pairs covering every clone once).
    """

    kind: str
    seed: int | None = None
    slots: tuple[tuple[int, int], ...] | None = None

    @classmethod
    def sequential(cls) -> TokenOrder:
        return cls("seq")

    @classmethod
    def round_robin(cls) -> TokenOrder:
        return cls("rr")

    @classmethod
    def random(cls, seed: int) -> TokenOrder:
        return cls("random", seed=seed)

    @classmethod
    def explicit(cls, slots: Sequence[tuple[int, int]]) -> TokenOrder:
        return cls("explicit", slots=tuple((int(v), int(k)) for v, k in slots))

    def voters(self, n: int, r: int) -> list[int]:
        """The acting voter at each of the r*n turns."""
        if self.kind == "seq":
            return [i for i in range(n) for _ in range(r)]
        if self.kind == "rr":
            return list(range(n)) * r
        if self.kind == "random":
            turns = list(range(n)) * r
            SplitMix64(self.seed if self.seed is not None else 0).shuffle(turns)
            return turns
        if self.kind == "explicit":
            slots = self.slots or ()
            if len(slots) != r * n:
                raise ValueError(f"explicit order has {len(slots)} slots, expected r*n = {r * n}")
            if set(slots) != {(i, k) for i in range(n) for k in range(r)}:
                raise ValueError("explicit order must list every (voter, clone) slot exactly once")
            return [v for v, _ in slots]
        raise ValueError(f"unknown token order {self.kind!r}")


def tokens_remaining(p: Profile, order: TokenOrder) -> list[int]:
    """Clone counts per candidate after all r*n vetoes."""
    coeffs = compute_coefficients(p.m, p.n)
    counts = [coeffs.t] * p.m
    orders = [b.order for b in p.ballots]
    pos = [p.m - 1] * p.n  # index of each voter's worst candidate that may still have clones
    for i in order.voters(p.n, coeffs.r):
        o = orders[i]
        j = pos[i]
        while counts[o[j]] == 0:
            j -= 1
        pos[i] = j
        counts[o[j]] -= 1
    return counts


def tokens_winners(p: Profile, order: TokenOrder) -> frozenset[int]:
    return frozenset(c for c, k in enumerate(tokens_remaining(p, order)) if k > 0)
