"""Pessimist manipulation of the veto core.

A pessimist judges a set of winners by its worst member.  Let ``c`` be the
manipulator's worst core candidate under sincere voting.  A strategic ballot
must get every candidate the manipulator ranks at or below ``c`` blocked.  Whether
a candidate is blocked depends on the manipulator's ballot only through the set
ranked above it, so the ballot can be built greedily from the top.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Collection

from .prefmodel import Ballot, Profile
from .vetocore import compute_core, is_blocked

BRUTE_FORCE_MAX_CANDIDATES = 8


@dataclass(frozen=True)
class ManipulationOutcome:
    manipulable: bool
    sincere_core: frozenset[int]
    sincere_worst: int
    strategic_ballot: Ballot | None = None
    manipulated_core: frozenset[int] | None = None
    manipulated_worst: int | None = None


def worst_for(ballot: Ballot, candidates: Collection[int]) -> int:
    return max(candidates, key=lambda c: ballot.rank[c])


def probe_ballot(sincere: Ballot, d: int, top: Collection[int]) -> Ballot:
    """``top`` in sincere order, then ``d``, then everything else in sincere order."""
    top = set(top)
    if d in top:
        raise ValueError(f"probe candidate {d} is inside the top set")
    head = [c for c in sincere.order if c in top]
    tail = [c for c in sincere.order if c not in top and c != d]
    return Ballot(tuple(head + [d] + tail))


def blocked_with_top_set(p: Profile, voter: int, d: int, top: Collection[int]) -> bool:
    probe = probe_ballot(p.ballots[voter], d, top)
    return is_blocked(p.with_ballot(voter, probe), d)


def find_pessimist_manipulation(p: Profile, voter: int) -> ManipulationOutcome:
    if not 0 <= voter < p.n:
        raise ValueError(f"voter {voter} outside [0, {p.n})")
    sincere = p.ballots[voter]
    core = compute_core(p)
    worst = worst_for(sincere, core)
    refused = ManipulationOutcome(False, core, worst)
    if worst == sincere.top:
        return refused

    placed = list(sincere.above(worst))
    pending = [c for c in sincere.order if c not in placed]
    while pending:
        top = set(placed)
        # highest sincerely ranked blockable candidate goes next
        nxt = next((d for d in pending if blocked_with_top_set(p, voter, d, top)), None)
        if nxt is None:
            return refused
        placed.append(nxt)
        pending.remove(nxt)

    ballot = Ballot(tuple(placed))
    new_core = compute_core(p.with_ballot(voter, ballot))
    new_worst = worst_for(sincere, new_core)
    return ManipulationOutcome(True, core, worst, ballot, new_core, new_worst)


def brute_force_manipulation(p: Profile, voter: int) -> ManipulationOutcome:
    """Try all m! ballots for ``voter``; keep the one with the best worst core member."""
    if p.m > BRUTE_FORCE_MAX_CANDIDATES:
        raise ValueError(f"brute force limited to m <= {BRUTE_FORCE_MAX_CANDIDATES}, got {p.m}")
    if not 0 <= voter < p.n:
        raise ValueError(f"voter {voter} outside [0, {p.n})")
    sincere = p.ballots[voter]
    core = compute_core(p)
    worst = worst_for(sincere, core)
    best = None
    for order in itertools.permutations(range(p.m)):
        ballot = Ballot(order)
        new_core = compute_core(p.with_ballot(voter, ballot))
        new_worst = worst_for(sincere, new_core)
        if sincere.rank[new_worst] < sincere.rank[worst]:
            if best is None or sincere.rank[new_worst] < sincere.rank[best[2]]:
                best = (ballot, new_core, new_worst)
    if best is None:
        return ManipulationOutcome(False, core, worst)
    return ManipulationOutcome(True, core, worst, *best)
