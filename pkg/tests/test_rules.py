import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from propveto.prefmodel import Profile
from propveto.rules import (
    TokenOrder,
    consumption_trace_render,
    consumption_winners,
    parse_durations,
    tokens_remaining,
    tokens_winners,
)
from propveto.vetocore import compute_coefficients, compute_core

from conftest import profiles, random_profile

a, b, c, d, e = range(5)


def integer_eating_oracle(p: Profile):
    """Eating simulation in integers: each candidate starts with D = lcm(1..n)**m units.

    Each round divides a capacity by an eater count <= n, so D keeps every
    duration integral.  Returns (durations as Fractions of one unit, eliminated sets).
    """
    big = math.lcm(*range(1, p.n + 1)) ** p.m
    cap = {x: big for x in range(p.m)}
    durations, eliminated = [], []
    while cap:
        eaters = {}
        for ballot in p.ballots:
            worst = max(cap, key=lambda x: ballot.rank[x])
            eaters[worst] = eaters.get(worst, 0) + 1
        step = min(cap[x] // k for x, k in eaters.items())
        assert all(cap[x] % k == 0 for x, k in eaters.items())
        for x, k in eaters.items():
            cap[x] -= step * k
        gone = {x for x in eaters if cap[x] == 0}
        for x in gone:
            del cap[x]
        durations.append(Fraction(step, big))
        eliminated.append(frozenset(gone))
    return durations, eliminated


def test_example1_consumption(example1):
    winners, trace = consumption_winners(example1)
    assert winners == {e}
    assert trace.durations == [Fraction(1, 3), Fraction(1, 2), Fraction(1, 6), Fraction(1, 4)]
    assert trace.total_time == Fraction(5, 4)
    assert trace.rounds[2].eliminated == {b, c}
    assert integer_eating_oracle(example1) == (trace.durations, [r.eliminated for r in trace.rounds])
    assert winners <= compute_core(example1)


def test_two_voters_disagree():
    p = Profile.from_orders([[0, 1], [1, 0]])
    winners, trace = consumption_winners(p)
    assert winners == {0, 1}
    assert trace.durations == [Fraction(1)]


def test_unanimous_consumption():
    p = Profile.from_orders([[2, 0, 3, 1]] * 3)
    winners, trace = consumption_winners(p)
    assert winners == {2}
    assert [set(r.eliminated) for r in trace.rounds] == [{1}, {3}, {0}, {2}]


def test_single_candidate_trace():
    p = Profile.from_orders([[0]] * 4)
    winners, trace = consumption_winners(p)
    assert winners == {0}
    assert trace.durations == [Fraction(1, 4)]


def test_render_example1(example1):
    _, trace = consumption_winners(example1)
    report = consumption_trace_render(trace)
    assert "durations: 1/3 1/2 1/6 1/4\n" in report
    assert parse_durations(report) == trace.durations
    assert report.endswith("winners: 5\n")
    assert consumption_trace_render(trace) == report


def test_render_round_trip_random():
    rng = random.Random(5)
    for _ in range(50):
        p = random_profile(rng, rng.randint(1, 9), rng.randint(1, 9))
        _, trace = consumption_winners(p)
        assert parse_durations(consumption_trace_render(trace)) == trace.durations


@settings(max_examples=300, deadline=None)
@given(profiles(max_n=7, max_m=7))
def test_consumption_matches_integer_oracle(p):
    _, trace = consumption_winners(p)
    assert integer_eating_oracle(p) == (trace.durations, [r.eliminated for r in trace.rounds])


@settings(max_examples=300, deadline=None)
@given(profiles(max_n=8, max_m=8))
def test_consumption_trace_invariants(p):
    winners, trace = consumption_winners(p)
    assert trace.total_time == Fraction(p.m, p.n)
    assert len(trace.rounds) <= p.m
    elapsed = Fraction(0)
    prev = [Fraction(1)] * p.m
    seen = []
    for rnd in trace.rounds:
        assert rnd.duration > 0
        elapsed += rnd.duration
        assert all(0 <= q <= old for q, old in zip(rnd.capacities, prev))
        assert sum(rnd.capacities) == p.m - p.n * elapsed
        prev = rnd.capacities
        seen.extend(rnd.eliminated)
    assert sorted(seen) == list(range(p.m))
    assert winners == trace.rounds[-1].eliminated
    assert winners <= compute_core(p)
    for cand, count in enumerate(p.last_place_counts()):
        if count * p.m > p.n:
            assert cand not in winners


@settings(max_examples=100, deadline=None)
@given(profiles(max_n=6, max_m=7), st.randoms(use_true_random=False), st.sampled_from([2, 3]))
def test_consumption_anonymous_and_homogeneous(p, rnd, k):
    winners = consumption_winners(p)[0]
    orders = p.orders()
    rnd.shuffle(orders)
    assert consumption_winners(Profile.from_orders(orders))[0] == winners
    assert consumption_winners(Profile.from_orders(p.orders() * k))[0] == winners


# --- veto tokens ---


def test_example1_tokens(example1):
    assert tokens_winners(example1, TokenOrder.sequential()) == {e}
    assert tokens_winners(example1, TokenOrder.round_robin()) == {e}
    for seed in range(100):
        assert tokens_winners(example1, TokenOrder.random(seed)) == {e}


def test_tokens_unanimous():
    p = Profile.from_orders([[1, 2, 0]] * 4)
    for order in (TokenOrder.sequential(), TokenOrder.round_robin(), TokenOrder.random(9)):
        assert tokens_winners(p, order) == {1}


def test_tokens_single_voter():
    rng = random.Random(2)
    for m in range(1, 8):
        p = random_profile(rng, 1, m)
        assert tokens_winners(p, TokenOrder.sequential()) == {p.ballots[0].top}


def test_explicit_order():
    p = Profile.from_orders([[0, 1], [1, 0]])
    co = compute_coefficients(2, 2)
    slots = [(i, k) for k in range(co.r) for i in range(2)]
    assert tokens_winners(p, TokenOrder.explicit(slots)) == tokens_winners(p, TokenOrder.round_robin())
    with pytest.raises(ValueError):
        tokens_winners(p, TokenOrder.explicit(slots[:-1]))
    with pytest.raises(ValueError):
        tokens_winners(p, TokenOrder.explicit(slots[:-1] + [slots[0]]))


def test_random_order_is_deterministic():
    rng = random.Random(8)
    p = random_profile(rng, 6, 5)
    order = TokenOrder.random(42)
    assert order.voters(6, 10) == order.voters(6, 10)
    assert sorted(order.voters(6, 10)) == sorted(list(range(6)) * 10)


@settings(max_examples=200, deadline=None)
@given(profiles(max_n=8, max_m=8), st.integers(0, 2**64 - 1))
def test_tokens_conservation_and_containment(p, seed):
    co = compute_coefficients(p.m, p.n)
    for order in (TokenOrder.sequential(), TokenOrder.round_robin(), TokenOrder.random(seed)):
        counts = tokens_remaining(p, order)
        assert sum(counts) == co.alpha == co.t * p.m - co.r * p.n
        assert min(counts) >= 0
        winners = tokens_winners(p, order)
        assert winners
        assert winners <= compute_core(p)
