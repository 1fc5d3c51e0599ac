import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from propveto.flowsolver import check_flow, max_flow
from propveto.prefmodel import Profile
from propveto.vetocore import (
    BlockingCertificate,
    VetoCoefficients,
    blocking_certificate,
    blocking_test,
    brute_force_core,
    certificate_is_valid,
    compute_coefficients,
    compute_core,
    flow_network,
    is_blocked,
    lemma1_check,
)

from conftest import profiles, random_profile

a, b, c, d, e = range(5)


@pytest.mark.parametrize(
    "m, n, expected",
    [(5, 4, VetoCoefficients(16, 13, 1)), (5, 5, VetoCoefficients(74, 75, 5)), (2, 2, VetoCoefficients(11, 12, 2))],
)
def test_coefficients_examples(m, n, expected):
    got = compute_coefficients(m, n)
    assert got == expected
    assert got.r * n == got.t * m - got.alpha
    assert got.t > got.alpha * n


@given(st.integers(1, 500), st.integers(1, 500))
def test_coefficients_invariants(m, n):
    co = compute_coefficients(m, n)
    assert co.valid_for(m, n)
    assert co.r > 0


def test_scaled_veto_power_examples():
    assert lemma1_check(5, 4, 3, VetoCoefficients(16, 13, 1))
    assert lemma1_check(5, 5, 1, VetoCoefficients(74, 75, 5))


def test_scaled_veto_power_small_exhaustive():
    for m in range(1, 61):
        for n in range(1, 61):
            co = compute_coefficients(m, n)
            assert all(lemma1_check(m, n, k, co) for k in range(1, n + 1)), (m, n)


def test_example1_blocking(example1, example1_five):
    assert is_blocked(example1, a)
    assert not is_blocked(example1, e)
    assert not is_blocked(example1_five, b)


def test_example1_cores(example1, example1_five):
    assert compute_core(example1) == {e}
    assert compute_core(example1_five) == {b, c, d, e}
    assert brute_force_core(example1) == {e}
    assert brute_force_core(example1_five) == {b, c, d, e}


def test_example1_published_witnesses_are_valid(example1, example1_five):
    for cert in [
        BlockingCertificate(a, frozenset({0}), frozenset({b, c, d, e})),
        BlockingCertificate(b, frozenset({3}), frozenset({a, c, d, e})),
        BlockingCertificate(d, frozenset({0, 1}), frozenset({b, c, e})),
        BlockingCertificate(c, frozenset({0, 1, 2}), frozenset({b, e})),
    ]:
        assert certificate_is_valid(example1, cert)
    assert certificate_is_valid(example1_five, BlockingCertificate(a, frozenset({0, 1}), frozenset({b, c, d, e})))
    # a singleton can no longer block once there are five voters
    assert not certificate_is_valid(example1_five, BlockingCertificate(a, frozenset({0}), frozenset({b, c, d, e})))


def test_example1_certificates(example1):
    for cand in (a, b, c, d):
        assert certificate_is_valid(example1, blocking_certificate(example1, cand))
    with pytest.raises(ValueError):
        blocking_certificate(example1, e)


def test_single_voter_core_is_top():
    rng = random.Random(3)
    for m in range(1, 9):
        p = random_profile(rng, 1, m)
        assert compute_core(p) == {p.ballots[0].top}


def test_single_candidate():
    p = Profile.from_orders([[0], [0], [0]])
    assert compute_core(p) == {0} == brute_force_core(p)


def test_unanimous_profile():
    order = [3, 1, 0, 2]
    p = Profile.from_orders([order] * 5)
    assert compute_core(p) == {3} == brute_force_core(p)


def test_brute_force_guard():
    p = Profile.from_orders([[0, 1]] * 21)
    with pytest.raises(ValueError):
        brute_force_core(p)


def test_exhaustive_three_by_three():
    perms = list(itertools.permutations(range(3)))
    for combo in itertools.combinations_with_replacement(perms, 3):
        p = Profile.from_orders(combo)
        core = compute_core(p)
        assert core == brute_force_core(p)
        for cand in set(range(3)) - core:
            assert certificate_is_valid(p, blocking_certificate(p, cand))


def test_fast_path_matches_generic_flow():
    rng = random.Random(11)
    for _ in range(200):
        p = random_profile(rng, rng.randint(1, 8), rng.randint(2, 8))
        for cand in range(p.m):
            net = flow_network(p, cand)
            res = max_flow(net)
            check_flow(net, res)
            test = blocking_test(p, cand)
            assert res.value == test.flow
            assert test.blocked == (res.value <= test.threshold)


@settings(max_examples=300, deadline=None)
@given(profiles(max_n=6, max_m=6))
def test_oracle_equivalence(p):
    core = compute_core(p)
    assert core
    assert core == brute_force_core(p)
    for cand in set(range(p.m)) - core:
        assert certificate_is_valid(p, blocking_certificate(p, cand))


@settings(max_examples=200, deadline=None)
@given(profiles(max_n=8, max_m=8))
def test_pareto_efficiency(p):
    core = compute_core(p)
    for x in core:
        for y in range(p.m):
            assert not all(bal.prefers(y, x) for bal in p.ballots)


@settings(max_examples=150, deadline=None)
@given(profiles(max_n=7, max_m=7), st.randoms(use_true_random=False))
def test_anonymity_and_neutrality(p, rnd):
    core = compute_core(p)
    shuffled = list(p.orders())
    rnd.shuffle(shuffled)
    assert compute_core(Profile.from_orders(shuffled)) == core
    relabel = list(range(p.m))
    rnd.shuffle(relabel)
    renamed = Profile.from_orders([[relabel[x] for x in o] for o in p.orders()])
    assert compute_core(renamed) == {relabel[x] for x in core}


@settings(max_examples=150, deadline=None)
@given(profiles(max_n=6, max_m=7), st.sampled_from([2, 3]))
def test_homogeneity(p, k):
    assert compute_core(Profile.from_orders(p.orders() * k)) == compute_core(p)


@settings(max_examples=200, deadline=None)
@given(profiles(max_n=9, max_m=9))
def test_last_place_bound(p):
    core = compute_core(p)
    for cand, count in enumerate(p.last_place_counts()):
        if count * p.m > p.n:
            assert cand not in core


@settings(max_examples=150, deadline=None)
@given(profiles(max_n=7, max_m=7, min_m=2), st.data())
def test_monotone_blocking(p, data):
    blocked = sorted(set(range(p.m)) - compute_core(p))
    if not blocked:
        return
    cand = data.draw(st.sampled_from(blocked))
    voter = data.draw(st.integers(0, p.n - 1))
    ballot = p.ballots[voter]
    below = list(ballot.below(cand))
    lift = set(data.draw(st.lists(st.sampled_from(below), unique=True))) if below else set()
    above = [x for x in ballot.order if x != cand and (ballot.prefers(x, cand) or x in lift)]
    rest = [x for x in ballot.order if x != cand and x not in above]
    q = p.with_ballot(voter, above + [cand] + rest)
    assert is_blocked(q, cand)
