"""The proportional veto core.

A candidate ``c`` is blocked when some coalition ``T`` of ``k`` voters ranks every
member of a set ``B`` above ``c`` and ``m - |B| <= ceil(mk/n) - 1``.  Scaling by
coefficients ``(r, t)`` with ``rn = tm - gcd(m, n)`` turns the veto power into
``floor(rk/t)``, after which the existence of a blocking pair is a bipartite
biclique question.  Its complement-matching form is solved as a max-flow on a
network with one node per voter and per candidate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .flowsolver import CAPACITY_LIMIT, UNBOUNDED, DinicSolver, FlowNetwork, InternalLimitError
from .prefmodel import Profile, veto_power

BRUTE_FORCE_MAX_VOTERS = 20


@dataclass(frozen=True)
class VetoCoefficients:
    r: int
    t: int
    alpha: int

    def valid_for(self, m: int, n: int) -> bool:
        return (
            self.r > 0
            and self.alpha == gcd(m, n)
            and self.r * n == self.t * m - self.alpha
            and self.t > self.alpha * n
        )


@dataclass(frozen=True)
class BlockingCertificate:
    candidate: int
    coalition: frozenset[int]
    blocking_set: frozenset[int]


@dataclass(frozen=True)
class BlockingTest:
    """Outcome of the flow test for one candidate; ``flow`` is the max-flow value z."""

    candidate: int
    blocked: bool
    flow: int
    threshold: int  # blocked iff flow <= threshold
    coefficients: VetoCoefficients
    source_side: frozenset[int] = frozenset()  # min-cut side; voter i is node 2+i, candidate d node 2+n+d

    def __bool__(self) -> bool:
        return self.blocked


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


def compute_coefficients(m: int, n: int) -> VetoCoefficients:
    if m < 1 or n < 1:
        raise ValueError(f"need m, n >= 1, got m={m}, n={n}")
    alpha, x, y = _egcd(m, n)
    # x*m + y*n = alpha, so t' = x and r' = -y satisfy r'n = t'm - alpha.
    t0, r0 = x, -y
    step_t, step_r = n // alpha, m // alpha
    while abs(t0) > n // alpha:
        shift = 1 if t0 < 0 else -1
        t0 += shift * step_t
        r0 += shift * step_r
    r = r0 + 3 * alpha * m
    t = t0 + 3 * alpha * n
    coeffs = VetoCoefficients(r, t, alpha)
    if max(r * n, t * m) > CAPACITY_LIMIT:
        raise InternalLimitError(f"coefficients for m={m}, n={n} exceed the integer bound")
    assert coeffs.valid_for(m, n), coeffs
    return coeffs


def lemma1_check(m: int, n: int, k: int, coeffs: VetoCoefficients) -> bool:
    """True iff floor(rk/t) equals the proportional veto power of a k-coalition."""
    return coeffs.r * k // coeffs.t == veto_power(m, n, k)


def flow_network(p: Profile, c: int, coeffs: VetoCoefficients | None = None) -> FlowNetwork:
    """Flow graph of ``c``.

    Nodes: 0 = source, 1 = sink, voters at 2..n+1, then the m-1 candidates other
    than ``c`` in index order.  Voter arcs point at candidates ranked below ``c``.
    """
    coeffs = coeffs or compute_coefficients(p.m, p.n)
    others = [d for d in range(p.m) if d != c]
    node_of = {d: 2 + p.n + j for j, d in enumerate(others)}
    arcs: list[tuple[int, int, object]] = []
    for i in range(p.n):
        arcs.append((0, 2 + i, coeffs.r))
    for i, ballot in enumerate(p.ballots):
        for d in ballot.below(c):
            arcs.append((2 + i, node_of[d], UNBOUNDED))
    for d in others:
        arcs.append((node_of[d], 1, coeffs.t))
    return FlowNetwork(2 + p.n + len(others), 0, 1, tuple(arcs))


def _solve(p: Profile, c: int, coeffs: VetoCoefficients, ballot_nodes) -> DinicSolver:
    # Same graph as flow_network(), but candidate d sits at node 2+n+d and c's
    # node is left isolated so per-voter arc lists are plain slices.
    n, m = p.n, p.m
    solver = DinicSolver(2 + n + m, 0, 1)
    voters = range(2, 2 + n)
    solver.add_arcs([0] * n, voters, [coeffs.r] * n)
    tails: list[int] = []
    heads: list[int] = []
    for i, ballot in enumerate(p.ballots):
        below = ballot_nodes[i][ballot.rank[c] + 1 :]
        heads += below
        tails += [2 + i] * len(below)
    big = coeffs.r * n + 1
    solver.add_arcs(tails, heads, [big] * len(tails))
    others = [2 + n + d for d in range(m) if d != c]
    solver.add_arcs(others, [1] * len(others), [coeffs.t] * len(others))
    solver.run()
    return solver


def _ballot_nodes(p: Profile) -> list[list[int]]:
    base = 2 + p.n
    return [[base + d for d in b.order] for b in p.ballots]


def blocking_test(
    p: Profile, c: int, coeffs: VetoCoefficients | None = None, *, _nodes=None
) -> BlockingTest:
    """Max-flow test for one candidate: blocked iff z <= r*n - t."""
    if not 0 <= c < p.m:
        raise ValueError(f"candidate {c} outside [0, {p.m})")
    coeffs = coeffs or compute_coefficients(p.m, p.n)
    threshold = coeffs.r * p.n - coeffs.t
    if p.m == 1:
        return BlockingTest(c, False, 0, threshold, coeffs, frozenset({0}))
    solver = _solve(p, c, coeffs, _nodes or _ballot_nodes(p))
    z = sum(solver.cap[1 : 2 * p.n : 2])  # reverse residual of source arcs = flow out of source
    return BlockingTest(c, z <= threshold, z, threshold, coeffs, solver.reachable())


def is_blocked(p: Profile, c: int, coeffs: VetoCoefficients | None = None) -> bool:
    return blocking_test(p, c, coeffs).blocked


def compute_core(p: Profile) -> frozenset[int]:
    if p.m == 1:
        return frozenset({0})
    coeffs = compute_coefficients(p.m, p.n)
    nodes = _ballot_nodes(p)
    return frozenset(c for c in range(p.m) if not blocking_test(p, c, coeffs, _nodes=nodes).blocked)


def blocking_certificate(p: Profile, c: int) -> BlockingCertificate:
    """Witness (T, B) read off the minimum cut of c's flow graph.

    T is the set of voters still reachable from the source, B the candidates not
    reachable.  Unbounded middle arcs never cross the cut, so every voter in T
    ranks every member of B above c.
    """
    test = blocking_test(p, c)
    if not test.blocked:
        raise ValueError(f"candidate {c} is not blocked")
    side = test.source_side
    coalition = frozenset(i for i in range(p.n) if 2 + i in side)
    blocking = frozenset(d for d in range(p.m) if d != c and 2 + p.n + d not in side)
    return BlockingCertificate(c, coalition, blocking)


def certificate_is_valid(p: Profile, cert: BlockingCertificate) -> bool:
    c, T, B = cert.candidate, cert.coalition, cert.blocking_set
    if not T or c in B or not all(0 <= i < p.n for i in T):
        return False
    if not all(p.ballots[i].prefers(b, c) for i in T for b in B):
        return False
    return p.m - len(B) <= veto_power(p.m, p.n, len(T))


def brute_force_core(p: Profile) -> frozenset[int]:
    """Core by enumerating every non-empty coalition (exponential in n)."""
    if p.n > BRUTE_FORCE_MAX_VOTERS:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_VOTERS}, got {p.n}")
    m, n = p.m, p.n
    above = [[set(b.above(c)) for c in range(m)] for b in p.ballots]
    core = set()
    for c in range(m):
        blocked = False
        for k in range(1, n + 1):
            power = veto_power(m, n, k)
            for T in itertools.combinations(range(n), k):
                common = set.intersection(*(above[i][c] for i in T))
                if m - len(common) <= power:
                    blocked = True
                    break
            if blocked:
                break
        if not blocked:
            core.add(c)
    return frozenset(core)
