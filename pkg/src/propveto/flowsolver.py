"""Exact integer maximum flow (Dinic's layered blocking-flow method).

Arcs may be declared with ``UNBOUNDED`` capacity.  Such arcs are materialized as
one more than the total capacity leaving the source, which no feasible flow can
reach, so all arithmetic stays on bounded integers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

# Largest capacity (and flow value) accepted; keeps every intermediate sum in a
# signed 64-bit range for implementations without arbitrary-precision integers.
CAPACITY_LIMIT = 2**62


class _Unbounded:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNBOUNDED"


UNBOUNDED = _Unbounded()


class InternalLimitError(ArithmeticError):
    """Input magnitudes exceed the documented integer bound."""


@dataclass(frozen=True)
class FlowNetwork:
    num_nodes: int
    source: int
    sink: int
    arcs: tuple[tuple[int, int, object], ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(tuple(a) for a in self.arcs))
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        for node in (self.source, self.sink):
            if not 0 <= node < self.num_nodes:
                raise ValueError(f"terminal {node} outside node range")
        for u, v, cap in self.arcs:
            if not (0 <= u < self.num_nodes and 0 <= v < self.num_nodes):
                raise ValueError(f"arc ({u}, {v}) outside node range")
            if cap is not UNBOUNDED and (not isinstance(cap, int) or cap < 0):
                raise ValueError(f"arc ({u}, {v}) has invalid capacity {cap!r}")

    def materialized_capacities(self) -> list[int]:
        finite_out = sum(cap for u, _, cap in self.arcs if u == self.source and cap is not UNBOUNDED)
        big = finite_out + 1
        caps = [big if cap is UNBOUNDED else cap for _, _, cap in self.arcs]
        if caps and max(caps) > CAPACITY_LIMIT or finite_out > CAPACITY_LIMIT:
            raise InternalLimitError(f"capacity exceeds limit 2**62 (source outflow bound {finite_out})")
        return caps


@dataclass(frozen=True)
class FlowResult:
    value: int
    flows: tuple[int, ...]  # aligned with FlowNetwork.arcs
    source_side: frozenset[int]  # nodes reachable from the source in the residual network

    def cut_capacity(self, net: FlowNetwork) -> int:
        caps = net.materialized_capacities()
        side = self.source_side
        return sum(c for (u, v, _), c in zip(net.arcs, caps) if u in side and v not in side)


class DinicSolver:
    """Residual graph plus Dinic phases.  One instance per solve; not shareable across threads."""

    def __init__(self, num_nodes: int, source: int, sink: int):
        self.n = num_nodes
        self.s = source
        self.t = sink
        self.adj: list[list[int]] = [[] for _ in range(num_nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, u: int, v: int, cap: int) -> int:
        e = len(self.to)
        self.to += (v, u)
        self.cap += (cap, 0)
        self.adj[u].append(e)
        self.adj[v].append(e + 1)
        return e

    def add_arcs(self, tails: Sequence[int], heads: Sequence[int], caps: Sequence[int]) -> int:
        """Bulk insert; arc j gets residual id ``first + 2*j``.  Returns ``first``."""
        first = len(self.to)
        k = len(tails)
        to = [0] * (2 * k)
        to[0::2] = heads
        to[1::2] = tails
        cap = [0] * (2 * k)
        cap[0::2] = caps
        self.to += to
        self.cap += cap
        adj = self.adj
        for e, u in enumerate(tails, first // 2):
            adj[u].append(2 * e)
        for e, v in enumerate(heads, first // 2):
            adj[v].append(2 * e + 1)
        return first

    def _levels(self) -> list[int] | None:
        level = [-1] * self.n
        level[self.s] = 0
        queue = deque([self.s])
        adj, to, cap = self.adj, self.to, self.cap
        t = self.t
        while queue:
            u = queue.popleft()
            lu = level[u] + 1
            if level[t] >= 0 and lu > level[t]:
                break
            for e in adj[u]:
                if cap[e]:
                    v = to[e]
                    if level[v] < 0:
                        level[v] = lu
                        queue.append(v)
        return level if level[t] >= 0 else None

    def _blocking_flow(self, level: list[int]) -> int:
        adj, to, cap = self.adj, self.to, self.cap
        s, t = self.s, self.t
        it = [0] * self.n
        total = 0
        path: list[int] = []
        u = s
        while True:
            if u == t:
                f = min(cap[e] for e in path)
                cut_at = None
                for i, e in enumerate(path):
                    cap[e] -= f
                    cap[e ^ 1] += f
                    if cut_at is None and cap[e] == 0:
                        cut_at = i
                total += f
                # resume from the tail of the first saturated arc
                del path[cut_at:]
                u = to[path[-1]] if path else s
                continue
            edges = adj[u]
            i = it[u]
            deg = len(edges)
            lu = level[u] + 1
            while i < deg:
                e = edges[i]
                if cap[e] and level[to[e]] == lu:
                    break
                i += 1
            it[u] = i
            if i < deg:
                path.append(e)
                u = to[e]
            else:
                if u == s:
                    return total
                level[u] = -1
                e = path.pop()
                u = to[e ^ 1]
                it[u] += 1

    def run(self) -> int:
        total = 0
        while True:
            level = self._levels()
            if level is None:
                return total
            total += self._blocking_flow(level)

    def reachable(self) -> frozenset[int]:
        seen = {self.s}
        stack = [self.s]
        adj, to, cap = self.adj, self.to, self.cap
        while stack:
            u = stack.pop()
            for e in adj[u]:
                v = to[e]
                if cap[e] > 0 and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return frozenset(seen)


def max_flow(net: FlowNetwork) -> FlowResult:
    caps = net.materialized_capacities()
    solver = DinicSolver(net.num_nodes, net.source, net.sink)
    first = solver.add_arcs([a[0] for a in net.arcs], [a[1] for a in net.arcs], caps)
    value = solver.run()
    residual = solver.cap[first::2]
    flows = tuple(c - res for c, res in zip(caps, residual))
    return FlowResult(value, flows, solver.reachable())


def check_flow(net: FlowNetwork, result: FlowResult) -> None:
    """Assert feasibility, conservation, and max-flow = min-cut for a solved network."""
    caps = net.materialized_capacities()
    balance = [0] * net.num_nodes
    for (u, v, _), c, f in zip(net.arcs, caps, result.flows):
        assert 0 <= f <= c, f"arc ({u}, {v}) flow {f} outside [0, {c}]"
        balance[u] -= f
        balance[v] += f
    for node, b in enumerate(balance):
        if node not in (net.source, net.sink):
            assert b == 0, f"conservation violated at node {node}"
    assert -balance[net.source] == result.value
    assert net.source in result.source_side and net.sink not in result.source_side
    assert result.cut_capacity(net) == result.value


def network(num_nodes: int, source: int, sink: int, arcs: Sequence[tuple[int, int, object]]) -> FlowNetwork:
    return FlowNetwork(num_nodes, source, sink, tuple(arcs))
