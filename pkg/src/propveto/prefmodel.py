"""Ordinal preference profiles, proportional veto power, and the profile text format.

Text format::

    # optional comment lines
    m n
    <n lines, each a permutation of 1..m, most preferred first>

Candidates are 1-based in text and 0-based in memory.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class ProfileParseError(ValueError):
    """Raised for malformed profile text; carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


@dataclass(frozen=True)
class Candidate:
    index: int
    label: str | None = None


@dataclass(frozen=True)
class Ballot:
    """A strict ranking of candidates ``0..m-1``, best first."""

    order: tuple[int, ...]
    rank: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        order = tuple(self.order)
        m = len(order)
        if m == 0 or sorted(order) != list(range(m)):
            raise ValueError(f"ballot is not a permutation of 0..{m - 1}: {order}")
        rank = [0] * m
        for pos, c in enumerate(order):
            rank[c] = pos
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "rank", tuple(rank))

    def __len__(self) -> int:
        return len(self.order)

    def prefers(self, c: int, d: int) -> bool:
        return self.rank[c] < self.rank[d]

    @property
    def top(self) -> int:
        return self.order[0]

    @property
    def last(self) -> int:
        return self.order[-1]

    def above(self, c: int) -> tuple[int, ...]:
        """Candidates ranked strictly above ``c``."""
        return self.order[: self.rank[c]]

    def below(self, c: int) -> tuple[int, ...]:
        """Candidates ranked strictly below ``c``."""
        return self.order[self.rank[c] + 1 :]


@dataclass(frozen=True)
class Profile:
    m: int
    ballots: tuple[Ballot, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        ballots = tuple(b if isinstance(b, Ballot) else Ballot(tuple(b)) for b in self.ballots)
        object.__setattr__(self, "ballots", ballots)
        if self.m < 1:
            raise ValueError("profile needs at least one candidate")
        if not ballots:
            raise ValueError("profile needs at least one voter")
        for i, b in enumerate(ballots):
            if len(b) != self.m:
                raise ValueError(f"ballot {i} has {len(b)} entries, expected {self.m}")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.m or len(set(labels)) != self.m:
                raise ValueError("labels must be unique and one per candidate")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_orders(cls, orders: Iterable[Sequence[int]], labels: Sequence[str] | None = None) -> Profile:
        ballots = tuple(Ballot(tuple(o)) for o in orders)
        if not ballots:
            raise ValueError("profile needs at least one voter")
        return cls(len(ballots[0]), ballots, tuple(labels) if labels is not None else None)

    @classmethod
    def from_letters(cls, rows: Iterable[str]) -> Profile:
        """Build from rows like ``"ebcda"``; letters map to candidates a=0, b=1, ..."""
        orders = [[ord(ch) - ord("a") for ch in row] for row in rows]
        return cls.from_orders(orders)

    @property
    def n(self) -> int:
        return len(self.ballots)

    @property
    def candidates(self) -> tuple[Candidate, ...]:
        labels = self.labels or (None,) * self.m
        return tuple(Candidate(i, lab) for i, lab in enumerate(labels))

    def orders(self) -> list[tuple[int, ...]]:
        return [b.order for b in self.ballots]

    def with_ballot(self, voter: int, ballot: Ballot | Sequence[int]) -> Profile:
        """Copy of the profile with one voter's ballot replaced."""
        if not isinstance(ballot, Ballot):
            ballot = Ballot(tuple(ballot))
        ballots = list(self.ballots)
        ballots[voter] = ballot
        return Profile(self.m, tuple(ballots), self.labels)

    def last_place_counts(self) -> list[int]:
        counts = [0] * self.m
        for b in self.ballots:
            counts[b.last] += 1
        return counts

    def name(self, c: int) -> str:
        if self.labels is not None:
            return self.labels[c]
        return str(c + 1)


def veto_power(m: int, n: int, k: int) -> int:
    """Number of candidates a coalition of ``k`` out of ``n`` voters may veto: ceil(mk/n) - 1."""
    if m < 1 or n < 1:
        raise ValueError(f"need m, n >= 1, got m={m}, n={n}")
    if not 1 <= k <= n:
        raise ValueError(f"coalition size {k} outside [1, {n}]")
    return -(-m * k // n) - 1


def parse_profile(text: str | Iterable[str]) -> Profile:
    lines = text.splitlines() if isinstance(text, str) else [ln.rstrip("\n") for ln in text]
    header = None
    orders: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            values = [int(tok) for tok in tokens]
        except ValueError:
            raise ProfileParseError(lineno, f"non-integer token in {line!r}") from None
        if header is None:
            if len(values) != 2:
                raise ProfileParseError(lineno, "header must be 'm n'")
            m, n = values
            if m < 1 or n < 1:
                raise ProfileParseError(lineno, "header needs m >= 1 and n >= 1")
            header = (m, n)
            continue
        m, n = header
        if len(orders) == n:
            raise ProfileParseError(lineno, f"more than {n} ballot lines")
        if len(values) != m:
            raise ProfileParseError(lineno, f"ballot has {len(values)} entries, expected {m}")
        for v in values:
            if not 1 <= v <= m:
                raise ProfileParseError(lineno, f"candidate {v} out of range 1..{m}")
        if len(set(values)) != m:
            raise ProfileParseError(lineno, "ballot repeats a candidate")
        orders.append(tuple(v - 1 for v in values))
    if header is None:
        raise ProfileParseError(len(lines), "missing 'm n' header")
    if len(orders) != header[1]:
        raise ProfileParseError(len(lines), f"expected {header[1]} ballot lines, found {len(orders)}")
    return Profile(header[0], tuple(Ballot(o) for o in orders))


def serialize_profile(p: Profile) -> str:
    out = [f"{p.m} {p.n}"]
    out.extend(" ".join(str(c + 1) for c in b.order) for b in p.ballots)
    return "\n".join(out) + "\n"


def read_profile(path) -> Profile:
    with open(path, encoding="utf-8") as fh:
        return parse_profile(fh.read())
