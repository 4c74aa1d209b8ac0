"""Collision enumeration and the (delta, n, m, k, l) coordinate change.

A collision is one integer N sitting at two or more canonical positions
C(x, a) = C(y, b) with 2 <= a <= x/2.  Writing y = 2n + delta (delta 0 or 1),
x = 2n + l, m = n - b, k = n - a turns the pair equality into

    C(2n + delta, n - m) = C(2n + l, n - k)

which is the form every checker in the lemma module consumes.  ParamTuple
carries those five coordinates plus the derived smoothness bound
k0 = 2(k + l) - delta - 1 and window trim m0 = max(m + delta, floor(l/2)),
recomputed on the fly, never stored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .arith import binomial, fibonacci

__all__ = [
    "Representation",
    "CollisionRecord",
    "ParamTuple",
    "FibMember",
    "enumerate_collisions",
    "fib_identity",
    "to_param",
    "from_param",
    "check_eq12",
    "record_json_line",
    "records_jsonl",
]


@dataclass(frozen=True, slots=True)
class Representation:
    """Canonical position (x, a): 2 <= a <= x/2."""

    x: int
    a: int

    def __post_init__(self) -> None:
        if not (2 <= self.a and 2 * self.a <= self.x):
            raise ValueError(f"non-canonical representation ({self.x}, {self.a})")

    @property
    def value(self) -> int:
        return binomial(self.x, self.a)


@dataclass(frozen=True, slots=True)
class CollisionRecord:
    """One repeated value N with all its canonical representations."""

    N: int
    reps: tuple[Representation, ...]

    def __post_init__(self) -> None:
        if len(self.reps) < 2:
            raise ValueError(f"collision record for {self.N} needs at least two representations")
        if len({(r.x, r.a) for r in self.reps}) != len(self.reps):
            raise ValueError(f"duplicate representation in record for {self.N}")
        if any(r.value != self.N for r in self.reps):
            raise ValueError(f"representation does not evaluate to {self.N}")
        if list(self.reps) != sorted(self.reps, key=lambda r: -r.x):
            raise ValueError("representations must be sorted by descending x")


@dataclass(frozen=True, slots=True)
class ParamTuple:
    delta: int
    n: int
    m: int
    k: int
    l: int

    def __post_init__(self) -> None:
        if self.delta not in (0, 1):
            raise ValueError(f"delta must be 0 or 1, got {self.delta}")
        if self.n < 0:
            raise ValueError(f"n must be nonnegative, got {self.n}")

    @property
    def k0(self) -> int:
        return 2 * (self.k + self.l) - self.delta - 1

    @property
    def m0(self) -> int:
        return max(self.m + self.delta, self.l // 2)

    # hypothesis flags, all exact integer comparisons

    @property
    def ordering_ok(self) -> bool:
        """0 <= m < k < n/2 (the last part as 2k < n)."""
        return 0 <= self.m < self.k and 2 * self.k < self.n

    @property
    def ratio_ok(self) -> bool:
        """m <= 0.735 k, tested as 200 m <= 147 k."""
        return 200 * self.m <= 147 * self.k

    @property
    def l_gt_delta(self) -> bool:
        return self.l > self.delta

    @property
    def scale_ok(self) -> bool:
        return self.n >= 500000

    def hypotheses(self) -> dict[str, bool]:
        return {
            "ordering": self.ordering_ok,
            "ratio": self.ratio_ok,
            "l_gt_delta": self.l_gt_delta,
            "scale": self.scale_ok,
        }


def enumerate_collisions(v_max: int) -> list[CollisionRecord]:
    """Every N <= v_max with at least two canonical representations.

    For each a from 2 upward, x walks from 2a until C(x, a) > v_max; a
    stops when even the central C(2a, a) exceeds v_max.  That covers the
    canonical triangle completely, so no collision below v_max is missed.
    """
    if v_max < 6:
        raise ValueError(f"enumerate_collisions: v_max must be >= 6, got {v_max}")
    index: dict[int, list[Representation]] = {}
    a = 2
    while binomial(2 * a, a) <= v_max:
        x = 2 * a
        while (value := binomial(x, a)) <= v_max:
            index.setdefault(value, []).append(Representation(x, a))
            x += 1
        a += 1
    records = []
    for value in sorted(index):
        reps = index[value]
        if len(reps) >= 2:
            records.append(CollisionRecord(value, tuple(sorted(reps, key=lambda r: -r.x))))
    return records


@dataclass(frozen=True, slots=True)
class FibMember:
    x: int
    a: int
    y: int
    b: int
    verified: bool


def fib_identity(i: int) -> FibMember:
    """Member i of the infinite family C(F(2i+2) F(2i+3), F(2i) F(2i+3)) = C(x-1, a+1).

    verified is exact big-integer equality of the two binomials; i = 0
    degenerates to C(2,0) = C(1,1) = 1.
    """
    if i < 0:
        raise ValueError(f"fib_identity: i must be >= 0, got {i}")
    f = [fibonacci(2 * i + j) for j in range(4)]
    x = f[2] * f[3]
    a = f[0] * f[3]
    y, b = x - 1, a + 1
    return FibMember(x, a, y, b, binomial(x, a) == binomial(y, b))


def to_param(x: int, a: int, y: int, b: int) -> ParamTuple:
    """Coordinates of the pair C(x, a), C(y, b) with x > y.

    Equality of the binomials is not assumed here; check_eq12 tests it.
    """
    if x <= y:
        raise ValueError(f"to_param: need x > y, got x={x}, y={y}")
    delta = y % 2
    n = (y - delta) // 2
    return ParamTuple(delta=delta, n=n, m=n - b, k=n - a, l=x - 2 * n)


def from_param(t: ParamTuple) -> tuple[int, int, int, int]:
    """Inverse of to_param: (x, a, y, b)."""
    return 2 * t.n + t.l, t.n - t.k, 2 * t.n + t.delta, t.n - t.m


def check_eq12(t: ParamTuple) -> bool:
    """Exact test of C(2n+delta, n-m) = C(2n+l, n-k)."""
    if t.n - t.m < 0 or t.n - t.k < 0:
        return False
    return binomial(2 * t.n + t.delta, t.n - t.m) == binomial(2 * t.n + t.l, t.n - t.k)


def record_json_line(record: CollisionRecord) -> str:
    """One JSONL line: {"N": "<decimal string>", "reps": [[x, a], ...]}."""
    return json.dumps(
        {"N": str(record.N), "reps": [[r.x, r.a] for r in record.reps]},
        separators=(",", ":"),
    )


def records_jsonl(records: Iterable[CollisionRecord]) -> str:
    """All records as JSONL text, one line each, trailing newline included."""
    return "".join(record_json_line(r) + "\n" for r in records)
