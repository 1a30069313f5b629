"""Cyclic precedence order on Z: 0, 1, 2, ..., -2, -1.

``a`` precedes ``b`` when -1/a < -1/b, with 1/0 taken as infinity, so zero
comes first, non-negatives ascend, then negatives ascend up to -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

INT_BOUND = 2**62


class OrderingError(ValueError):
    """Invalid comparison or interval composition."""


def _check(u: int) -> int:
    if isinstance(u, bool) or not isinstance(u, int):
        raise TypeError(f"expected an integer, got {type(u).__name__}")
    if not -INT_BOUND <= u <= INT_BOUND:
        raise OrderingError(f"integer {u} outside supported range +/-2**62")
    return u


def _key(u: int) -> tuple[int, int]:
    return (0, u) if u >= 0 else (1, u)


def precedes(a: int, b: int) -> bool:
    """Strict precedence ``a < b`` in the cyclic order; a == b is an error."""
    _check(a), _check(b)
    if a == b:
        raise OrderingError(f"{a} is not strictly comparable with itself")
    return _key(a) < _key(b)


def precedes_or_equal(a: int, b: int) -> bool:
    return a == b or precedes(a, b)


def successor(u: int) -> int:
    """Next integer in precedence order; -1 is the last element."""
    _check(u)
    if u == -1:
        raise OrderingError("-1 is the last element and has no successor")
    return u + 1


def _pieces(start: int, end: int) -> list[tuple[int, int]]:
    # interval as forward runs (x, y) with x <= y in precedence order
    if precedes_or_equal(start, end):
        return [(start, end)]
    return [(start, -1), (0, end)]


def _run_is_finite(x: int, y: int) -> bool:
    return (x >= 0) == (y >= 0)


@dataclass(frozen=True)
class CyclicInterval:
    """The set Z_{a,b}: [a, b] if a precedes-or-equals b, else [a, -1] u [0, b]."""

    start: int
    end: int

    def __post_init__(self):
        _check(self.start), _check(self.end)

    @property
    def kind(self) -> str:
        return "forward" if precedes_or_equal(self.start, self.end) else "wraparound"

    def pieces(self) -> list[tuple[int, int]]:
        return _pieces(self.start, self.end)

    @property
    def is_finite(self) -> bool:
        return all(_run_is_finite(x, y) for x, y in self.pieces())

    @property
    def is_full(self) -> bool:
        return self.end == self.start - 1

    def __contains__(self, u: int) -> bool:
        _check(u)
        a, b = self.start, self.end
        if u == a or u == b:
            return True
        if self.kind == "forward":
            return precedes(a, u) and precedes(u, b)
        return not (precedes(b, u) and precedes(u, a))

    def __iter__(self) -> Iterator[int]:
        """Members in precedence order; only finite intervals are iterable."""
        if not self.is_finite:
            raise OrderingError(f"cannot iterate infinite interval {self}")
        runs = sorted(self.pieces(), key=lambda r: _key(r[0]))
        for x, y in runs:
            yield from range(x, y + 1)

    def __len__(self):
        if not self.is_finite:
            raise OrderingError(f"infinite interval {self} has no length")
        return sum(y - x + 1 for x, y in self.pieces())

    def __str__(self):
        return f"Z[{self.start},{self.end}]"


def interval(a: int, b: int) -> CyclicInterval:
    return CyclicInterval(a, b)


def _runs_overlap(r1: tuple[int, int], r2: tuple[int, int]) -> bool:
    lo = max(r1[0], r2[0], key=_key)
    hi = min(r1[1], r2[1], key=_key)
    return precedes_or_equal(lo, hi)


def interval_concat(g1: CyclicInterval, g2: CyclicInterval) -> CyclicInterval:
    """Join two disjoint intervals where g2 starts right after g1 ends."""
    if g1.end == -1 or successor(g1.end) != g2.start:
        raise OrderingError(f"{g1} and {g2} are not adjacent")
    for r1 in g1.pieces():
        for r2 in g2.pieces():
            if _runs_overlap(r1, r2):
                raise OrderingError(f"{g1} and {g2} overlap")
    return CyclicInterval(g1.start, g2.end)
