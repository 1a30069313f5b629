"""Bernoulli numbers (B1 = +1/2) and power-sum polynomials."""
from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

from .exact import Polynomial

# The classical recurrence yields B1 = -1/2; this is the single place where the
# +1/2 convention is applied.  Odd entries >= 3 vanish, so nothing else changes.
B1 = Fraction(1, 2)


class BernoulliTable:
    """Memoized Bernoulli numbers, grown monotonically on demand."""

    def __init__(self):
        self._classical = [Fraction(1)]
        self._lock = threading.Lock()

    def _extend(self, k: int) -> None:
        with self._lock:
            vals = self._classical
            # sum_{j=0}^{n} C(n+1, j) B_j = 0  for n >= 1
            for n in range(len(vals), k + 1):
                s = sum(comb(n + 1, j) * vals[j] for j in range(n))
                vals.append(-s / (n + 1))

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise ValueError("Bernoulli index must be >= 0")
        if k >= len(self._classical):
            self._extend(k)
        if k == 1:
            return B1
        return self._classical[k]

    def __len__(self):
        return len(self._classical)

    @property
    def values(self) -> list[Fraction]:
        return [self[k] for k in range(len(self))]


TABLE = BernoulliTable()


def bernoulli_number(k: int) -> Fraction:
    """B_k with B_1 = +1/2."""
    return TABLE[k]


def power_sum_poly(k: int) -> Polynomial:
    """Polynomial P with P(n) = 1^k + 2^k + ... + n^k.

    Built as (1/(k+1)) * sum_{u=0}^{k} C(k+1, u) B_u n^(k+1-u).
    """
    if k < 0:
        raise ValueError("power-sum exponent must be >= 0")
    coeffs = [Fraction(0)] * (k + 2)
    for u in range(k + 1):
        coeffs[k + 1 - u] = comb(k + 1, u) * bernoulli_number(u) / (k + 1)
    return Polynomial(coeffs)


def _alternating_parts(k: int) -> tuple[Fraction, Polynomial]:
    # closed form = const - (-1)^n * tail(n)
    if k < 1:
        raise ValueError("alternating power sum needs k >= 1")
    const = (2**k - 1) * bernoulli_number(k) / k
    coeffs = [Fraction(0)] * k
    for u in range(1, k + 1):
        coeffs[k - u] = (2**u - 1) * comb(k, u) * bernoulli_number(u) / k
    return const, Polynomial(coeffs)


def alternating_power_sum(k: int, n: int) -> Fraction:
    """1^(k-1) - 2^(k-1) + ... + (-1)^(n-1) n^(k-1), via the closed form."""
    if n < 1:
        raise ValueError("n must be >= 1")
    const, tail = _alternating_parts(k)
    sign = 1 if n % 2 == 0 else -1
    return const - sign * tail.eval(n)


def parity_branch_polys(k: int) -> tuple[Polynomial, Polynomial]:
    """The closed form of the alternating sum with (-1)^n fixed to +1 and -1.

    Returns ``(even_branch, odd_branch)``.
    """
    const, tail = _alternating_parts(k)
    return const - tail, const + tail
