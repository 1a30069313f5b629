"""Exact polynomial and rational-function arithmetic over the rationals.

Rationals are :class:`fractions.Fraction`, which is already normalized after
every operation (lowest terms, positive denominator, zero as ``0/1``).
Polynomials and rational functions are small immutable value classes built
on top of it.
"""
from __future__ import annotations

import math
import operator
import re
from fractions import Fraction
from typing import Iterable, Union

ExactRational = Fraction
RationalLike = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$")

_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rational_arith(a: RationalLike, b: RationalLike, op: str):
    """Apply ``op`` in {add, sub, mul, div, cmp} to two rationals.

    ``cmp`` returns -1, 0 or 1.  Division by zero raises ZeroDivisionError.
    """
    a, b = Fraction(a), Fraction(b)
    if op == "cmp":
        return (a > b) - (a < b)
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown rational operation {op!r}") from None
    return fn(a, b)


def format_rational(x: RationalLike) -> str:
    """Canonical text form: ``-p/q``, with ``/q`` dropped when q == 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; only accepts the canonical form."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a canonical rational: {text!r}")
    sign, num, den = m.groups()
    value = Fraction(int(num), int(den) if den else 1)
    if den and (den == "1" or value.denominator != int(den)):
        raise ValueError(f"rational not in lowest terms: {text!r}")
    if sign and value == 0:
        raise ValueError(f"negative zero is not canonical: {text!r}")
    return -value if sign else value


def _scaled_integers(coeffs) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


class Polynomial:
    """Dense univariate polynomial with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``.  Trailing zeros are stripped,
    so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, c: RationalLike) -> Polynomial:
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: RationalLike = 1) -> Polynomial:
        if k < 0:
            raise ValueError("monomial degree must be >= 0")
        return cls([0] * k + [c])

    @classmethod
    def x(cls) -> Polynomial:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = format_rational(abs(c))
            if i == 0:
                term = mag
            else:
                var = "x" if i == 1 else f"x^{i}"
                term = var if abs(c) == 1 else f"{mag}*{var}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    @staticmethod
    def _coerce(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        # convolve integer numerators over a common denominator
        a, da = _scaled_integers(self.coeffs)
        b, db = _scaled_integers(other.coeffs)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        den = da * db
        return Polynomial(Fraction(c, den) for c in out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        result, base = Polynomial.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: RationalLike) -> Polynomial:
        c = Fraction(c)
        return Polynomial(c * a for a in self.coeffs)

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        """Horner evaluation; exact unless ``x`` is a float."""
        if isinstance(x, float):
            return self.eval_float(x)
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def compose(self, inner: Polynomial) -> Polynomial:
        """Return ``self(inner(x))``."""
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def compose_shift(self, c: RationalLike) -> Polynomial:
        """Return ``p(x + c)``."""
        return self.compose(Polynomial([c, 1]))

    def reflect(self) -> Polynomial:
        """Return ``p(-x)``."""
        return Polynomial(-a if i % 2 else a for i, a in enumerate(self.coeffs))

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def antiderivative(self) -> Polynomial:
        """Antiderivative with zero constant term."""
        return Polynomial([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def integrate(self, lo: RationalLike, hi: RationalLike) -> Fraction:
        P = self.antiderivative()
        return P.eval(Fraction(hi)) - P.eval(Fraction(lo))

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        return self.scale(1 / self.leading)

    def divmod(self, divisor: Polynomial):
        """Euclidean division over Q: returns ``(quotient, remainder)``."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if len(self.coeffs) < len(divisor.coeffs):
            return Polynomial(), self
        a, da = _scaled_integers(self.coeffs)
        b, db = _scaled_integers(divisor.coeffs)
        # lead(b)**e * a = q*b + r with integer q, r
        q, r, e = _pdivmod(a, b)
        scale = da * b[-1] ** e
        return (
            Polynomial(Fraction(c * db, scale) for c in q),
            Polynomial(Fraction(c, scale) for c in r),
        )

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[1]


def _primitive(cs: list[int]) -> list[int]:
    g = 0
    for c in cs:
        g = math.gcd(g, c)
    if g > 1:
        cs = [c // g for c in cs]
    return cs


def _integer_coeffs(p: Polynomial) -> list[int]:
    return _primitive(_scaled_integers(p.coeffs)[0])


def _pdivmod(a: list[int], b: list[int]) -> tuple[list[int], list[int], int]:
    # pseudo-division: lead(b)**e * a = q*b + r, e = deg a - deg b + 1
    lb, db = b[-1], len(b) - 1
    e = len(a) - len(b) + 1
    if e <= 0:
        return [], list(a), 0
    r = list(a)
    q = [0] * e
    for shift in range(e - 1, -1, -1):
        la = r[shift + db] if shift + db < len(r) else 0
        r = [c * lb for c in r]
        q = [c * lb for c in q]
        if la:
            q[shift] += la
            for j, c in enumerate(b):
                r[shift + j] -= la * c
    r = r[:db]
    while r and r[-1] == 0:
        r.pop()
    return q, r, e


def _prem(a: list[int], b: list[int]) -> list[int]:
    return _pdivmod(a, b)[1]


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd over Q (zero if both are zero).

    Runs the Euclidean algorithm as a primitive pseudo-remainder sequence on
    integer coefficients, which keeps coefficient growth in check.
    """
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    a, b = _integer_coeffs(p), _integer_coeffs(q)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (_primitive(r) if r else r)
    return Polynomial(a).monic()


def poly_arith(p: Polynomial, q, op: str):
    """Dispatcher over {add, sub, mul, eval, compose_shift}.

    For ``eval`` and ``compose_shift`` the second argument is the rational
    evaluation point or shift.
    """
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "eval":
        return p.eval(Fraction(q))
    if op == "compose_shift":
        return p.compose_shift(q)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def poly_integrate(p: Polynomial, lo: RationalLike, hi: RationalLike) -> Fraction:
    return p.integrate(lo, hi)


class RationalFunction:
    """Reduced quotient ``numer / denom`` of two polynomials.

    The denominator is kept monic, which makes the representation unique.
    """

    __slots__ = ("numer", "denom")

    def __init__(self, numer: Polynomial, denom: Polynomial | None = None):
        if denom is None:
            denom = Polynomial.constant(1)
        if denom.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if numer.is_zero():
            numer, denom = Polynomial(), Polynomial.constant(1)
        else:
            g = poly_gcd(numer, denom)
            if g.degree > 0:
                numer, denom = numer // g, denom // g
            lead = denom.leading
            numer, denom = numer.scale(1 / lead), denom.scale(1 / lead)
        object.__setattr__(self, "numer", numer)
        object.__setattr__(self, "denom", denom)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numer == other.numer and self.denom == other.denom

    def __hash__(self):
        return hash((self.numer, self.denom))

    def __repr__(self):
        return f"RationalFunction({self.numer!r}, {self.denom!r})"

    def __str__(self):
        return f"({self.numer}) / ({self.denom})"

    def derivative(self) -> RationalFunction:
        n, d = self.numer, self.denom
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def euler_step(self) -> RationalFunction:
        """Apply the Euler operator ``x * d/dx``."""
        n, d = self.numer, self.denom
        return RationalFunction(
            Polynomial.x() * (n.derivative() * d - n * d.derivative()), d * d
        )

    def eval(self, x: RationalLike) -> Fraction:
        x = Fraction(x)
        den = self.denom.eval(x)
        if den == 0:
            raise ZeroDivisionError(f"rational function has a pole at {x}")
        return self.numer.eval(x) / den


def ratfunc_euler_step(r: RationalFunction) -> RationalFunction:
    return r.euler_step()

