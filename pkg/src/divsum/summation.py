"""Generalized sums over cyclic intervals and regularized values of series.

A regular function ``f`` comes with an antidifference ``F`` (its generating
function), ``F(n+1) - F(n) = f(n)``.  Every sum over ``Z_{a,b}`` is then
``F(b+1) - F(a)``, whichever way round ``a`` and ``b`` sit in the cyclic order.
Polynomial series get exact regularized values through the integral of their
partial-sum polynomial over [-1, 0].
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from . import bernoulli
from .exact import Polynomial, format_rational
from .ordering import interval
from .parser import (
    EvaluationError,
    NotExactError,
    compile_numeric,
    eval_exact,
    extract_polynomial,
    parse_expr,
)

log = logging.getLogger(__name__)

Number = Union[Fraction, float]

CONVERGENT = "convergent"
REGULARIZED = "regularized"


class DomainError(ArithmeticError):
    """An evaluator failed at a point the computation needs."""


class ContractError(ValueError):
    """An operation was called outside its stated preconditions."""


@dataclass(frozen=True)
class RegularizedValue:
    value: Number
    mode: str
    derivation: str

    @property
    def is_exact(self) -> bool:
        return isinstance(self.value, Fraction)

    def __str__(self):
        v = format_rational(self.value) if self.is_exact else repr(self.value)
        return f"{v} [{self.mode}, {self.derivation}]"


def _exact_or_none(fn):
    def call(n):
        try:
            return fn(n)
        except NotExactError:
            return None

    return call


@dataclass(frozen=True)
class RegularFunction:
    """An integer function with its generating function.

    Each side has a numeric evaluator and optionally an exact one; the exact
    evaluator may decline a point by returning None, in which case the numeric
    value is used.
    """

    f_numeric: Callable[[int], float]
    F_numeric: Callable[[int], float]
    f_exact: Optional[Callable[[int], Optional[Fraction]]] = None
    F_exact: Optional[Callable[[int], Optional[Fraction]]] = None
    parity: str = "none"
    exact_poly: Optional[Polynomial] = None
    label: str = ""

    def __post_init__(self):
        if self.parity not in ("even", "odd", "none"):
            raise ValueError(f"parity must be even, odd or none, not {self.parity!r}")

    @classmethod
    def from_polynomial(cls, p: Polynomial, label: str = "") -> RegularFunction:
        F = generating_poly(p)
        if p == p.reflect():
            parity = "even"
        elif p == -p.reflect():
            parity = "odd"
        else:
            parity = "none"
        return cls(
            f_numeric=p.eval_float,
            F_numeric=F.eval_float,
            f_exact=p.eval,
            F_exact=F.eval,
            parity=parity,
            exact_poly=p,
            label=label or str(p),
        )

    @classmethod
    def from_expressions(
        cls,
        f_text: str,
        F_text: str,
        f_var: str = "u",
        F_var: str = "n",
        parity: str = "none",
        label: str = "",
    ) -> RegularFunction:
        f_ast = parse_expr(f_text, f_var)
        F_ast = parse_expr(F_text, F_var)
        return cls(
            f_numeric=compile_numeric(f_ast),
            F_numeric=compile_numeric(F_ast),
            f_exact=_exact_or_none(lambda n: eval_exact(f_ast, n)),
            F_exact=_exact_or_none(lambda n: eval_exact(F_ast, n)),
            parity=parity,
            exact_poly=extract_polynomial(f_ast),
            label=label or f_text,
        )

    def _eval(self, exact, numeric, n: int, what: str) -> Number:
        try:
            if exact is not None:
                v = exact(n)
                if v is not None:
                    return v
            return numeric(n)
        except (EvaluationError, ZeroDivisionError) as exc:
            raise DomainError(f"{what}({n}) cannot be evaluated: {exc}") from None

    def f(self, n: int) -> Number:
        return self._eval(self.f_exact, self.f_numeric, n, "f")

    def F(self, n: int) -> Number:
        return self._eval(self.F_exact, self.F_numeric, n, "F")

    def residual(self, n: int) -> Number:
        """F(n+1) - F(n) - f(n); exact zero for a correct exact pair."""
        vals = [self.F(n + 1), self.F(n), self.f(n)]
        if all(isinstance(v, Fraction) for v in vals):
            return vals[0] - vals[1] - vals[2]
        return float(vals[0]) - float(vals[1]) - float(vals[2])

    def max_residual(self, window=range(-50, 51), relative: bool = True) -> Number:
        """Largest generating-function residual over ``window``.

        In relative mode each residual is divided by max(1, |f(n)|).
        """
        worst: Number = Fraction(0)
        for n in window:
            r = abs(self.residual(n))
            if relative:
                scale = max(Fraction(1), abs(self.f(n)))
                if isinstance(r, Fraction) and isinstance(scale, Fraction):
                    r = r / scale
                else:
                    r = float(r) / float(scale)
            if r > worst:
                worst = r
        return worst

    def parity_holds(self, window=range(1, 51)) -> bool:
        """Sampled check of the declared parity; a window test, not a proof."""
        if self.parity == "none":
            return True
        sign = 1 if self.parity == "even" else -1
        for u in window:
            a, b = self.f(-u), self.f(u)
            if isinstance(a, Fraction) and isinstance(b, Fraction):
                if a != sign * b:
                    return False
            elif not math.isclose(float(a), sign * float(b), rel_tol=1e-12, abs_tol=1e-300):
                return False
        return True


def partial_sum_poly(f: Polynomial) -> Polynomial:
    """S with S(n) = f(1) + ... + f(n), by linearity over power sums."""
    S = Polynomial()
    for j, c in enumerate(f.coeffs):
        if c:
            S = S + bernoulli.power_sum_poly(j).scale(c)
    return S


def generating_poly(f: Polynomial) -> Polynomial:
    """Polynomial antidifference F with F(n+1) - F(n) = f(n) and F(1) = 0."""
    return partial_sum_poly(f).compose_shift(-1)


def generalized_sum(rf: RegularFunction, a: int, b: int) -> RegularizedValue:
    """Sum of f over Z_{a,b}, taken as F(b+1) - F(a).

    For a forward finite interval this is the ordinary finite sum.  When ``b``
    precedes ``a`` it equals minus the sum over the gap strictly between them.
    """
    z = interval(a, b)
    value = rf.F(b + 1) - rf.F(a)
    if z.kind == "forward" and z.is_finite:
        return RegularizedValue(value, CONVERGENT, "telescoped")
    if z.is_full:
        return RegularizedValue(value, REGULARIZED, "full-circle")
    return RegularizedValue(value, REGULARIZED, f"telescoped-{z.kind}")


def sum_over_Z(rf: RegularFunction, a: int) -> RegularizedValue:
    """The sum over all of Z starting at ``a``; always zero."""
    value = rf.F(a) - rf.F(a)
    return RegularizedValue(value, REGULARIZED, "full-circle")


def regularized_limit(p: Polynomial) -> Fraction:
    """Regularized limit of p(n) as n grows: the integral of p over [-1, 0]."""
    return p.integrate(-1, 0)


def signed_limit_is_zero(p: Polynomial) -> Fraction:
    """Regularized limit of (-1)^n p(n), which is zero for every polynomial."""
    return Fraction(0)


def parity_split_limit(alpha: Polynomial, beta: Polynomial) -> Fraction:
    """Limit of a sequence equal to alpha(n) for even n and beta(n) for odd n.

    Written as (alpha+beta)/2 + (-1)^n (alpha-beta)/2; the oscillating part
    contributes nothing.
    """
    half = Fraction(1, 2)
    return regularized_limit((alpha + beta).scale(half)) + signed_limit_is_zero(
        (alpha - beta).scale(half)
    )


def regularized_series_sum(f: Polynomial) -> RegularizedValue:
    """Value of f(1) + f(2) + f(3) + ... for polynomial f."""
    value = regularized_limit(partial_sum_poly(f))
    mode = CONVERGENT if f.is_zero() else REGULARIZED
    return RegularizedValue(value, mode, "integral-limit")


def alternating_branch_polys(f: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Even-n and odd-n polynomials for the partial sums of sum (-1)^(u-1) f(u)."""
    alpha, beta = Polynomial(), Polynomial()
    for j, c in enumerate(f.coeffs):
        if c:
            a, b = bernoulli.parity_branch_polys(j + 1)
            alpha = alpha + a.scale(c)
            beta = beta + b.scale(c)
    return alpha, beta


def regularized_alt_series_sum(f: Polynomial) -> RegularizedValue:
    """Value of f(1) - f(2) + f(3) - ... for polynomial f."""
    value = parity_split_limit(*alternating_branch_polys(f))
    mode = CONVERGENT if f.is_zero() else REGULARIZED
    return RegularizedValue(value, mode, "parity-split")


def even_regular_sum(rf: RegularFunction, convergent: bool = False) -> RegularizedValue:
    """Sum over u >= 1 of an even regular function: -f(0)/2.

    ``convergent`` only labels the result; the value is the same either way.
    """
    if rf.parity != "even":
        raise ContractError(f"even_regular_sum needs an even function, got parity {rf.parity!r}")
    try:
        f0 = rf.f(0)
    except DomainError as exc:
        raise ContractError(f"f must be defined at 0: {exc}") from None
    value = -f0 / 2
    return RegularizedValue(value, CONVERGENT if convergent else REGULARIZED, "even-symmetry")


def arithmetic_series_values(a1, d) -> tuple[Fraction, Fraction]:
    """Plain and alternating sums of a1, a1+d, a1+2d, ...

    Returns ((5d - 6 a1)/12, (2 a1 - d)/4).  Negative ``d`` lies outside the
    original hypothesis; it is accepted and logged.
    """
    a1, d = Fraction(a1), Fraction(d)
    if d < 0:
        log.info("d = %s < 0 is outside the hypothesis d >= 0", format_rational(d))
    return (5 * d - 6 * a1) / 12, (2 * a1 - d) / 4


@dataclass
class ConvergenceReport:
    """Numeric checks for a classically convergent series with known value."""

    label: str
    n_terms: int
    expected: float
    partial_sum: float
    partial_error: float
    residual_max: Number
    residual_exact: bool
    symmetry_value: Number
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def num(x):
            return format_rational(x) if isinstance(x, Fraction) else repr(float(x))

        return {
            "label": self.label,
            "n_terms": self.n_terms,
            "expected": repr(self.expected),
            "partial_sum": repr(self.partial_sum),
            "partial_error": repr(self.partial_error),
            "residual_max": num(self.residual_max),
            "residual_exact": self.residual_exact,
            "symmetry_value": num(self.symmetry_value),
            **self.extras,
        }

    def to_text(self) -> str:
        return " ".join(f"{k}={v}" for k, v in self.to_dict().items())


def verify_convergent_example(
    rf: RegularFunction,
    expected: float,
    n_terms: int,
    window=range(1, 201),
) -> ConvergenceReport:
    """Partial sum, generating-function residual and -f(0)/2 for one series."""
    try:
        terms = [rf.f_numeric(u) for u in range(1, n_terms + 1)]
    except EvaluationError as exc:
        raise DomainError(f"partial sum of {rf.label}: {exc}") from None
    partial = math.fsum(terms)
    residuals = [abs(rf.residual(n)) for n in window]
    exact = all(isinstance(r, Fraction) for r in residuals)
    worst = max(residuals) if exact else max(float(r) for r in residuals)
    sym = even_regular_sum(rf, convergent=True).value
    return ConvergenceReport(
        label=rf.label,
        n_terms=n_terms,
        expected=expected,
        partial_sum=partial,
        partial_error=abs(partial - expected),
        residual_max=worst,
        residual_exact=exact,
        symmetry_value=sym,
    )
