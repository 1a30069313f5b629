"""Zeta and eta at non-positive integers, by three independent routes.

* closed form from Bernoulli numbers,
* regularized series of the monomial u^m,
* Euler's operator x d/dx applied m times to x/(1+x), evaluated at x = 1.

For zeta the third route goes through eta(-m) = (1 - 2^(1+m)) zeta(-m).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .bernoulli import bernoulli_number
from .exact import Polynomial, RationalFunction
from .summation import regularized_alt_series_sum, regularized_series_sum

CLOSED_FORM = "closed_form"
REGULARIZED_SERIES = "regularized_series"
EULER_ORACLE = "euler_oracle"
ROUTES = (CLOSED_FORM, REGULARIZED_SERIES, EULER_ORACLE)


class RouteDisagreement(ArithmeticError):
    """Two computation routes produced different values."""


@dataclass(frozen=True)
class SpecialValue:
    argument: int
    function: str
    value: Fraction
    route: str


def _check_m(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise ValueError(f"m must be a non-negative integer, got {m!r}")


def zeta_neg(m: int) -> SpecialValue:
    """zeta(-m) = -B_{m+1}/(m+1)."""
    _check_m(m)
    return SpecialValue(-m, "zeta", -bernoulli_number(m + 1) / (m + 1), CLOSED_FORM)


def eta_neg(m: int) -> SpecialValue:
    """eta(-m) = (2^(m+1) - 1) B_{m+1}/(m+1)."""
    _check_m(m)
    value = (2 ** (m + 1) - 1) * bernoulli_number(m + 1) / (m + 1)
    return SpecialValue(-m, "eta", value, CLOSED_FORM)


class _EulerChain:
    # memoized iterates x/(1+x), E x/(1+x), E^2 x/(1+x), ...
    def __init__(self):
        self._chain = [RationalFunction(Polynomial.x(), Polynomial([1, 1]))]
        self._lock = threading.Lock()

    def __getitem__(self, m: int) -> RationalFunction:
        if m >= len(self._chain):
            with self._lock:
                while len(self._chain) <= m:
                    self._chain.append(self._chain[-1].euler_step())
        return self._chain[m]


_EULER = _EulerChain()


def euler_rational_function(m: int) -> RationalFunction:
    """(x d/dx)^m applied to x/(1+x), whose series is sum (-1)^(u-1) u^m x^u."""
    _check_m(m)
    return _EULER[m]


def eta_euler_oracle(m: int) -> Fraction:
    return euler_rational_function(m).eval(1)


def functional_relation_residual(m: int) -> Fraction:
    """eta(-m) - (1 - 2^(1+m)) zeta(-m); zero for every m."""
    return eta_neg(m).value - (1 - 2 ** (1 + m)) * zeta_neg(m).value


def routes(function: str, m: int) -> dict[str, Fraction]:
    """Values of zeta(-m) or eta(-m) from every route, keyed by route name."""
    _check_m(m)
    monomial = Polynomial.monomial(m)
    if function == "zeta":
        return {
            CLOSED_FORM: zeta_neg(m).value,
            REGULARIZED_SERIES: regularized_series_sum(monomial).value,
            EULER_ORACLE: eta_euler_oracle(m) / (1 - 2 ** (1 + m)),
        }
    if function == "eta":
        return {
            CLOSED_FORM: eta_neg(m).value,
            REGULARIZED_SERIES: regularized_alt_series_sum(monomial).value,
            EULER_ORACLE: eta_euler_oracle(m),
        }
    raise ValueError(f"unknown function {function!r}; expected 'zeta' or 'eta'")


def cross_checked(function: str, m: int) -> SpecialValue:
    """Closed-form value, returned only if all routes agree exactly."""
    values = routes(function, m)
    if len(set(values.values())) != 1:
        detail = ", ".join(f"{k}={v}" for k, v in values.items())
        raise RouteDisagreement(f"{function}(-{m}) routes disagree: {detail}")
    return SpecialValue(-m, function, values[CLOSED_FORM], CLOSED_FORM)
