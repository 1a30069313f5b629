"""Exact regularized sums of divergent series and zeta/eta at non-positive integers."""
from .bernoulli import alternating_power_sum, bernoulli_number, parity_branch_polys, power_sum_poly
from .exact import Polynomial, RationalFunction, format_rational, parse_rational
from .ordering import CyclicInterval, interval, interval_concat, precedes
from .summation import (
    RegularFunction,
    RegularizedValue,
    arithmetic_series_values,
    even_regular_sum,
    generalized_sum,
    regularized_alt_series_sum,
    regularized_limit,
    regularized_series_sum,
    sum_over_Z,
)
from .zeta import eta_euler_oracle, eta_neg, functional_relation_residual, zeta_neg

__version__ = "0.1.0"
