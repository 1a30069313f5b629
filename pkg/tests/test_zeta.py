from fractions import Fraction as F

import pytest

from divsum import bernoulli
from divsum.exact import Polynomial, RationalFunction
from divsum.summation import regularized_alt_series_sum, regularized_series_sum
from divsum.zeta import (
    RouteDisagreement,
    cross_checked,
    eta_euler_oracle,
    eta_neg,
    euler_rational_function,
    functional_relation_residual,
    routes,
    zeta_neg,
)


@pytest.mark.parametrize("m, expected", [(0, F(-1, 2)), (1, F(-1, 12)), (2, F(0)), (3, F(1, 120))])
def test_zeta_values(m, expected):
    sv = zeta_neg(m)
    assert sv.value == expected and sv.argument == -m and sv.function == "zeta"


@pytest.mark.parametrize("m, expected", [(0, F(1, 2)), (1, F(1, 4)), (2, F(0)), (3, F(-1, 8))])
def test_eta_values(m, expected):
    assert eta_neg(m).value == expected
    assert eta_euler_oracle(m) == expected


def test_euler_rational_functions_match_displayed_forms():
    x = Polynomial.x()
    one_plus = Polynomial([1, 1])
    # x times 1/(1+x)^2, (1-x)/(1+x)^3, (1-4x+x^2)/(1+x)^4
    assert euler_rational_function(1) == RationalFunction(x, one_plus**2)
    assert euler_rational_function(2) == RationalFunction(x * Polynomial([1, -1]), one_plus**3)
    assert euler_rational_function(3) == RationalFunction(x * Polynomial([1, -4, 1]), one_plus**4)


def test_triple_agreement():
    for m in range(51):
        z, e = zeta_neg(m).value, eta_neg(m).value
        assert e == eta_euler_oracle(m) == regularized_alt_series_sum(Polynomial.monomial(m)).value
        assert z == regularized_series_sum(Polynomial.monomial(m)).value
        assert len(set(routes("zeta", m).values())) == 1


@pytest.mark.parametrize("m", [0, 2, 5])
def test_functional_relation_examples(m):
    assert functional_relation_residual(m) == 0


def test_functional_relation_range():
    assert all(functional_relation_residual(m) == 0 for m in range(51))


def test_trivial_zeros():
    for k in range(1, 21):
        assert zeta_neg(2 * k).value == 0
        assert eta_neg(2 * k).value == 0


def test_eta_uses_the_next_bernoulli_index():
    # with B_m instead of B_{m+1}, eta(-1) would be 3/4 rather than 1/4
    assert F(3, 2) * bernoulli.bernoulli_number(1) == F(3, 4)
    assert eta_neg(1).value == F(1, 4)


def test_negative_argument_rejected():
    with pytest.raises(ValueError):
        zeta_neg(-1)
    with pytest.raises(ValueError):
        routes("gamma", 1)


def test_cross_check_detects_wrong_sign_convention(monkeypatch):
    monkeypatch.setattr(bernoulli, "B1", F(-1, 2))
    with pytest.raises(RouteDisagreement):
        cross_checked("zeta", 0)
