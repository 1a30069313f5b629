import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from divsum.exact import Polynomial
from divsum.parser import (
    ArityError,
    BinOp,
    EvaluationError,
    NotExactError,
    Num,
    Neg,
    ParseError,
    UnknownIdentifierError,
    Var,
    eval_exact,
    eval_numeric,
    extract_polynomial,
    parse_expr,
    render,
)
from divsum.verify import random_poly_expr


def test_parse_examples():
    assert eval_exact(parse_expr("1/(4*u^2-1)"), 1) == F(1, 3)
    assert parse_expr("u") == Var("u")
    e = parse_expr("(-1)^u * (2*u^2+1/2)/(2*u^2-1/2)^2")
    assert eval_exact(e, 1) == F(-10, 9)
    assert eval_numeric(e, 1.0) == pytest.approx(-10 / 9, rel=1e-15)


def test_numeric_examples():
    assert eval_numeric(parse_expr("4^u"), 3.0) == 64.0
    trig = parse_expr("sin(n-1/2)/(8*(2*n-1)^2*cos(1/2))", "n")
    assert eval_numeric(trig, 1.0) == pytest.approx(math.tan(0.5) / 8, rel=1e-15)
    assert eval_numeric(parse_expr("1/(2*u-1) - 1/(2*u+1)"), 2.0) == pytest.approx(2 / 15)


def test_minus_one_power_is_exact_sign():
    e = parse_expr("(-1)^u")
    assert [eval_numeric(e, float(u)) for u in range(-3, 4)] == [-1, 1, -1, 1, -1, 1, -1]


def test_precedence_and_associativity():
    assert eval_exact(parse_expr("1+2*3^2"), 0) == 19
    assert parse_expr("-u^2") == Neg(BinOp("^", Var("u"), Num(F(2))))
    assert parse_expr("2^u^2") == BinOp("^", Num(F(2)), BinOp("^", Var("u"), Num(F(2))))
    assert eval_exact(parse_expr("2^3^2"), 0) == 512
    assert eval_exact(parse_expr("8/4/2"), 0) == 1
    assert eval_exact(parse_expr("8-4-2"), 0) == 2
    assert eval_exact(parse_expr("2*-3"), 0) == -6
    assert eval_exact(parse_expr("u^-1"), 4) == F(1, 4)


def test_extract_polynomial_examples():
    assert extract_polynomial(parse_expr("3*u^2 - 1/2")) == Polynomial([F(-1, 2), 0, 3])
    assert extract_polynomial(parse_expr("1/(u+1)")) is None
    assert extract_polynomial(parse_expr("(u+1)*(u-1)")) == Polynomial([-1, 0, 1])
    assert extract_polynomial(parse_expr("sin(u)")) is None
    assert extract_polynomial(parse_expr("2^u")) is None
    assert extract_polynomial(parse_expr("2^3 * u / 4")) == Polynomial([0, 2])
    assert extract_polynomial(parse_expr("u^-1")) is None


@pytest.mark.parametrize(
    "text, exc",
    [
        ("2u", ParseError),
        ("sin(u, 2)", ArityError),
        ("v + 1", UnknownIdentifierError),
        ("u^u", ParseError),
        ("(u+1", ParseError),
        ("u + * 2", ParseError),
        ("u $ 2", ParseError),
        ("", ParseError),
        ("sin u", ParseError),
    ],
)
def test_syntax_errors(text, exc):
    with pytest.raises(exc):
        parse_expr(text)


def test_error_reports_position_and_expected():
    with pytest.raises(ParseError) as info:
        parse_expr("u + * 2")
    assert info.value.position == 4
    assert "number" in info.value.expected


def test_evaluation_errors():
    with pytest.raises(EvaluationError):
        eval_numeric(parse_expr("1/(u-1)"), 1.0)
    with pytest.raises(EvaluationError):
        eval_numeric(parse_expr("(-2)^u"), 0.5)
    with pytest.raises(EvaluationError):
        eval_exact(parse_expr("1/(u-1)"), 1)
    with pytest.raises(NotExactError):
        eval_exact(parse_expr("sin(u)"), 1)
    with pytest.raises(NotExactError):
        eval_exact(parse_expr("2^u"), F(1, 2))


def test_exact_handles_huge_powers():
    e = parse_expr("2^(u^2+u+1)")
    assert eval_exact(e, 200) == 2**40201


def test_random_round_trip_and_polynomial_agreement():
    rng = random.Random(11)
    for _ in range(100):
        text = random_poly_expr(rng)
        ast = parse_expr(text)
        assert parse_expr(render(ast)) == ast
        poly = extract_polynomial(ast)
        assert poly is not None
        for _ in range(20):
            x = F(rng.randint(-30, 30), rng.randint(1, 10))
            assert eval_exact(ast, x) == poly.eval(x)
            assert math.isclose(eval_numeric(ast, float(x)), float(poly.eval(x)), rel_tol=1e-12, abs_tol=1e-12)


@given(st.decimals(min_value=0, max_value=1000, places=3, allow_nan=False))
def test_decimal_literals_round_trip(d):
    ast = parse_expr(f"{d}*u")
    assert parse_expr(render(ast)) == ast


def test_other_variable_names():
    ast = parse_expr("n^2 - n", "n")
    assert extract_polynomial(ast) == Polynomial([0, -1, 1])
    with pytest.raises(UnknownIdentifierError):
        parse_expr("u", "n")
