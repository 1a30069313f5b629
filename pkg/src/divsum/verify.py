"""Reproduction and self-consistency checks behind ``divsum verify``.

Every check returns ``(ok, detail)``.  Random instances come from fixed seeds
so that two runs print byte-identical reports.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import bernoulli, ordering, parser, summation, zeta
from .exact import Polynomial, format_rational as fr

SUITES = ("paper", "convergent", "all")


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str

    def to_text(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail}"

    def to_dict(self) -> dict:
        return {"name": self.name, "status": "PASS" if self.ok else "FAIL", "detail": self.detail}


Check = Callable[[], "tuple[bool, str]"]


@dataclass(frozen=True)
class ConvergentSeries:
    label: str
    f: str
    F: str
    expected: float
    expected_exact: Fraction | None
    n_terms: int


CONVERGENT_SERIES = (
    ConvergentSeries("series1", "1/(4*u^2-1)", "-1/(2*(2*n-1))", 0.5, Fraction(1, 2), 10**5),
    ConvergentSeries(
        "series2",
        "(-1)^u*(2*u^2+1/2)/(2*u^2-1/2)^2",
        "(-1)^(n-1)/(2*n-1)^2",
        -1.0,
        Fraction(-1),
        10**4,
    ),
    ConvergentSeries(
        "series3",
        "((4^u-1)*(u-1/2)-1)/2^(u^2+u+1)",
        "-(n-1/2)/2^(n^2-n+1)",
        0.25,
        Fraction(1, 4),
        30,
    ),
    ConvergentSeries(
        "series4",
        "((u^2+1/4)*tan(1/2)*cos(u)-u*sin(u))/(4*u^2-1)^2",
        "sin(n-1/2)/(8*(2*n-1)^2*cos(1/2))",
        -math.tan(0.5) / 8,
        None,
        10**5,
    ),
)

PARTIAL_SUM_TOL = 5e-6
RESIDUAL_TOL = 1e-10
SYMMETRY_FLOAT_TOL = 1e-15

PAPER_VALUES = {
    ("zeta", 0): Fraction(-1, 2),
    ("zeta", 1): Fraction(-1, 12),
    ("zeta", 2): Fraction(0),
    ("zeta", 3): Fraction(1, 120),
    ("eta", 0): Fraction(1, 2),
    ("eta", 1): Fraction(1, 4),
    ("eta", 2): Fraction(0),
    ("eta", 3): Fraction(-1, 8),
}


def convergent_function(series: ConvergentSeries) -> summation.RegularFunction:
    return summation.RegularFunction.from_expressions(
        series.f, series.F, parity="even", label=series.label
    )


# -- reference value table ---------------------------------------------------


def _special_value_check(function: str, m: int, expected: Fraction) -> Check:
    def check():
        values = zeta.routes(function, m)
        ok = all(v == expected for v in values.values())
        got = ", ".join(f"{k}={fr(v)}" for k, v in values.items())
        return ok, f"expected {fr(expected)}; {got}"

    return check


def paper_checks() -> dict[str, Check]:
    return {
        f"paper/{fn}({-m})": _special_value_check(fn, m, v) for (fn, m), v in PAPER_VALUES.items()
    }


# -- convergent series -------------------------------------------------------


def _convergent_check(series: ConvergentSeries) -> Check:
    def check():
        rf = convergent_function(series)
        if not rf.parity_holds():
            return False, "declared even but parity check failed"
        rep = summation.verify_convergent_example(rf, series.expected, series.n_terms)
        sym = rep.symmetry_value
        if series.expected_exact is not None:
            sym_ok = isinstance(sym, Fraction) and sym == series.expected_exact
        else:
            sym_ok = abs(float(sym) - series.expected) <= SYMMETRY_FLOAT_TOL
        res = float(rep.residual_max)
        ok = rep.partial_error < PARTIAL_SUM_TOL and res < RESIDUAL_TOL and sym_ok
        sym_text = fr(sym) if isinstance(sym, Fraction) else f"{float(sym):.17g}"
        return ok, (
            f"N={rep.n_terms} |S_N-S|={rep.partial_error:.3e} "
            f"residual={'exact ' if rep.residual_exact else ''}{res:.3e} "
            f"-f(0)/2={sym_text}"
        )

    return check


def convergent_checks() -> dict[str, Check]:
    return {f"convergent/{s.label}": _convergent_check(s) for s in CONVERGENT_SERIES}


# -- divergent examples and arithmetic progressions ---------------------------


def _divergent_examples() -> tuple[bool, str]:
    one = Polynomial.constant(1)
    bad = []
    if summation.regularized_alt_series_sum(one).value != Fraction(1, 2):
        bad.append("1-1+1-...")
    if summation.regularized_series_sum(one).value != Fraction(-1, 2):
        bad.append("1+1+1+...")
    for k in range(1, 11):
        p = Polynomial.monomial(2 * k)
        rf = summation.RegularFunction.from_polynomial(p)
        vals = (
            summation.regularized_series_sum(p).value,
            summation.regularized_alt_series_sum(p).value,
            summation.even_regular_sum(rf).value,
        )
        if any(v != 0 for v in vals):
            bad.append(f"u^{2 * k}")
    # generating functions as listed alongside the divergent examples
    gens = [
        summation.RegularFunction.from_expressions("(-1)^(u+1)", "(-1)^n/2"),
        summation.RegularFunction.from_expressions("1", "n-1"),
    ]
    for rf in gens:
        if rf.max_residual(relative=False) != 0:
            bad.append(f"generating function for {rf.label}")
    return not bad, "all values reproduced" if not bad else f"failed: {', '.join(bad)}"


ARITHMETIC_TABLE = {
    (1, 0): (Fraction(-1, 2), Fraction(1, 2)),
    (1, 1): (Fraction(-1, 12), Fraction(1, 4)),
    (1, 2): (Fraction(1, 3), Fraction(0)),
}


def _random_rational(rng: random.Random, bound: int = 20) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _arithmetic_table() -> tuple[bool, str]:
    got = {k: summation.arithmetic_series_values(*k) for k in ARITHMETIC_TABLE}
    ok = got == ARITHMETIC_TABLE
    text = "; ".join(f"(a1={a},d={d})->({fr(s)},{fr(t)})" for (a, d), (s, t) in got.items())
    return ok, text


def _arithmetic_random() -> tuple[bool, str]:
    rng = random.Random(4)
    for _ in range(100):
        a1, d = _random_rational(rng), abs(_random_rational(rng))
        lin = Polynomial([a1 - d, d])
        closed = summation.arithmetic_series_values(a1, d)
        generic = (
            summation.regularized_series_sum(lin).value,
            summation.regularized_alt_series_sum(lin).value,
        )
        if closed != generic:
            return False, f"mismatch at a1={fr(a1)}, d={fr(d)}"
    return True, "100 random (a1, d) agree"


# -- Bernoulli and power sums ------------------------------------------------


def _power_sum_difference() -> tuple[bool, str]:
    x = Polynomial.x()
    for k in range(61):
        P = bernoulli.power_sum_poly(k)
        if P - P.compose_shift(-1) != x**k or P.eval(0) != 0:
            return False, f"identity fails at k={k}"
    return True, "P_k(n) - P_k(n-1) = n^k for k <= 60"


def _power_sum_brute() -> tuple[bool, str]:
    for k in range(41):
        P = bernoulli.power_sum_poly(k)
        acc = 0
        for n in range(1, 61):
            acc += n**k
            if P.eval(n) != acc:
                return False, f"k={k}, n={n}"
    return True, "matches direct summation for k <= 40, n <= 60"


def _reflection() -> tuple[bool, str]:
    for k in range(1, 41):
        P = bernoulli.power_sum_poly(k)
        for n in range(51):
            if P.eval(-n) != (-1) ** (k - 1) * P.eval(n - 1):
                return False, f"k={k}, n={n}"
    return True, "P_k(-n) = (-1)^(k-1) P_k(n-1) for k <= 40, n <= 50"


def _odd_vanishing() -> tuple[bool, str]:
    bad = [k for k in range(3, 62, 2) if bernoulli.bernoulli_number(k) != 0]
    b1 = bernoulli.bernoulli_number(1)
    ok = not bad and b1 == Fraction(1, 2)
    return ok, f"B_1={fr(b1)}, nonzero odd indices >= 3: {bad or 'none'}"


def _alternating_brute() -> tuple[bool, str]:
    for k in range(1, 21):
        acc = 0
        for n in range(1, 41):
            acc += (-1) ** (n - 1) * n ** (k - 1)
            if bernoulli.alternating_power_sum(k, n) != acc:
                return False, f"k={k}, n={n}"
    return True, "closed form matches direct summation for k <= 20, n <= 40"


# -- zeta / eta --------------------------------------------------------------


def _triple_agreement() -> tuple[bool, str]:
    for m in range(51):
        for fn in ("zeta", "eta"):
            if len(set(zeta.routes(fn, m).values())) != 1:
                return False, f"{fn}(-{m}) routes disagree"
    return True, "closed form, regularized series and Euler operator agree for m <= 50"


def _functional_relation() -> tuple[bool, str]:
    bad = [m for m in range(51) if zeta.functional_relation_residual(m) != 0]
    return not bad, f"nonzero residual at m in {bad}" if bad else "zero residual for m <= 50"


def _trivial_zeros() -> tuple[bool, str]:
    bad = [
        k for k in range(1, 21) if zeta.zeta_neg(2 * k).value != 0 or zeta.eta_neg(2 * k).value != 0
    ]
    return not bad, f"nonzero at k in {bad}" if bad else "zeta(-2k) = eta(-2k) = 0 for k <= 20"


def _monomial_agreement() -> tuple[bool, str]:
    for k in range(1, 41):
        p = Polynomial.monomial(k - 1)
        Bk = bernoulli.bernoulli_number(k)
        if summation.regularized_series_sum(p).value != -Bk / k:
            return False, f"plain sum of u^{k - 1}"
        if summation.regularized_alt_series_sum(p).value != (2**k - 1) * Bk / k:
            return False, f"alternating sum of u^{k - 1}"
    return True, "u^(k-1) sums equal -B_k/k and (2^k-1)B_k/k for k <= 40"


# -- generalized sums --------------------------------------------------------


def random_polynomial(rng: random.Random, max_degree: int = 5) -> Polynomial:
    return Polynomial(_random_rational(rng, 9) for _ in range(rng.randint(0, max_degree) + 1))


def literal_sum(p: Polynomial, a: int, b: int) -> Fraction:
    """Sum over Z_{a,b} by enumeration; infinite arcs go through the finite complement."""
    z = ordering.interval(a, b)
    if z.is_full:
        return Fraction(0)
    if z.is_finite:
        return sum((p.eval(u) for u in z), Fraction(0))
    gap = ordering.interval(b + 1, a - 1)
    return -sum((p.eval(u) for u in gap), Fraction(0))


def _telescoping() -> tuple[bool, str]:
    rng = random.Random(10)
    for _ in range(200):
        p = random_polynomial(rng)
        rf = summation.RegularFunction.from_polynomial(p)
        a, b = rng.randint(-40, 40), rng.randint(-40, 40)
        s = summation.generalized_sum(rf, a, b).value
        if s != literal_sum(p, a, b):
            return False, f"enumeration mismatch for {p} on Z[{a},{b}]"
        if s != -summation.generalized_sum(rf, b + 1, a - 1).value:
            return False, f"complement identity fails for {p} on Z[{a},{b}]"
    return True, "200 random sums match enumeration and the complement identity"


def _mirror() -> tuple[bool, str]:
    rng = random.Random(6)
    for _ in range(100):
        m, n = rng.sample(range(-40, 41), 2)
        if ordering.precedes(n, m):
            m, n = n, m
        p = random_polynomial(rng)
        lhs = summation.generalized_sum(summation.RegularFunction.from_polynomial(p), m, n)
        rhs = summation.generalized_sum(summation.RegularFunction.from_polynomial(p.reflect()), -n, -m)
        if lhs.value != rhs.value:
            return False, f"mirror fails for {p}, m={m}, n={n}"
    return True, "100 random precedence-ordered pairs"


def _full_circle() -> tuple[bool, str]:
    rng = random.Random(8)
    fns = [summation.RegularFunction.from_polynomial(random_polynomial(rng)) for _ in range(10)]
    for rf in fns:
        for _ in range(50):
            a = rng.randint(-1000, 1000)
            if summation.sum_over_Z(rf, a).value != 0 or summation.generalized_sum(rf, a, a - 1).value != 0:
                return False, f"nonzero full-circle sum for {rf.label} at a={a}"
    return True, "50 starting points x 10 functions give 0"


def _linearity() -> tuple[bool, str]:
    rng = random.Random(3)
    for _ in range(50):
        f, g, c = random_polynomial(rng), random_polynomial(rng), _random_rational(rng)
        for op in (summation.regularized_series_sum, summation.regularized_alt_series_sum):
            if op(f.scale(c) + g).value != c * op(f).value + op(g).value:
                return False, f"{op.__name__} not linear"
    return True, "50 random (c, f, g) for plain and alternating sums"


# -- ordering ----------------------------------------------------------------


def _order_axioms() -> tuple[bool, str]:
    span = range(-100, 101)
    for a in span:
        for b in span:
            if a != b and ordering.precedes(a, b) == ordering.precedes(b, a):
                return False, f"totality fails for {a}, {b}"
    rng = random.Random(1)
    for _ in range(5000):
        a, b, c = rng.sample(span, 3)
        if ordering.precedes(a, b) and ordering.precedes(b, c) and not ordering.precedes(a, c):
            return False, f"transitivity fails for {a}, {b}, {c}"
    return True, "totality on [-100,100]^2, transitivity on 5000 triples"


def _splitting() -> tuple[bool, str]:
    rng = random.Random(2)
    samples = list(range(-60, 61))
    done = 0
    while done < 200:
        a, c = rng.randint(-40, 40), rng.randint(-40, 40)
        whole = ordering.interval(a, c)
        b = rng.randint(-50, 50)
        if b not in whole or b == c or b == -1:
            continue
        left, right = ordering.interval(a, b), ordering.interval(b + 1, c)
        for u in samples:
            in_l, in_r = u in left, u in right
            if (in_l and in_r) or (in_l or in_r) != (u in whole):
                return False, f"split of Z[{a},{c}] at {b} fails at u={u}"
        done += 1
    for a in range(-50, 51):
        if not all(u in ordering.interval(a, a - 1) for u in samples):
            return False, f"Z[{a},{a - 1}] is not all of Z"
    return True, "200 random splits; Z[a,a-1] = Z for a in [-50,50]"


# -- parser ------------------------------------------------------------------


def random_poly_expr(rng: random.Random, depth: int = 3) -> str:
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(["u", str(rng.randint(0, 9)), f"({rng.randint(1, 9)}/{rng.randint(1, 9)})"])
    op = rng.choice(["+", "-", "*", "^", "neg", "/"])
    if op == "neg":
        return f"-({random_poly_expr(rng, depth - 1)})"
    if op == "^":
        return f"({random_poly_expr(rng, depth - 1)})^{rng.randint(0, 3)}"
    if op == "/":
        return f"({random_poly_expr(rng, depth - 1)})/{rng.randint(1, 9)}"
    return f"({random_poly_expr(rng, depth - 1)}){op}({random_poly_expr(rng, depth - 1)})"


def _parser_checks() -> tuple[bool, str]:
    if parser.eval_exact(parser.parse_expr("1+2*3^2"), 0) != 19:
        return False, "1+2*3^2 != 19"
    if parser.parse_expr("-u^2") != parser.Neg(
        parser.BinOp("^", parser.Var("u"), parser.Num(Fraction(2)))
    ):
        return False, "-u^2 is not -(u^2)"
    rng = random.Random(5)
    for _ in range(100):
        text = random_poly_expr(rng)
        ast = parser.parse_expr(text)
        if parser.parse_expr(parser.render(ast)) != ast:
            return False, f"round trip fails for {text}"
        poly = parser.extract_polynomial(ast)
        if poly is None:
            return False, f"no polynomial extracted from {text}"
        for _ in range(20):
            x = Fraction(rng.randint(-30, 30), rng.randint(1, 10))
            exact = float(poly.eval(x))
            num = parser.eval_numeric(ast, float(x))
            if not math.isclose(num, exact, rel_tol=1e-12, abs_tol=1e-12):
                return False, f"{text} at {x}: {num} vs {exact}"
    return True, "precedence; 100 random expressions round-trip and match exactly"


def invariant_checks() -> dict[str, Check]:
    return {
        "divergent/examples": _divergent_examples,
        "arithmetic/table": _arithmetic_table,
        "arithmetic/random": _arithmetic_random,
        "bernoulli/power-sum-difference": _power_sum_difference,
        "bernoulli/power-sum-brute-force": _power_sum_brute,
        "bernoulli/reflection": _reflection,
        "bernoulli/odd-vanishing": _odd_vanishing,
        "bernoulli/alternating-brute-force": _alternating_brute,
        "zeta/triple-agreement": _triple_agreement,
        "zeta/functional-relation": _functional_relation,
        "zeta/trivial-zeros": _trivial_zeros,
        "summation/monomials": _monomial_agreement,
        "summation/telescoping": _telescoping,
        "summation/mirror": _mirror,
        "summation/full-circle": _full_circle,
        "summation/linearity": _linearity,
        "ordering/axioms": _order_axioms,
        "ordering/splitting": _splitting,
        "parser/round-trip": _parser_checks,
    }


def checks_for(suite: str) -> dict[str, Check]:
    if suite == "paper":
        return paper_checks()
    if suite == "convergent":
        return convergent_checks()
    if suite == "all":
        return {**paper_checks(), **convergent_checks(), **invariant_checks()}
    raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")


def run_suite(suite: str) -> list[CheckResult]:
    """Run every check of ``suite``; results are sorted by check name."""
    results = []
    for name, check in sorted(checks_for(suite).items()):
        try:
            ok, detail = check()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, detail))
    return results
