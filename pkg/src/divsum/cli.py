"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 failed cross-check.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from . import bernoulli, summation, verify, zeta
from .exact import format_rational, parse_rational
from .parser import ParseError, extract_polynomial, parse_expr, render

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2

RESIDUAL_LIMIT = 1e-9


class UsageError(Exception):
    pass


class CheckFailure(Exception):
    pass


def decimal_text(x) -> str:
    """17 significant digits of an exact rational (or a float)."""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = 17
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return format(d, ".17g") if d else "0"


@dataclass(frozen=True)
class OutputRecord:
    query: str
    value: Fraction
    route: str
    mode: str
    extra: tuple = ()

    def to_dict(self) -> dict:
        out = {
            "query": self.query,
            "value": {"num": str(self.value.numerator), "den": str(self.value.denominator)},
            "decimal": decimal_text(self.value),
            "route": self.route,
            "mode": self.mode,
        }
        out.update(self.extra)
        return out

    def to_text(self) -> str:
        lines = [
            f"query: {self.query}",
            f"value: {format_rational(self.value)}",
            f"decimal: {decimal_text(self.value)}",
            f"route: {self.route}",
            f"mode: {self.mode}",
        ]
        lines += [f"{k}: {v}" for k, v in self.extra]
        return "\n".join(lines)


def _emit(record: OutputRecord, fmt: str) -> None:
    assert parse_rational(format_rational(record.value)) == record.value
    if fmt == "json":
        print(json.dumps(record.to_dict()))
    else:
        print(record.to_text())


def _non_negative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be a non-negative integer, got {v}")
    return v


def _special(function: str, m: int) -> OutputRecord:
    try:
        sv = zeta.cross_checked(function, m)
    except zeta.RouteDisagreement as exc:
        raise CheckFailure(str(exc)) from None
    return OutputRecord(
        query=f"{function}({-m})",
        value=sv.value,
        route="+".join(zeta.ROUTES),
        mode=summation.REGULARIZED,
    )


def cmd_zeta(args) -> OutputRecord:
    return _special("zeta", args.m)


def cmd_eta(args) -> OutputRecord:
    return _special("eta", args.m)


def cmd_bernoulli(args) -> OutputRecord:
    extra = ()
    if args.poly:
        coeffs = bernoulli.power_sum_poly(args.k).coeffs
        extra = (("coefficients", " ".join(format_rational(c) for c in coeffs)),)
    return OutputRecord(
        query=f"bernoulli({args.k})",
        value=bernoulli.bernoulli_number(args.k),
        route="recurrence",
        mode=summation.CONVERGENT,
        extra=extra,
    )


def _parse(text: str, var: str, flag: str):
    try:
        return parse_expr(text, var)
    except ParseError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _residual_report(rf: summation.RegularFunction, a: int, b: int):
    # relative residual over [-50, 50] plus both endpoints; poles are skipped
    window = sorted(set(range(-50, 51)) | {a, b})
    worst, skipped = 0.0, []
    for n in window:
        try:
            r = rf.max_residual(window=(n,))
        except summation.DomainError:
            skipped.append(n)
            continue
        worst = max(worst, float(r))
    return worst, skipped


def cmd_sum(args) -> OutputRecord:
    f_ast = _parse(args.f, args.var, "--f")
    poly = extract_polynomial(f_ast)
    query = f"sum({render(f_ast)}, {args.a}, {args.b})"
    extra = []
    if args.F is not None:
        F_ast = _parse(args.F, args.F_var, "--F")
        rf_user = summation.RegularFunction.from_expressions(args.f, args.F, args.var, args.F_var)
        worst, skipped = _residual_report(rf_user, args.a, args.b)
        extra.append(("residual", f"{worst:.3e}"))
        if skipped:
            extra.append(("residual_skipped", " ".join(map(str, skipped))))
        if worst > RESIDUAL_LIMIT:
            raise CheckFailure(
                f"warning: F = {render(F_ast)} is not an antidifference of f "
                f"(relative residual {worst:.3e} > {RESIDUAL_LIMIT:g})"
            )
    if poly is not None:
        rf = summation.RegularFunction.from_polynomial(poly)
    elif args.F is None:
        raise UsageError("--F is required when f is not a polynomial")
    else:
        rf = rf_user
    try:
        result = summation.generalized_sum(rf, args.a, args.b)
    except summation.DomainError as exc:
        raise UsageError(str(exc)) from None
    value = result.value
    route = result.derivation
    if not isinstance(value, Fraction):
        route += "-numeric"
        value = Fraction(value)
    return OutputRecord(query, value, route, result.mode, tuple(extra))


def cmd_regsum(args) -> OutputRecord:
    f_ast = _parse(args.f, args.var, "--f")
    poly = extract_polynomial(f_ast)
    if poly is None:
        raise UsageError(
            f"{args.f!r} is not a polynomial in {args.var}; regularized sums are exact only for "
            "polynomials. Use `sum --F ...` or `verify convergent` for other series."
        )
    alt = args.alt
    op = summation.regularized_alt_series_sum if alt else summation.regularized_series_sum
    result = op(poly)
    routes = [result.derivation]
    checks = {}
    extra = ()
    # independent closed forms where they apply
    if poly.degree <= 1:
        a1, d = poly.eval(1), poly[1]
        checks["arithmetic-closed-form"] = summation.arithmetic_series_values(a1, d)[int(alt)]
        if d < 0:
            extra = (("note", "common difference d < 0 lies outside the hypothesis d >= 0"),)
    nonzero = [j for j, c in enumerate(poly.coeffs) if c]
    if len(nonzero) == 1:
        j = nonzero[0]
        c, Bk = poly[j], bernoulli.bernoulli_number(j + 1)
        closed = (2 ** (j + 1) - 1) * Bk / (j + 1) if alt else -Bk / (j + 1)
        checks["bernoulli-closed-form"] = c * closed
    for name, v in checks.items():
        if v != result.value:
            raise CheckFailure(
                f"{name} gives {format_rational(v)} but {result.derivation} gives "
                f"{format_rational(result.value)}"
            )
        routes.append(name)
    prefix = "altsum" if alt else "regsum"
    return OutputRecord(
        f"{prefix}({render(f_ast)})", result.value, "+".join(routes), result.mode, extra
    )


def cmd_verify(args) -> int:
    results = verify.run_suite(args.suite)
    passed = sum(r.ok for r in results)
    if args.format == "json":
        print(json.dumps({
            "suite": args.suite,
            "passed": passed,
            "total": len(results),
            "checks": [r.to_dict() for r in results],
        }, indent=2))
    else:
        for r in results:
            print(r.to_text())
        print(f"{passed}/{len(results)} checks passed")
    return EXIT_OK if passed == len(results) else EXIT_CHECK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="divsum",
        description="Exact values of divergent series, zeta(-m) and eta(-m).",
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_format(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        return sp

    for name, fn, desc in (("zeta", cmd_zeta, "zeta(-m)"), ("eta", cmd_eta, "eta(-m)")):
        sp = with_format(sub.add_parser(name, help=f"exact {desc}, cross-checked three ways"))
        sp.add_argument("m", type=_non_negative)
        sp.set_defaults(func=fn)

    sp = with_format(sub.add_parser("bernoulli", help="Bernoulli number B_k (B_1 = +1/2)"))
    sp.add_argument("k", type=_non_negative)
    sp.add_argument("--poly", action="store_true",
                    help="also print coefficients of 1^k + ... + n^k, constant term first")
    sp.set_defaults(func=cmd_bernoulli)

    expr_help = ("expression; operators + - * / ^ with ^ right-associative "
                 "(2^u^2 = 2^(u^2)); multiplication must be explicit")
    sp = with_format(sub.add_parser("sum", help="generalized sum of f(u) over the cyclic interval"))
    sp.add_argument("--f", required=True, help=f"summand in --var; {expr_help}")
    sp.add_argument("--from", dest="a", type=int, required=True)
    sp.add_argument("--to", dest="b", type=int, required=True)
    sp.add_argument("--F", default=None, help="generating function in --F-var (needed unless f is a polynomial)")
    sp.add_argument("--var", default="u")
    sp.add_argument("--F-var", dest="F_var", default="n")
    sp.set_defaults(func=cmd_sum)

    sp = with_format(sub.add_parser("regsum", help="regularized f(1) + f(2) + ... for polynomial f"))
    sp.add_argument("--f", required=True, help=expr_help)
    sp.add_argument("--alt", action="store_true", help="alternating sum f(1) - f(2) + ...")
    sp.add_argument("--var", default="u")
    sp.set_defaults(func=cmd_regsum)

    sp = with_format(sub.add_parser("verify", help="run the reproduction and invariant checks"))
    sp.add_argument("suite", choices=verify.SUITES)
    sp.set_defaults(func=cmd_verify)
    return p


EXPRESSION_FLAGS = ("--f", "--F")


def _glue_expressions(argv: list[str]) -> list[str]:
    # "--F -1/(2*n)" would otherwise read the expression as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok in EXPRESSION_FLAGS:
            value = next(it, None)
            out.append(tok if value is None else f"{tok}={value}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_expressions(argv))
    try:
        if args.command == "verify":
            return cmd_verify(args)
        record = args.func(args)
    except UsageError as exc:
        print(f"divsum {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CheckFailure as exc:
        print(f"divsum {args.command}: {exc}", file=sys.stderr)
        return EXIT_CHECK
    _emit(record, args.format)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
