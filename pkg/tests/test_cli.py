import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest

from divsum import bernoulli
from divsum.cli import EXIT_CHECK, EXIT_OK, EXIT_USAGE, main
from divsum.exact import parse_rational


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def field(out, key):
    for line in out.splitlines():
        if line.startswith(f"{key}: "):
            return line.split(": ", 1)[1]
    raise KeyError(key)


GOLDEN_ZETA_1 = """\
query: zeta(-1)
value: -1/12
decimal: -0.083333333333333333
route: closed_form+regularized_series+euler_oracle
mode: regularized
"""


def test_golden_text_zeta(capsys):
    assert run(capsys, "zeta", "1") == (EXIT_OK, GOLDEN_ZETA_1, "")


def test_golden_json_regsum(capsys):
    code, out, _ = run(capsys, "regsum", "--f", "2*u-1", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out) == {
        "query": "regsum(((2 * u) - 1))",
        "value": {"num": "1", "den": "3"},
        "decimal": "0.33333333333333333",
        "route": "integral-limit+arithmetic-closed-form",
        "mode": "regularized",
    }


@pytest.mark.parametrize(
    "argv, value",
    [
        (["zeta", "1"], "-1/12"),
        (["eta", "2"], "0"),
        (["zeta", "0"], "-1/2"),
        (["zeta", "3"], "1/120"),
        (["eta", "3"], "-1/8"),
        (["bernoulli", "1"], "1/2"),
        (["bernoulli", "3"], "0"),
        (["bernoulli", "2"], "1/6"),
        (["sum", "--f", "u", "--from", "1", "--to", "4"], "10"),
        (["sum", "--f", "u", "--from", "4", "--to", "1"], "-5"),
        (["sum", "--f", "u^2", "--from", "0", "--to", "-1"], "0"),
        (["regsum", "--f", "2*u-1"], "1/3"),
        (["regsum", "--alt", "--f", "2*u-1"], "0"),
        (["regsum", "--f", "u^2"], "0"),
        (["regsum", "--f", "u^3"], "1/120"),
    ],
)
def test_example_values(capsys, argv, value):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert field(out, "value") == value


@pytest.mark.parametrize("argv", [["zeta", "5"], ["eta", "7"], ["bernoulli", "12"], ["regsum", "--f", "3*u^4-u"]])
def test_json_schema_and_round_trip(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert set(doc) >= {"query", "value", "decimal", "route", "mode"}
    assert doc["mode"] in {"convergent", "regularized"}
    num, den = doc["value"]["num"], doc["value"]["den"]
    assert isinstance(num, str) and isinstance(den, str)
    value = Fraction(int(num), int(den))
    assert float(doc["decimal"]) == pytest.approx(float(value), rel=1e-15, abs=1e-300)
    text = run(capsys, *argv)[1]
    assert parse_rational(field(text, "value")) == value


def test_bernoulli_poly_coefficients(capsys):
    code, out, _ = run(capsys, "bernoulli", "2", "--poly")
    assert code == EXIT_OK
    assert field(out, "coefficients") == "0 1/6 1/2 1/3"


def test_big_values_stay_exact(capsys):
    code, out, _ = run(capsys, "zeta", "49", "--format", "json")
    doc = json.loads(out)
    value = Fraction(int(doc["value"]["num"]), int(doc["value"]["den"]))
    assert value == -bernoulli.bernoulli_number(50) / 50


@pytest.mark.parametrize(
    "argv",
    [
        ["zeta", "-1"],
        ["eta", "x"],
        ["bernoulli"],
        ["sum", "--f", "1/u", "--from", "1", "--to", "3"],
        ["sum", "--f", "2u", "--from", "1", "--to", "3"],
        ["regsum", "--f", "1/u"],
        ["regsum", "--f", "sin(u)"],
        ["verify", "everything"],
        [],
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    code = None
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_USAGE
    assert capsys.readouterr().err


def test_regsum_rejection_points_elsewhere(capsys):
    _, _, err = run(capsys, "regsum", "--f", "1/u")
    assert "sum" in err and "verify" in err


def test_bad_antidifference_exits_two(capsys):
    code, out, err = run(capsys, "sum", "--f", "1/(4*u^2-1)", "--F", "1/n", "--from", "1", "--to", "3")
    assert code == EXIT_CHECK
    assert out == "" and "warning" in err


def test_negative_leading_F_expression(capsys):
    code, out, _ = run(
        capsys, "sum", "--f", "1/(4*u^2-1)", "--F", "-1/(2*(2*n-1))", "--from", "1", "--to", "3"
    )
    assert code == EXIT_OK
    assert field(out, "value") == "3/7"
    assert field(out, "route") == "telescoped"


def test_numeric_sum_reports_numeric_route(capsys):
    code, out, _ = run(
        capsys, "sum", "--f", "sin(u+1)-sin(u)", "--F", "sin(n)", "--from", "1", "--to", "3"
    )
    assert code == EXIT_OK
    assert field(out, "route").endswith("-numeric")
    assert float(field(out, "decimal")) == pytest.approx(math.sin(4) - math.sin(1), rel=1e-15)


def test_negative_difference_gets_a_note(capsys):
    code, out, _ = run(capsys, "regsum", "--f", "5-u")
    assert code == EXIT_OK
    assert "d < 0" in field(out, "note")


def test_verify_reference_values(capsys):
    code, out, _ = run(capsys, "verify", "paper")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[-1] == "8/8 checks passed"
    assert all(line.startswith("PASS ") for line in lines[:-1])


def test_verify_convergent(capsys):
    code, out, _ = run(capsys, "verify", "convergent")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "4/4 checks passed"


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "paper", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["passed"] == doc["total"] == 8


def test_fault_injection_mis_signed_b1(capsys, monkeypatch):
    monkeypatch.setattr(bernoulli, "B1", Fraction(-1, 2))
    code, out, _ = run(capsys, "verify", "all")
    assert code == EXIT_CHECK
    assert "FAIL paper/zeta(0)" in out
    code, out, err = run(capsys, "zeta", "0")
    assert code == EXIT_CHECK and out == ""
    assert "zeta" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "divsum", "eta", "1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert "value: 1/4" in proc.stdout
