"""Recursive-descent parser for one-variable expressions such as ``1/(4*u^2-1)``.

Grammar, loosest binding first::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?          # right-associative
    atom    := NUMBER | VAR | FUNC '(' expr ')' | '(' expr ')'

``^`` needs either an integer-literal exponent or a base that does not mention
the variable, so ``u^3``, ``(-1)^u`` and ``2^(u^2+u+1)`` are accepted while
``u^u`` is not.  Multiplication is never implicit: ``2u`` is a syntax error.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .exact import Polynomial

FUNCTIONS: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "abs": abs,
}

# exact evaluation refuses exponents beyond this magnitude
MAX_EXACT_EXPONENT = 1_000_000


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected=()):
        self.position = position
        self.expected = tuple(sorted(expected))
        detail = f" (expected one of: {', '.join(self.expected)})" if expected else ""
        super().__init__(f"{message} at position {position}{detail}")


class UnknownIdentifierError(ParseError):
    pass


class ArityError(ParseError):
    pass


class EvaluationError(ArithmeticError):
    """Expression cannot be evaluated at the requested point."""


class NotExactError(EvaluationError):
    """Expression has no exact rational value at the requested point."""


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Neg, BinOp, Call]

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))"
)


@dataclass
class _Token:
    kind: str  # num, ident, op, end
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append(_Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


def mentions_variable(node: Expr) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, Num):
        return False
    if isinstance(node, Neg):
        return mentions_variable(node.operand)
    if isinstance(node, Call):
        return mentions_variable(node.arg)
    return mentions_variable(node.left) or mentions_variable(node.right)


def _is_integer_literal(node: Expr) -> bool:
    if isinstance(node, Neg):
        node = node.operand
    return isinstance(node, Num) and node.value.denominator == 1


class _Parser:
    def __init__(self, text: str, var_name: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.var_name = var_name

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Token:
        if self.tok.text != text or self.tok.kind != "op":
            raise ParseError(f"unexpected {self._describe()}", self.tok.pos, {repr(text)})
        return self.advance()

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(
                f"unexpected {self._describe()}",
                self.tok.pos,
                {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"},
            )
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            pos = self.advance().pos
            exponent = self.unary()
            if not (_is_integer_literal(exponent) or not mentions_variable(base)):
                raise ParseError(
                    "'^' needs an integer exponent or a base free of the variable", pos
                )
            return BinOp("^", base, exponent)
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(Fraction(t.text))
        if t.kind == "ident":
            self.advance()
            if t.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                if self.tok.kind == "op" and self.tok.text == ",":
                    raise ArityError(f"{t.text}() takes exactly one argument", self.tok.pos)
                self.expect(")")
                return Call(t.text, arg)
            if t.text == self.var_name:
                return Var(t.text)
            raise UnknownIdentifierError(
                f"unknown identifier {t.text!r}",
                t.pos,
                {repr(self.var_name)} | {f"{f}(" for f in FUNCTIONS},
            )
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(
            f"unexpected {self._describe()}", t.pos, {"number", "variable", "function", "'('", "'-'"}
        )


def parse_expr(text: str, var_name: str = "u") -> Expr:
    """Parse ``text`` into an expression tree over the single variable ``var_name``."""
    if not text or not text.strip():
        raise ParseError("empty expression", 0, {"expression"})
    if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", var_name) or var_name in FUNCTIONS:
        raise ValueError(f"invalid variable name {var_name!r}")
    return _Parser(text, var_name).parse()


def _render_number(x: Fraction) -> str:
    if x < 0:
        return f"(-{_render_number(-x)})"
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"({x.numerator}/{x.denominator})"
    places = max(twos, fives)
    scaled = x * 10**places
    digits = str(scaled.numerator).rjust(places + 1, "0")
    return f"{digits[:-places]}.{digits[-places:]}"


def render(node: Expr) -> str:
    """Canonical, fully parenthesized text that parses back to the same tree."""
    if isinstance(node, Num):
        return _render_number(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"(-{render(node.operand)})"
    if isinstance(node, Call):
        return f"{node.func}({render(node.arg)})"
    return f"({render(node.left)} {node.op} {render(node.right)})"


def _numeric_pow(base: float, exponent: float) -> float:
    if base < 0 and exponent != int(exponent):
        raise EvaluationError(f"non-integer power {exponent} of negative base {base}")
    if base == 0 and exponent < 0:
        raise EvaluationError("zero raised to a negative power")
    try:
        result = base**exponent
    except OverflowError:
        raise EvaluationError(f"overflow in {base}^{exponent}") from None
    if math.isinf(result):
        raise EvaluationError(f"overflow in {base}^{exponent}")
    return result


def _numeric_div(a: float, b: float) -> float:
    if b == 0:
        raise EvaluationError("division by zero")
    return a / b


def _numeric_call(name: str, fn: Callable[[float], float]) -> Callable[[float], float]:
    def call(x):
        try:
            return fn(x)
        except (OverflowError, ValueError) as exc:
            raise EvaluationError(f"{name}({x}): {exc}") from None

    return call


_NUMERIC_BINOPS = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": _numeric_div,
    "^": _numeric_pow,
}


def compile_numeric(node: Expr) -> Callable[[float], float]:
    """Compile the tree into a float -> float closure (fast repeated evaluation)."""
    if isinstance(node, Num):
        v = float(node.value)
        return lambda x: v
    if isinstance(node, Var):
        return lambda x: float(x)
    if isinstance(node, Neg):
        inner = compile_numeric(node.operand)
        return lambda x: -inner(x)
    if isinstance(node, Call):
        inner = compile_numeric(node.arg)
        fn = _numeric_call(node.func, FUNCTIONS[node.func])
        return lambda x: fn(inner(x))
    left, right = compile_numeric(node.left), compile_numeric(node.right)
    op = _NUMERIC_BINOPS[node.op]
    return lambda x: op(left(x), right(x))


def eval_numeric(node: Expr, x: float) -> float:
    """Double-precision value of the expression at ``x``."""
    return compile_numeric(node)(x)


def eval_exact(node: Expr, x) -> Fraction:
    """Exact rational value at rational ``x``.

    Raises NotExactError when a transcendental function or a non-integer
    power is involved, and EvaluationError on division by zero.
    """
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return Fraction(x)
    if isinstance(node, Neg):
        return -eval_exact(node.operand, x)
    if isinstance(node, Call):
        if node.func == "abs":
            return abs(eval_exact(node.arg, x))
        raise NotExactError(f"{node.func}() has no exact rational value")
    a = eval_exact(node.left, x)
    b = eval_exact(node.right, x)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        if b == 0:
            raise EvaluationError("division by zero")
        return a / b
    if b.denominator != 1:
        raise NotExactError(f"non-integer exponent {b}")
    if a == 0 and b < 0:
        raise EvaluationError("zero raised to a negative power")
    if abs(b) > MAX_EXACT_EXPONENT:
        raise NotExactError(f"exponent {b} too large for exact evaluation")
    return a ** int(b)


def extract_polynomial(node: Expr) -> Polynomial | None:
    """Exact polynomial in the variable, or None if the expression is not one."""
    if isinstance(node, Num):
        return Polynomial.constant(node.value)
    if isinstance(node, Var):
        return Polynomial.x()
    if isinstance(node, Neg):
        p = extract_polynomial(node.operand)
        return None if p is None else -p
    if isinstance(node, Call):
        if node.func == "abs":
            p = extract_polynomial(node.arg)
            if p is not None and p.is_constant():
                return Polynomial.constant(abs(p[0]))
        return None
    left = extract_polynomial(node.left)
    right = extract_polynomial(node.right)
    if left is None or right is None:
        return None
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if node.op == "/":
        if not right.is_constant() or right.is_zero():
            return None
        return left.scale(1 / right[0])
    # '^': exponent must be a non-negative integer constant
    if not right.is_constant():
        return None
    e = right[0]
    if e.denominator != 1 or e < 0:
        if left.is_constant() and not left.is_zero() and e.denominator == 1:
            return Polynomial.constant(left[0] ** int(e))
        return None
    return left ** int(e)
