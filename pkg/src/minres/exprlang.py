"""Arithmetic expressions in one variable u with second-order evaluation.

Grammar (no implicit multiplication, ^ is right-associative and binds
tighter than unary minus, so -u^2 means -(u^2)):

    sum    := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?
    atom   := number | 'u' | 'pi' | 'e' | fn '(' sum ')' | '(' sum ')'
    fn     := 'ln' | 'exp' | 'sqrt' | 'abs'

eval2 returns the value together with the first and second derivative
with respect to u, propagated through a second-order dual number.
Parsing is total: any input yields an AST or a positioned error.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import DomainError, ExprSyntaxError, InvalidParameter, UnknownIdentifier

_FUNCTIONS = ("ln", "exp", "sqrt", "abs")
_CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Const:
    name: str  # "pi" | "e"


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - * / ^
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    fn: str
    arg: object


Expr = Num | Const | Var | Neg | Bin | Call


def format_expr(e: Expr) -> str:
    """Canonical fully parenthesized form; parse(format_expr(e)) == e."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Var):
        return "u"
    if isinstance(e, Neg):
        return f"(-{format_expr(e.arg)})"
    if isinstance(e, Bin):
        return f"({format_expr(e.left)}{e.op}{format_expr(e.right)})"
    if isinstance(e, Call):
        return f"{e.fn}({format_expr(e.arg)})"
    raise InvalidParameter(f"not an expression node: {e!r}")


_TOKEN_RE = re.compile(r"""
    (?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[+\-*/^()])
  | (?P<ws>\s+)
""", re.VERBOSE)


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}",
                                  _byte_offset(text, pos),
                                  ("number", "identifier", "operator"))
        if m.lastgroup == "num":
            tokens.append(("num", float(m.group()), pos))
        elif m.lastgroup == "ident":
            tokens.append(("ident", m.group(), pos))
        elif m.lastgroup == "op":
            tokens.append((m.group(), m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        kind, _, pos = self.peek()
        what = "end of input" if kind == "end" else f"{self.text[pos]!r}"
        raise ExprSyntaxError(f"unexpected {what}",
                              _byte_offset(self.text, pos), expected)

    def expect(self, kind):
        if self.peek()[0] != kind:
            self.fail((kind,))
        return self.take()

    def parse_sum(self):
        node = self.parse_term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = Bin(op, node, self.parse_term())
        return node

    def parse_term(self):
        node = self.parse_unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            node = Bin(op, node, self.parse_unary())
        return node

    def parse_unary(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.peek()[0] == "^":
            self.take()
            # right-associative; exponent may itself be signed
            return Bin("^", base, self.parse_unary())
        return base

    def parse_atom(self):
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            return Num(value)
        if kind == "ident":
            self.take()
            if value == "u":
                return Var()
            if value in _CONSTANTS:
                return Const(value)
            if value in _FUNCTIONS:
                self.expect("(")
                arg = self.parse_sum()
                self.expect(")")
                return Call(value, arg)
            raise UnknownIdentifier(value, _byte_offset(self.text, pos))
        if kind == "(":
            self.take()
            node = self.parse_sum()
            self.expect(")")
            return node
        self.fail(("number", "identifier", "(", "-"))


def parse(text: str) -> Expr:
    """Parse expression text; raises ExprSyntaxError / UnknownIdentifier."""
    if not isinstance(text, str):
        raise InvalidParameter("expression source must be a string")
    p = _Parser(text)
    node = p.parse_sum()
    if p.peek()[0] != "end":
        p.fail(("end of input",))
    return node


@dataclass(frozen=True)
class Dual2:
    """Value with first and second derivative; immutable and shareable."""

    value: float
    d1: float
    d2: float

    def __add__(self, other: "Dual2") -> "Dual2":
        return Dual2(self.value + other.value, self.d1 + other.d1,
                     self.d2 + other.d2)

    def __sub__(self, other: "Dual2") -> "Dual2":
        return Dual2(self.value - other.value, self.d1 - other.d1,
                     self.d2 - other.d2)

    def __neg__(self) -> "Dual2":
        return Dual2(-self.value, -self.d1, -self.d2)

    def __mul__(self, other: "Dual2") -> "Dual2":
        return Dual2(self.value * other.value,
                     self.d1 * other.value + self.value * other.d1,
                     self.d2 * other.value + 2.0 * self.d1 * other.d1
                     + self.value * other.d2)

    def __truediv__(self, other: "Dual2") -> "Dual2":
        # quotient rule solved for q', q'' from a = q b
        q = self.value / other.value
        q1 = (self.d1 - q * other.d1) / other.value
        q2 = (self.d2 - 2.0 * q1 * other.d1 - q * other.d2) / other.value
        return Dual2(q, q1, q2)


def _chain(a: Dual2, f: float, df: float, d2f: float) -> Dual2:
    return Dual2(f, df * a.d1, d2f * a.d1 * a.d1 + df * a.d2)


def _dual_pow_const(a: Dual2, c: float, u: float, where: str) -> Dual2:
    v = a.value
    if v > 0.0:
        f = v ** c
        return _chain(a, f, c * f / v, c * (c - 1.0) * f / (v * v))
    if v == 0.0:
        if c == 0.0:
            raise DomainError(u, where, "0^0")
        if c < 0.0:
            raise DomainError(u, where, "zero base with negative exponent")
        if c == 1.0:
            return a
        if c < 2.0:
            # v^(c-1) or v^(c-2) blows up in the derivative terms
            raise DomainError(u, where, "derivative unbounded at zero base")
        d2 = 2.0 * a.d1 * a.d1 if c == 2.0 else 0.0
        return Dual2(0.0, 0.0, d2)
    # negative base: only integral exponents are defined (Python's float
    # power silently promotes fractional ones to complex)
    if c != round(c):
        raise DomainError(u, where, "negative base with non-integer exponent")
    k = int(round(c))
    f = v ** k
    df = k * v ** (k - 1)
    d2f = k * (k - 1) * v ** (k - 2) if k != 0 else 0.0
    return _chain(a, f, df, d2f)


def _eval_node(e: Expr, seed: Dual2, u: float) -> Dual2:
    if isinstance(e, Num):
        return Dual2(e.value, 0.0, 0.0)
    if isinstance(e, Const):
        return Dual2(_CONSTANTS[e.name], 0.0, 0.0)
    if isinstance(e, Var):
        return seed
    if isinstance(e, Neg):
        return -_eval_node(e.arg, seed, u)
    if isinstance(e, Bin):
        a = _eval_node(e.left, seed, u)
        b = _eval_node(e.right, seed, u)
        where = format_expr(e)
        try:
            if e.op == "+":
                return a + b
            if e.op == "-":
                return a - b
            if e.op == "*":
                return a * b
            if e.op == "/":
                if b.value == 0.0:
                    raise DomainError(u, where, "division by zero")
                return a / b
            if e.op == "^":
                if b.d1 == 0.0 and b.d2 == 0.0:
                    return _dual_pow_const(a, b.value, u, where)
                if a.value <= 0.0:
                    raise DomainError(u, where,
                                      "variable exponent needs positive base")
                ln_a = _chain(a, math.log(a.value), 1.0 / a.value,
                              -1.0 / (a.value * a.value))
                prod = b * ln_a
                f = math.exp(prod.value)
                return _chain(prod, f, f, f)
        except OverflowError:
            raise DomainError(u, where, "overflow") from None
        raise InvalidParameter(f"unknown operator {e.op!r}")
    if isinstance(e, Call):
        a = _eval_node(e.arg, seed, u)
        where = format_expr(e)
        v = a.value
        try:
            if e.fn == "ln":
                if v <= 0.0:
                    raise DomainError(u, where, "log of non-positive value")
                return _chain(a, math.log(v), 1.0 / v, -1.0 / (v * v))
            if e.fn == "exp":
                f = math.exp(v)
                return _chain(a, f, f, f)
            if e.fn == "sqrt":
                if v < 0.0:
                    raise DomainError(u, where, "sqrt of negative value")
                if v == 0.0:
                    if a.d1 == 0.0 and a.d2 == 0.0:
                        return Dual2(0.0, 0.0, 0.0)
                    raise DomainError(u, where,
                                      "derivative unbounded at sqrt(0)")
                r = math.sqrt(v)
                return _chain(a, r, 0.5 / r, -0.25 / (v * r))
            if e.fn == "abs":
                s = 0.0 if v == 0.0 else math.copysign(1.0, v)
                # derivative at the kink is defined as 0
                return _chain(a, abs(v), s, 0.0)
        except OverflowError:
            raise DomainError(u, where, "overflow") from None
        raise UnknownIdentifier(e.fn, 0)
    raise InvalidParameter(f"not an expression node: {e!r}")


def eval2(e: Expr, u: float) -> Dual2:
    """Evaluate e and its first two u-derivatives at a finite u."""
    u = float(u)
    if not math.isfinite(u):
        raise InvalidParameter(f"u must be finite, got {u!r}")
    out = _eval_node(e, Dual2(u, 1.0, 0.0), u)
    if not (math.isfinite(out.value) and math.isfinite(out.d1)
            and math.isfinite(out.d2)):
        raise DomainError(u, format_expr(e), "non-finite result")
    return out
