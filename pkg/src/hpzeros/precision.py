"""Working precision and exact complex input parsing.

Every quantity in this package is computed under an explicit decimal working
precision, carried around as a :class:`Precision` value.  Arithmetic runs in
gmpy2 (MPFR/MPC) contexts derived from it; mixing two precisions in one
operation is an error at the container level (Series, OrderSystem, ...).

Branch points and other exact inputs are given as strings ("1/2", "-2",
"0.1+i*sqrt(3)*1.6", "pow((0.9-1.1*i)/(0.1+0.2*i), 1/4)") and parsed by
:func:`parse_exact`.  Rational subexpressions are kept exact as Gaussian
rationals all the way through ``+ - * /`` and rounded exactly once into the
working precision; only ``sqrt``/``pow`` force early rounding, done with
64 guard bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpc, mpfr, mpq

__all__ = [
    "Precision",
    "PrecisionError",
    "ExactSyntaxError",
    "parse_exact",
    "parse_rational",
]

MIN_DIGITS = 64
_LOG2_10 = math.log2(10)
_GUARD_BITS = 64


class PrecisionError(ValueError):
    """Invalid precision, or two different precisions mixed in one operation."""


class ExactSyntaxError(ValueError):
    """Malformed exact complex string."""


@dataclass(frozen=True, order=True)
class Precision:
    """Decimal working precision of all complex arithmetic.

    Parameters
    ----------
    decimal_digits : int
        Number of significant decimal digits, at least 64.
    """

    decimal_digits: int

    def __post_init__(self):
        if not isinstance(self.decimal_digits, int) or self.decimal_digits < MIN_DIGITS:
            raise PrecisionError(
                f"decimal_digits must be an integer >= {MIN_DIGITS}, got {self.decimal_digits!r}"
            )

    @property
    def bits(self) -> int:
        """Binary precision used for MPFR/MPC values."""
        return int(math.ceil(self.decimal_digits * _LOG2_10)) + 8

    def context(self) -> "gmpy2.context":
        """A fresh gmpy2 context at this precision, usable as a context manager."""
        return gmpy2.context(precision=self.bits)

    def doubled(self) -> "Precision":
        return Precision(2 * self.decimal_digits)

    def eps(self, exponent_divisor: int = 2) -> mpfr:
        """Tolerance 10^(-decimal_digits // exponent_divisor) in the active context."""
        return mpfr(10) ** -(self.decimal_digits // exponent_divisor)

    @staticmethod
    def for_degree(n: int, override: int | None = None) -> "Precision":
        """Default precision policy for a degree-``n`` run: max(256, 30 n)."""
        if override is not None:
            return Precision(override)
        return Precision(max(256, 30 * n))


def require_same(p1: Precision, p2: Precision) -> Precision:
    if p1 != p2:
        raise PrecisionError(
            f"precision mismatch: {p1.decimal_digits} vs {p2.decimal_digits} digits"
        )
    return p1


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse a reduced fraction like "2/3", "-1/2", "1"."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ExactSyntaxError(f"not a rational: {text!r}") from exc


# --- exact complex expression grammar -------------------------------------
#
#   expr   := term (('+'|'-') term)*
#   term   := unary (('*'|'/') unary)*
#   unary  := ('+'|'-')* atom
#   atom   := NUMBER | 'i' | 'sqrt' '(' expr ')' | 'pow' '(' expr ',' expr ')'
#           | '(' expr ')'
#
# Values are (mpq re, mpq im) pairs while exact; sqrt/pow lift them to mpc in
# the active (guard) context.  NUMBER is an integer or decimal literal, read
# exactly as a rational.


class _Exact:
    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = mpq(re)
        self.im = mpq(im)


def _lift(a) -> mpc:
    if isinstance(a, _Exact):
        return mpc(mpfr(a.re), mpfr(a.im))
    return a


def _add(a, b):
    if isinstance(a, _Exact) and isinstance(b, _Exact):
        return _Exact(a.re + b.re, a.im + b.im)
    return _lift(a) + _lift(b)


def _sub(a, b):
    if isinstance(a, _Exact) and isinstance(b, _Exact):
        return _Exact(a.re - b.re, a.im - b.im)
    return _lift(a) - _lift(b)


def _mul(a, b):
    if isinstance(a, _Exact) and isinstance(b, _Exact):
        return _Exact(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)
    return _lift(a) * _lift(b)


def _div(a, b):
    if isinstance(a, _Exact) and isinstance(b, _Exact):
        d = b.re * b.re + b.im * b.im
        if d == 0:
            raise ExactSyntaxError("division by zero in exact expression")
        return _Exact((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d)
    return _lift(a) / _lift(b)


def _neg(a):
    if isinstance(a, _Exact):
        return _Exact(-a.re, -a.im)
    return -a


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ExactSyntaxError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self):
        value = self.expr()
        if self.peek():
            self.error("trailing input")
        return value

    def expr(self):
        value = self.term()
        while True:
            op = self.peek()
            if op == "+":
                self.pos += 1
                value = _add(value, self.term())
            elif op == "-":
                self.pos += 1
                value = _sub(value, self.term())
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            op = self.peek()
            if op == "*":
                self.pos += 1
                value = _mul(value, self.unary())
            elif op == "/":
                self.pos += 1
                value = _div(value, self.unary())
            else:
                return value

    def unary(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.text[self.pos] == "-":
                sign = -sign
            self.pos += 1
        value = self.atom()
        return value if sign > 0 else _neg(value)

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        if ch.isdigit() or ch == ".":
            return self.number()
        if ch.isalpha():
            return self.word()
        self.error("expected a value")

    def number(self):
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isdigit() or self.text[self.pos] == "."
        ):
            self.pos += 1
        token = self.text[start:self.pos]
        if token.count(".") > 1 or token == ".":
            self.error(f"bad number {token!r}")
        if "." in token:
            whole, frac = token.split(".")
            digits = whole + frac
            return _Exact(Fraction(int(digits) if digits else 0, 10 ** len(frac)), 0)
        return _Exact(Fraction(int(token)), 0)

    def word(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        name = self.text[start:self.pos]
        if name == "i":
            return _Exact(0, 1)
        if name == "sqrt":
            self.expect("(")
            value = self.expr()
            self.expect(")")
            return gmpy2.sqrt(_lift(value))
        if name == "pow":
            self.expect("(")
            base = self.expr()
            self.expect(",")
            exponent = self.expr()
            self.expect(")")
            if not (isinstance(exponent, _Exact) and exponent.im == 0):
                self.error("pow exponent must be rational")
            return _lift(base) ** mpq(exponent.re)
        self.error(f"unknown name {name!r}")


def parse_exact(value, precision: Precision) -> mpc:
    """Parse an exact complex value and round it once into ``precision``.

    Strings go through the expression grammar above.  ints and Fractions are
    exact; mpfr/mpc/float/complex are taken at their binary face value, which
    is only appropriate when the caller already controls the rounding.
    """
    if isinstance(value, str):
        with gmpy2.context(precision=precision.bits + _GUARD_BITS):
            parsed = _Parser(value).parse()
        with precision.context():
            if isinstance(parsed, _Exact):
                return mpc(mpfr(parsed.re), mpfr(parsed.im))
            return mpc(parsed)
    if isinstance(value, Fraction):
        with precision.context():
            return mpc(mpfr(mpq(value.numerator, value.denominator)))
    with precision.context():
        return mpc(value)
