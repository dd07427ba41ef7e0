"""Precision policy and the exact complex expression parser."""

import gmpy2
import pytest
from gmpy2 import mpfr, mpq

from hpzeros.precision import (
    ExactSyntaxError,
    Precision,
    PrecisionError,
    parse_exact,
    parse_rational,
    require_same,
)


def test_minimum_digits_enforced():
    with pytest.raises(PrecisionError):
        Precision(63)
    assert Precision(64).decimal_digits == 64


def test_precision_policy_for_degree():
    assert Precision.for_degree(5).decimal_digits == 256
    assert Precision.for_degree(40).decimal_digits == 1200
    assert Precision.for_degree(40, override=300).decimal_digits == 300


def test_require_same_rejects_mixed():
    with pytest.raises(PrecisionError):
        require_same(Precision(64), Precision(128))


def test_parse_rational():
    from fractions import Fraction
    assert parse_rational("2/3") == Fraction(2, 3)
    assert parse_rational("-1/2") == Fraction(-1, 2)
    assert parse_rational(2) == Fraction(2)
    with pytest.raises(ExactSyntaxError):
        parse_rational("one third")


@pytest.fixture
def prec():
    return Precision(128)


def test_rationals_are_exact(prec):
    with prec.context():
        assert parse_exact("1/2", prec) == mpfr("0.5")
        assert parse_exact("-3", prec) == -3
        # decimal literals read as exact rationals, single correctly rounded step
        assert parse_exact("0.1", prec) == mpfr(mpq(1, 10))
        assert parse_exact("1.6", prec) == mpfr(mpq(8, 5))


def test_gaussian_rational_arithmetic_exact(prec):
    # (1+2i)/(3-i) = (1+7i)/10, exactly
    got = parse_exact("(1+2*i)/(3-i)", prec)
    want = parse_exact("1/10 + 7*i/10", prec)
    assert got == want


def test_sqrt_token(prec):
    got = parse_exact("i*sqrt(3)*1.6", prec)
    with gmpy2.context(precision=prec.bits + 128):
        want_im = gmpy2.sqrt(mpfr(3)) * mpfr(mpq(8, 5))
    assert float(got.real) == 0.0
    assert abs(got.imag - want_im) <= mpfr(10) ** -(prec.decimal_digits - 2)


def test_pow_principal_branch(prec):
    with prec.context():
        root = parse_exact("pow(2, 1/2)", prec)
        assert abs(root - gmpy2.sqrt(gmpy2.mpfr(2))) <= mpfr(10) ** -120
        c = parse_exact("pow((0.9-1.1*i)/(0.1+0.2*i), 1/4)", prec)
        base = parse_exact("(0.9-1.1*i)/(0.1+0.2*i)", prec)
        assert abs(c ** 4 - base) <= mpfr(10) ** -120


def test_whitespace_and_nesting(prec):
    assert parse_exact(" ( 1 + 2 ) * 3 ", prec) == 9
    assert parse_exact("--2", prec) == 2
    assert parse_exact("1 - -2", prec) == 3


@pytest.mark.parametrize("bad", ["1//2", "sqrt(", "pow(2, i)", "2**3", "1..2", "foo(3)", "", "3+"])
def test_syntax_errors(bad, prec):
    with pytest.raises(ExactSyntaxError):
        parse_exact(bad, prec)


def test_division_by_zero(prec):
    with pytest.raises(ExactSyntaxError):
        parse_exact("1/(2-2)", prec)


def test_rounded_once_into_working_precision():
    lo = Precision(64)
    hi = Precision(256)
    v_lo = parse_exact("1/3", lo)
    v_hi = parse_exact("1/3", hi)
    assert v_lo.real.precision == lo.bits
    assert v_hi.real.precision == hi.bits
    with hi.context():
        assert abs(v_hi.real - mpfr(1) / 3) == 0
