"""Truncated power series for branch-product functions.

A function is described symbolically by :class:`FunctionSpec` as

    g(w) = ( prefactor * w^m * ( prod_j (1 - a_j w)^{alpha_j} + P(w) ) )^k

in the local coordinate w (w = 1/z at infinity, w = z at the origin), with
every binomial factor on its principal branch (equal to 1 at w = 0).  For an
expansion at infinity the numbers a_j are the branch points of g(1/w) in the
z-plane.  :func:`build_function_series` turns a spec into the first N+1
Taylor coefficients at a given working precision.

Truncation is exact semantics: a Series of length L carries the first L
coefficients of the represented function and nothing else, and every
operation here preserves that (products of correct prefixes have correct
prefixes).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpc, mpfr, mpq

from .precision import (
    ExactSyntaxError,
    Precision,
    parse_exact,
    parse_rational,
    require_same,
)

__all__ = [
    "FunctionSpec",
    "Series",
    "SpecError",
    "ValuationError",
    "binomial_factor_series",
    "series_mul",
    "series_pow",
    "series_add",
    "series_shift",
    "build_function_series",
]


class SpecError(ValueError):
    """A FunctionSpec violates its invariants."""


class ValuationError(SpecError):
    """A w^m shift with m < 0 hit a non-cancelling leading coefficient."""

    def __init__(self, index: int, magnitude):
        self.index = index
        self.magnitude = magnitude
        super().__init__(
            f"coefficient of w^{index} does not cancel before a negative shift "
            f"(|c| = {float(magnitude):.3e})"
        )


@dataclass(frozen=True)
class FunctionSpec:
    """Symbolic description of an algebraic branch-product function.

    Fields hold exact strings; nothing is rounded until a series is built at
    a concrete precision.  ``factors`` is a tuple of (a, alpha) pairs with
    ``a`` an exact complex string and ``alpha`` a reduced Fraction;
    ``poly_offset`` is a tuple of exact coefficient strings for P(w).
    """

    expansion_point: str = "infinity"
    w_power: int = 0
    factors: tuple[tuple[str, Fraction], ...] = ()
    poly_offset: tuple[str, ...] = ()
    power: int = 1
    prefactor: str = "1"
    label: str = ""

    def __post_init__(self):
        if self.expansion_point not in ("infinity", "zero"):
            raise SpecError(f"bad expansion_point {self.expansion_point!r}")
        if not isinstance(self.w_power, int):
            raise SpecError("w_power must be an integer")
        if not isinstance(self.power, int) or self.power < 1:
            raise SpecError("power must be a positive integer")
        norm_factors = tuple((str(a), parse_rational(alpha)) for a, alpha in self.factors)
        object.__setattr__(self, "factors", norm_factors)
        object.__setattr__(self, "poly_offset", tuple(str(c) for c in self.poly_offset))

    def to_json(self) -> dict:
        return {
            "expansion_point": self.expansion_point,
            "w_power": self.w_power,
            "factors": [{"a": a, "alpha": f"{al.numerator}/{al.denominator}"}
                        for a, al in self.factors],
            "poly_offset": list(self.poly_offset),
            "power": self.power,
            "prefactor": self.prefactor,
            "label": self.label,
        }

    @classmethod
    def from_json(cls, data: dict) -> "FunctionSpec":
        try:
            return cls(
                expansion_point=data.get("expansion_point", "infinity"),
                w_power=int(data.get("w_power", 0)),
                factors=tuple((f["a"], parse_rational(f["alpha"]))
                              for f in data.get("factors", ())),
                poly_offset=tuple(data.get("poly_offset", ())),
                power=int(data.get("power", 1)),
                prefactor=str(data.get("prefactor", "1")),
                label=str(data.get("label", "")),
            )
        except (KeyError, TypeError, ExactSyntaxError) as exc:
            raise SpecError(f"malformed function spec: {exc}") from exc

    def canonical_json(self) -> str:
        """Stable serialization used for cache keys."""
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def scaled(self, prefactor: str, label: str | None = None) -> "FunctionSpec":
        """The same function with the prefactor replaced (applies inside the k-th power)."""
        return FunctionSpec(
            expansion_point=self.expansion_point,
            w_power=self.w_power,
            factors=self.factors,
            poly_offset=self.poly_offset,
            power=self.power,
            prefactor=prefactor,
            label=label if label is not None else self.label,
        )


@dataclass(frozen=True)
class Series:
    """Truncated power series with arbitrary-precision complex coefficients."""

    precision: Precision
    coeffs: tuple[mpc, ...]
    origin: FunctionSpec | str = "derived"

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> mpc:
        return self.coeffs[k]

    def truncated(self, length: int) -> "Series":
        if length > len(self.coeffs):
            raise ValueError(f"cannot extend a series ({len(self.coeffs)} -> {length})")
        return Series(self.precision, self.coeffs[:length], self.origin)

    def is_real(self, tol=None) -> bool:
        """All imaginary parts below ``tol`` (default 10^-digits/2) relative to scale."""
        with self.precision.context():
            if tol is None:
                tol = self.precision.eps()
            scale = _magnitude_scale(self.coeffs)
            return all(abs(c.imag) <= tol * scale for c in self.coeffs)


def _magnitude_scale(coeffs) -> mpfr:
    scale = mpfr(1)
    for c in coeffs:
        a = abs(c)
        if a > scale:
            scale = a
    return scale


def binomial_factor_series(a, alpha, N: int, prec: Precision) -> Series:
    """Coefficients of (1 - a w)^alpha on the principal branch.

    Uses the recurrence c_0 = 1, c_{k+1} = c_k * (-a) * (alpha - k) / (k + 1);
    for integer alpha >= 0 the recurrence terminates exactly.

    Parameters
    ----------
    a : exact complex string (or number)
    alpha : rational exponent ("1/2", Fraction, int)
    N : highest retained power of w
    prec : working precision
    """
    if N < 0:
        raise SpecError("series length must be nonnegative")
    alpha = parse_rational(alpha)
    a_val = parse_exact(a, prec)
    with prec.context():
        neg_a = -a_val
        coeffs = [mpc(1)]
        c = coeffs[0]
        for k in range(N):
            c = c * neg_a * mpq(alpha.numerator - k * alpha.denominator, alpha.denominator * (k + 1))
            coeffs.append(c)
    return Series(prec, tuple(coeffs))


def _mul_prefix(c1, c2, length: int) -> list:
    """First ``length`` coefficients of the Cauchy product (inputs may be shorter)."""
    out = []
    n1, n2 = len(c1), len(c2)
    for t in range(length):
        lo = max(0, t - n2 + 1)
        hi = min(t, n1 - 1)
        acc = mpc(0)
        for u in range(lo, hi + 1):
            acc += c1[u] * c2[t - u]
        out.append(acc)
    return out


def _pow_prefix(c, k: int, length: int) -> list:
    result = [mpc(0)] * length
    result[0] = mpc(1)
    base = list(c[:length])
    while k > 0:
        if k & 1:
            result = _mul_prefix(result, base, length)
        k >>= 1
        if k:
            base = _mul_prefix(base, base, length)
    return result


def series_mul(s1: Series, s2: Series) -> Series:
    """Cauchy product truncated to the common length."""
    prec = require_same(s1.precision, s2.precision)
    if len(s1) != len(s2):
        raise SpecError(f"length mismatch: {len(s1)} vs {len(s2)}")
    with prec.context():
        return Series(prec, tuple(_mul_prefix(s1.coeffs, s2.coeffs, len(s1))))


def series_pow(s: Series, k: int) -> Series:
    """k-th power by binary powering; series_pow(s, 2) == series_mul(s, s) exactly."""
    if not isinstance(k, int) or k < 1:
        raise SpecError("power must be a positive integer")
    with s.precision.context():
        return Series(s.precision, tuple(_pow_prefix(s.coeffs, k, len(s))))


def series_add(s1: Series, s2: Series) -> Series:
    prec = require_same(s1.precision, s2.precision)
    if len(s1) != len(s2):
        raise SpecError(f"length mismatch: {len(s1)} vs {len(s2)}")
    with prec.context():
        return Series(prec, tuple(a + b for a, b in zip(s1.coeffs, s2.coeffs)))


def series_shift(s: Series, m: int) -> Series:
    """Multiply by w^m, keeping the length (zero fill at the vacated end).

    For m < 0 the first -m coefficients must already vanish to within
    10^(-digits/2) relative to the largest coefficient; the shifted-out
    positions are replaced by exact zeros, so only use a negative shift when
    the tail will not be consumed (build_function_series works on extended
    prefixes to avoid that).
    """
    with s.precision.context():
        L = len(s)
        if m == 0:
            return Series(s.precision, s.coeffs, s.origin)
        if m > 0:
            coeffs = (mpc(0),) * min(m, L) + s.coeffs[: max(0, L - m)]
            return Series(s.precision, coeffs)
        drop = -m
        tol = s.precision.eps() * _magnitude_scale(s.coeffs)
        for j in range(min(drop, L)):
            if abs(s.coeffs[j]) > tol:
                raise ValuationError(j, abs(s.coeffs[j]))
        coeffs = s.coeffs[min(drop, L):] + (mpc(0),) * min(drop, L)
        return Series(s.precision, coeffs)


def build_function_series(spec: FunctionSpec, N: int, prec: Precision) -> Series:
    """First N+1 coefficients of the function described by ``spec``.

    Composition order is fixed: factor product, additive poly_offset, w^m
    shift, prefactor, k-th power.  A negative shift checks that the bracket
    has valuation >= -m and reports the first surviving coefficient if not.
    """
    if N < 0:
        raise SpecError("series length must be nonnegative")
    m = spec.w_power
    L = N + 1
    L_b = L + max(0, -m)
    with prec.context():
        bracket = [mpc(0)] * L_b
        bracket[0] = mpc(1)
        for a, alpha in spec.factors:
            factor = binomial_factor_series(a, alpha, L_b - 1, prec)
            bracket = _mul_prefix(bracket, factor.coeffs, L_b)
        for j, coeff_str in enumerate(spec.poly_offset):
            if j < L_b:
                bracket[j] += parse_exact(coeff_str, prec)
        if m < 0:
            tol = prec.eps() * _magnitude_scale(bracket)
            for j in range(-m):
                if abs(bracket[j]) > tol:
                    raise ValuationError(j, abs(bracket[j]))
        if m >= 0:
            base = [mpc(0)] * min(m, L) + bracket[: max(0, L - m)]
        else:
            base = bracket[-m:]
        pre = parse_exact(spec.prefactor, prec)
        if pre != 1:
            base = [pre * c for c in base]
        if spec.power > 1:
            base = _pow_prefix(base, spec.power, L)
    return Series(prec, tuple(base), spec)
