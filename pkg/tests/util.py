"""Shared oracles for the test suite.

Everything here is deliberately independent of the package's arithmetic:
exact Fraction computations (Gaussian rationals as (re, im) pairs) stand in
for the gmpy2 paths they check.
"""

from fractions import Fraction

import gmpy2


def gr(re, im=0):
    """Gaussian rational."""
    return (Fraction(re), Fraction(im))


def gr_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def gr_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def gr_scale(a, s: Fraction):
    return (a[0] * s, a[1] * s)


def binomial_series_frac(a, alpha: Fraction, n_terms: int):
    """(1 - a w)^alpha coefficients as Gaussian rationals, by the recurrence."""
    a = a if isinstance(a, tuple) else gr(a)
    neg_a = (-a[0], -a[1])
    out = [gr(1)]
    c = out[0]
    for k in range(n_terms - 1):
        c = gr_scale(gr_mul(c, neg_a), (alpha - k) / (k + 1))
        out.append(c)
    return out


def conv_frac(c1, c2, length: int):
    """Cauchy product of Gaussian-rational coefficient lists."""
    out = []
    for t in range(length):
        acc = gr(0)
        for u in range(max(0, t - len(c2) + 1), min(t, len(c1) - 1) + 1):
            acc = gr_add(acc, gr_mul(c1[u], c2[t - u]))
        out.append(acc)
    return out


def assert_close_frac(coeffs, expected, tol=1e-40):
    """Compare gmpy2 mpc coefficients against Gaussian-rational expectations."""
    assert len(coeffs) >= len(expected)
    for got, (re, im) in zip(coeffs, expected):
        scale = max(1.0, abs(float(re)), abs(float(im)))
        assert abs(float(got.real) - float(re)) <= tol * scale, (got, re)
        assert abs(float(got.imag) - float(im)) <= tol * scale, (got, im)


def max_match_distance(points_a, points_b):
    """Greedy minimum-distance matching; returns the worst matched distance.

    Adequate for well-separated point sets (test data is constructed so).
    """
    assert len(points_a) == len(points_b)
    a = list(points_a)
    b = list(points_b)
    worst = gmpy2.mpfr(0)
    pairs = sorted(
        ((abs(p - q), i, j) for i, p in enumerate(a) for j, q in enumerate(b)),
        key=lambda t: (t[0], t[1], t[2]),
    )
    used_a, used_b = set(), set()
    for d, i, j in pairs:
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        if d > worst:
            worst = d
    return worst


def poly_from_roots(roots, leading=1):
    """Expand leading * prod (z - r) into ascending coefficients (gmpy2)."""
    coeffs = [gmpy2.mpc(leading)]
    for r in roots:
        nxt = [gmpy2.mpc(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] -= c * r
            nxt[i + 1] += c
        coeffs = nxt
    return coeffs
