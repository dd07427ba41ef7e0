"""Order-condition linear systems and their kernel vectors.

Three system shapes are built from truncated series:

* ``hermite_pade`` -- polynomials (Q0, Q1, Q2) of degree <= n with
  Q0 + Q1 f1 + Q2 f2 = O(1/z^{2n+2}) at infinity: 3n+2 homogeneous
  conditions on 3(n+1) unknowns.
* ``pade`` -- (P0, P1) with P0 + P1 f = O(1/z^{n+1}): 2n+1 conditions on
  2(n+1) unknowns.
* ``two_point`` -- (P, Q) with (Q f0 - P)(z) = O(z^{n+1}) at the origin and
  the z^n..z^1 coefficients of Q f_inf - P vanishing at infinity: a balanced
  n+1 / n split of 2n+1 conditions.

Every row kills one power of z; the entry in row j at column (family i,
monomial degree k) is the series coefficient c^{(i)}_{k-j} (zero for k < j).
:func:`kernel_solve` extracts a kernel vector by Gaussian elimination with
partial pivoting and reports the kernel defect instead of failing on
degenerate inputs.  :func:`residual_series` re-verifies the order of contact
from scratch at doubled precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpc, mpfr, norm

from .precision import Precision, require_same
from .series import Series

__all__ = [
    "OrderSystem",
    "HpSolution",
    "LinsysError",
    "ShapeError",
    "ZeroMatrixError",
    "InsufficientPrecisionError",
    "OrderContactError",
    "build_hp_system",
    "build_pade_system",
    "build_two_point_system",
    "kernel_solve",
    "residual_series",
]


class LinsysError(ValueError):
    pass


class ShapeError(LinsysError):
    """Series too short, or a malformed system."""


class ZeroMatrixError(LinsysError):
    pass


class InsufficientPrecisionError(LinsysError):
    """The kernel residual is above 10^(-digits/2); retry with more digits."""

    def __init__(self, residual, digits: int):
        self.residual = residual
        self.suggested_digits = 2 * digits
        super().__init__(
            f"kernel residual {float(residual):.3e} exceeds 10^-{digits // 2}; "
            f"retry with at least {self.suggested_digits} digits"
        )


class OrderContactError(LinsysError):
    """A remainder coefficient that the order conditions require to vanish survived."""

    def __init__(self, index: int, magnitude, where: str = ""):
        self.index = index
        self.magnitude = magnitude
        place = f" ({where})" if where else ""
        super().__init__(
            f"order-of-contact failure{place}: remainder coefficient {index} "
            f"has magnitude {float(magnitude):.3e}"
        )


@dataclass(frozen=True)
class OrderSystem:
    """Dense homogeneous system encoding the order conditions."""

    kind: str
    n: int
    precision: Precision
    matrix: tuple[tuple[mpc, ...], ...]
    row_labels: tuple[int, ...]
    col_labels: tuple[tuple[int, int], ...]

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.col_labels)

    @property
    def families(self) -> int:
        return 1 + max(i for i, _ in self.col_labels)


@dataclass(frozen=True)
class HpSolution:
    """A kernel vector split into per-family polynomial coefficient tuples.

    ``polys[i][k]`` is the z^k coefficient of family i.  Coefficients are
    jointly normalized so the largest magnitude over all families is exactly
    1; ``kernel_defect`` is the kernel dimension minus one and ``residual_norm``
    is max|M q| over the matrix scale.
    """

    kind: str
    n: int
    precision: Precision
    polys: tuple[tuple[mpc, ...], ...]
    normalization: str
    kernel_defect: int
    residual_norm: mpfr

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "degree": self.n,
            "decimal_digits": self.precision.decimal_digits,
            "normalization": self.normalization,
            "kernel_defect": self.kernel_defect,
            "residual_norm": str(self.residual_norm),
            "polys": [[[str(c.real), str(c.imag)] for c in fam] for fam in self.polys],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HpSolution":
        prec = Precision(int(data["decimal_digits"]))
        with prec.context():
            polys = tuple(
                tuple(mpc(mpfr(re), mpfr(im)) for re, im in fam)
                for fam in data["polys"]
            )
            residual = mpfr(data["residual_norm"])
        return cls(
            kind=data["kind"],
            n=int(data["degree"]),
            precision=prec,
            polys=polys,
            normalization=data["normalization"],
            kernel_defect=int(data["kernel_defect"]),
            residual_norm=residual,
        )


def _unit_series(length: int) -> tuple:
    return (mpc(1),) + (mpc(0),) * (length - 1)


def build_hp_system(series_f1: Series, series_f2: Series, n: int) -> OrderSystem:
    """Order conditions for (Q0, Q1, Q2) of degree <= n against [1, f1, f2].

    Rows kill z^j for j = n down to -(2n+1); columns are family-major,
    degree-minor.  Both series need at least 3n+2 coefficients at equal
    precision.
    """
    prec = require_same(series_f1.precision, series_f2.precision)
    need = 3 * n + 2
    if len(series_f1) < need or len(series_f2) < need:
        raise ShapeError(f"need {need} coefficients for degree {n}, "
                         f"got {len(series_f1)} and {len(series_f2)}")
    with prec.context():
        fams = (_unit_series(need), series_f1.coeffs, series_f2.coeffs)
        zero = mpc(0)
        matrix = []
        row_labels = []
        for j in range(n, -(2 * n + 1) - 1, -1):
            row = []
            for coeffs in fams:
                for k in range(n + 1):
                    idx = k - j
                    row.append(coeffs[idx] if idx >= 0 else zero)
            matrix.append(tuple(row))
            row_labels.append(j)
    col_labels = tuple((i, k) for i in range(3) for k in range(n + 1))
    return OrderSystem("hermite_pade", n, prec, tuple(matrix), tuple(row_labels), col_labels)


def build_pade_system(series_f: Series, n: int) -> OrderSystem:
    """Order conditions for (P0, P1) of degree <= n with P0 + P1 f = O(1/z^{n+1})."""
    prec = series_f.precision
    need = 2 * n + 1
    if len(series_f) < need:
        raise ShapeError(f"need {need} coefficients for degree {n}, got {len(series_f)}")
    with prec.context():
        fams = (_unit_series(need), series_f.coeffs)
        zero = mpc(0)
        matrix = []
        row_labels = []
        for j in range(n, -n - 1, -1):
            row = []
            for coeffs in fams:
                for k in range(n + 1):
                    idx = k - j
                    row.append(coeffs[idx] if idx >= 0 else zero)
            matrix.append(tuple(row))
            row_labels.append(j)
    col_labels = tuple((i, k) for i in range(2) for k in range(n + 1))
    return OrderSystem("pade", n, prec, tuple(matrix), tuple(row_labels), col_labels)


def build_two_point_system(series_at_0: Series, series_at_inf: Series, n: int) -> OrderSystem:
    """Conditions for P/Q interpolating one branch at 0 and one at infinity.

    Family 0 is P, family 1 is Q.  The first n+1 rows impose
    (Q f0 - P)(z) = O(z^{n+1}) (row label t kills z^t, t ascending); the last
    n rows impose the z^n..z^1 coefficients of Q f_inf - P to vanish (labels
    descending).
    """
    prec = require_same(series_at_0.precision, series_at_inf.precision)
    if len(series_at_0) < n + 1 or len(series_at_inf) < n + 1:
        raise ShapeError(f"need {n + 1} coefficients at each point for degree {n}")
    d = series_at_0.coeffs
    e = series_at_inf.coeffs
    with prec.context():
        zero = mpc(0)
        minus_one = mpc(-1)
        matrix = []
        row_labels = []
        for t in range(n + 1):
            row = [minus_one if k == t else zero for k in range(n + 1)]
            row += [d[t - k] if t - k >= 0 else zero for k in range(n + 1)]
            matrix.append(tuple(row))
            row_labels.append(t)
        for t in range(n, 0, -1):
            row = [minus_one if k == t else zero for k in range(n + 1)]
            row += [e[k - t] if k - t >= 0 else zero for k in range(n + 1)]
            matrix.append(tuple(row))
            row_labels.append(t)
    col_labels = tuple((i, k) for i in range(2) for k in range(n + 1))
    return OrderSystem("two_point", n, prec, tuple(matrix), tuple(row_labels), col_labels)


def kernel_solve(sys: OrderSystem) -> HpSolution:
    """Extract a kernel vector by Gaussian elimination with partial pivoting.

    Pivoting is by absolute value; a column whose best pivot is below
    10^(-digits/2) times the matrix scale stays pivotless, the free variable
    is the last pivotless column, and kernel_defect = cols - 1 - rank.  The
    result is normalized to joint max-coefficient-magnitude 1 and the
    residual max|M q| / scale is stored (and enforced).
    """
    r, c = sys.rows, sys.cols
    if r != c - 1:
        raise ShapeError(f"expected rows == cols - 1, got {r} x {c}")
    prec = sys.precision
    with prec.context():
        a = [list(row) for row in sys.matrix]
        scale2 = mpfr(0)
        for row in sys.matrix:
            for x in row:
                nx = norm(x)
                if nx > scale2:
                    scale2 = nx
        if scale2 == 0:
            raise ZeroMatrixError("all matrix entries are zero")
        eps = prec.eps()
        thresh2 = eps * eps * scale2
        pivots: list[tuple[int, int]] = []  # (row, col) in elimination order
        free_cols: list[int] = []
        rank = 0
        for col in range(c):
            best, best_norm = -1, thresh2
            for i in range(rank, r):
                ni = norm(a[i][col])
                if ni > best_norm:
                    best, best_norm = i, ni
            if best < 0:
                free_cols.append(col)
                continue
            if best != rank:
                a[rank], a[best] = a[best], a[rank]
            piv_row = a[rank]
            piv = piv_row[col]
            tail = piv_row[col + 1:]
            for i in range(rank + 1, r):
                ai = a[i]
                f = ai[col] / piv
                ai[col] = mpc(0)
                if f != 0:
                    ai[col + 1:] = [x - f * y for x, y in zip(ai[col + 1:], tail)]
            pivots.append((rank, col))
            rank += 1
        defect = (c - 1) - rank
        free = free_cols[-1]
        q = [mpc(0)] * c
        q[free] = mpc(1)
        for prow, pcol in reversed(pivots):
            row = a[prow]
            acc = mpc(0)
            for j in range(pcol + 1, c):
                rj = row[j]
                if rj != 0 and q[j] != 0:
                    acc += rj * q[j]
            q[pcol] = -acc / row[pcol]
        best_j, best_norm = 0, mpfr(-1)
        for j, v in enumerate(q):
            nv = norm(v)
            if nv > best_norm:
                best_j, best_norm = j, nv
        top = q[best_j]
        q = [v / top for v in q]
        worst = mpfr(0)
        for row in sys.matrix:
            acc = mpc(0)
            for x, v in zip(row, q):
                if x != 0 and v != 0:
                    acc += x * v
            na = norm(acc)
            if na > worst:
                worst = na
        residual_norm = gmpy2.sqrt(worst / scale2)
        if residual_norm > eps:
            raise InsufficientPrecisionError(residual_norm, prec.decimal_digits)
        n = sys.n
        polys = tuple(tuple(q[i * (n + 1):(i + 1) * (n + 1)]) for i in range(sys.families))
    return HpSolution(
        kind=sys.kind,
        n=n,
        precision=prec,
        polys=polys,
        normalization="joint_max_coeff_one",
        kernel_defect=defect,
        residual_norm=residual_norm,
    )


def _conv_prefix(poly, coeffs, length: int) -> list:
    out = []
    np_, nc = len(poly), len(coeffs)
    for t in range(length):
        acc = mpc(0)
        lo = max(0, t - nc + 1)
        hi = min(t, np_ - 1)
        for u in range(lo, hi + 1):
            pu = poly[u]
            if pu != 0:
                acc += pu * coeffs[t - u]
        out.append(acc)
    return out


def _order_scale(series_windows) -> mpfr:
    scale = mpfr(1)
    for coeffs in series_windows:
        for x in coeffs:
            ax = abs(x)
            if ax > scale:
                scale = ax
    return scale


def residual_series(sol: HpSolution, series_list: list[Series]):
    """Full remainder series of the solved relation, verified independently.

    ``series_list`` must be recomputed at at least twice the solution's
    precision (and length >= 3n+2 / 2n+1 / n+1-per-point).  The leading
    block of remainder coefficients -- as many as the system had rows -- must
    vanish to 10^(-digits/2) relative to the largest series coefficient in
    that window, else :class:`OrderContactError` reports the survivor.

    Returns the remainder Series in the local coordinate; the two_point kind
    returns a pair (remainder at 0, remainder at infinity).
    """
    n = sol.n
    for s in series_list:
        if s.precision.decimal_digits < 2 * sol.precision.decimal_digits:
            raise ShapeError("verification series must use at least doubled precision")
    prec = series_list[0].precision
    with prec.context():
        tol_eps = mpfr(10) ** -(sol.precision.decimal_digits // 2)
        if sol.kind in ("hermite_pade", "pade"):
            rows = 3 * n + 2 if sol.kind == "hermite_pade" else 2 * n + 1
            length = min(len(s) for s in series_list)
            if length < rows:
                raise ShapeError(f"need {rows} verification coefficients, got {length}")
            fams = [_unit_series(length)] + [s.coeffs for s in series_list]
            total = [mpc(0)] * length
            for poly, coeffs in zip(sol.polys, fams):
                rev = tuple(reversed(poly))
                part = _conv_prefix(rev, coeffs, length)
                total = [x + y for x, y in zip(total, part)]
            tol = tol_eps * _order_scale([s.coeffs[:rows] for s in series_list])
            for t in range(rows):
                if abs(total[t]) > tol:
                    raise OrderContactError(t, abs(total[t]))
            return Series(prec, tuple(total))
        if sol.kind == "two_point":
            s0, sinf = series_list
            if len(s0) < n + 1 or len(sinf) < n + 1:
                raise ShapeError(f"need {n + 1} verification coefficients at each point")
            p, qpoly = sol.polys
            r0 = _conv_prefix(qpoly, s0.coeffs, len(s0))
            for t in range(min(n + 1, len(r0))):
                r0[t] -= p[t]
            qrev = tuple(reversed(qpoly))
            prev = tuple(reversed(p))
            rinf = _conv_prefix(qrev, sinf.coeffs, len(sinf))
            for t in range(min(n + 1, len(rinf))):
                rinf[t] -= prev[t]
            tol = tol_eps * _order_scale([s0.coeffs[:n + 1], sinf.coeffs[:n + 1]])
            for t in range(n + 1):
                if abs(r0[t]) > tol:
                    raise OrderContactError(t, abs(r0[t]), where="origin")
            for t in range(n):
                if abs(rinf[t]) > tol:
                    raise OrderContactError(t, abs(rinf[t]), where="infinity")
            return Series(prec, tuple(r0)), Series(prec, tuple(rinf))
    raise ShapeError(f"unknown solution kind {sol.kind!r}")
