"""All roots of high-degree polynomials with certified residuals.

The solver is Aberth-Ehrlich simultaneous iteration (Jacobi style: one
iteration updates every root from the previous iterate, so per-root updates
are order-independent).  Starting points sit on the Fujiwara root-radius
circle with a fixed angular offset of 0.3941 rad, which makes clouds
reproducible across runs and platforms.  Iterations run through a
deterministic precision ladder (64 digits doubling up to the working
precision); the stopping rule is max correction <= 10^(-digits/2) * radius
at the full working precision, with a global cap of 500 * degree iterations.

Residuals are relative backward errors |p(z)| / sum_k |c_k| |z|^k; a root is
flagged when its residual exceeds 10^(-digits/4).  :func:`certify` recomputes
residuals at doubled precision.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import gmpy2
from gmpy2 import mpc, mpfr

from .precision import Precision

__all__ = [
    "RootCloud",
    "RootFindingError",
    "find_roots",
    "certify",
    "cloud_to_csv",
    "cloud_from_csv",
    "cloud_to_json",
    "cloud_from_json",
]

ANGULAR_OFFSET = 0.3941
ITERATION_CAP_PER_DEGREE = 500
_TAU = 6.283185307179586476925286766559


class RootFindingError(ValueError):
    pass


@dataclass(frozen=True)
class RootCloud:
    """Certified roots of one polynomial family.

    ``family`` tags which polynomial of a solve the roots belong to (0/1/2),
    ``n`` is the degree label of the run, ``effective_degree`` the degree
    after deflating negligible leading/trailing coefficients.  ``leading`` is
    the retained leading coefficient, which together with the points
    reconstructs the polynomial up to roundoff.  ``flags[i]`` is True when
    residual i is above the certification threshold.
    """

    family: int
    n: int
    precision: Precision
    points: tuple[mpc, ...]
    residuals: tuple[mpfr, ...]
    effective_degree: int
    leading: mpc
    flags: tuple[bool, ...]
    converged: bool = True

    def __len__(self) -> int:
        return len(self.points)


def _horner(coeffs, z) -> mpc:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


def _horner_abs(abs_coeffs, az) -> mpfr:
    acc = abs_coeffs[-1]
    for c in reversed(abs_coeffs[:-1]):
        acc = acc * az + c
    return acc


def _fujiwara_radius(coeffs) -> mpfr:
    d = len(coeffs) - 1
    lead = abs(coeffs[d])
    best = mpfr(0)
    for k in range(d):
        a = abs(coeffs[k]) / lead
        if k == 0:
            a = a / 2
        if a > 0:
            cand = a ** (mpfr(1) / (d - k))
            if cand > best:
                best = cand
    return 2 * best if best > 0 else mpfr(1)


def _ladder(digits: int) -> list[int]:
    levels = [digits]
    while levels[-1] > 64:
        levels.append(max(64, levels[-1] // 2))
    return sorted(set(levels))


def _aberth(work, prec: Precision):
    """Simultaneous iteration; returns (points, iterations, converged).

    Each precision level iterates until its own tolerance 10^(-level/2) * R
    is met, its correction floor is reached (roundoff at that level stops
    the best correction from improving -- detected over a degree-scaled
    window), or a per-level cap runs out; any of those escalates to the next
    level.  Only the top level's tolerance decides convergence.
    """
    d = len(work) - 1
    digits = prec.decimal_digits
    cap_total = ITERATION_CAP_PER_DEGREE * d
    total_iter = 0
    z = None
    radius = None
    met_tol = False
    for level in _ladder(digits):
        lev = Precision(level)
        with lev.context():
            coeffs = [mpc(c) for c in work]
            dcoeffs = [coeffs[k] * k for k in range(1, d + 1)]
            if z is None:
                radius = _fujiwara_radius(coeffs)
                z = [
                    radius * mpc(gmpy2.cos(mpfr(_TAU) * j / d + ANGULAR_OFFSET),
                                 gmpy2.sin(mpfr(_TAU) * j / d + ANGULAR_OFFSET))
                    for j in range(d)
                ]
            else:
                radius = mpfr(radius)
                z = [mpc(p) for p in z]
            tol = mpfr(10) ** -(level // 2) * radius
            nudge_scale = radius / 100
            window = max(10, d // 3)
            level_cap = 8 * d + 100
            best = None
            best_iter = 0
            met_tol = False
            for it in range(level_cap):
                if total_iter >= cap_total:
                    break
                total_iter += 1
                pvals = [_horner(coeffs, zj) for zj in z]
                dvals = [_horner(dcoeffs, zj) for zj in z]
                new_z = []
                maxw = mpfr(0)
                for j in range(d):
                    if pvals[j] == 0:
                        new_z.append(z[j])
                        continue
                    if dvals[j] == 0:
                        # dead point on a critical circle: deterministic kick
                        w = nudge_scale * mpc(gmpy2.cos(mpfr(_TAU) * j / d),
                                              gmpy2.sin(mpfr(_TAU) * j / d))
                        new_z.append(z[j] - w)
                        maxw = max(maxw, abs(w))
                        continue
                    nj = pvals[j] / dvals[j]
                    s = mpc(0)
                    zj = z[j]
                    for k in range(d):
                        if k == j:
                            continue
                        diff = zj - z[k]
                        if diff == 0:
                            diff = mpc(nudge_scale)
                        s += 1 / diff
                    denom = 1 - nj * s
                    w = nj if denom == 0 else nj / denom
                    new_z.append(zj - w)
                    aw = abs(w)
                    if aw > maxw:
                        maxw = aw
                z = new_z
                if maxw <= tol:
                    met_tol = True
                    break
                if best is None or maxw < best * mpfr("0.8"):
                    best = maxw
                    best_iter = it
                elif it - best_iter >= window:
                    break  # correction floor for this level: escalate
    return z, total_iter, met_tol


def find_roots(coeffs, prec: Precision, *, family: int = 0, n: int | None = None) -> RootCloud:
    """Deflate, locate, and certify all roots of a coefficient vector.

    ``coeffs`` is ascending-degree; leading/trailing coefficients with
    magnitude <= 10^(-digits/2) * max|c| are deflated first (each trailing
    deflation records an exact root at 0).  Non-convergence within the
    iteration cap returns a partial cloud with ``converged=False`` and the
    offending residuals flagged rather than raising.
    """
    with prec.context():
        work = [mpc(c) for c in coeffs]
        if not work or all(c == 0 for c in work):
            raise RootFindingError("all coefficients are zero")
        scale = mpfr(0)
        for c in work:
            a = abs(c)
            if a > scale:
                scale = a
        tol = prec.eps() * scale
        while work and abs(work[-1]) <= tol:
            work.pop()
        zeros_at_origin = 0
        while work and abs(work[0]) <= tol:
            work.pop(0)
            zeros_at_origin += 1
        if not work:
            raise RootFindingError("polynomial deflated to nothing")
        d = len(work) - 1
        if n is None:
            n = len(coeffs) - 1
        leading = work[-1]
        if d == 0:
            points = [mpc(0)] * zeros_at_origin
            converged = True
        elif d == 1:
            points = [mpc(0)] * zeros_at_origin + [-work[0] / work[1]]
            converged = True
        else:
            found, _iterations, converged = _aberth(work, prec)
            points = [mpc(0)] * zeros_at_origin + [mpc(p) for p in found]
        points.sort(key=lambda p: (p.real, p.imag))
        full = [mpc(c) for c in coeffs]
        abs_coeffs = [abs(c) for c in full]
        residuals = []
        for p in points:
            denom = _horner_abs(abs_coeffs, abs(p))
            if denom == 0:
                denom = scale
            residuals.append(abs(_horner(full, p)) / denom)
        cert = prec.eps(4)
        flags = tuple(res > cert for res in residuals)
    return RootCloud(
        family=family,
        n=n,
        precision=prec,
        points=tuple(points),
        residuals=tuple(residuals),
        effective_degree=d + zeros_at_origin,
        leading=leading,
        flags=flags,
        converged=converged,
    )


def certify(coeffs, cloud: RootCloud) -> RootCloud:
    """Recompute residuals by Horner evaluation at doubled precision.

    Never raises: roots whose refreshed residual exceeds 10^(-digits/4) are
    flagged, everything else is confirmed.
    """
    double = cloud.precision.doubled()
    with double.context():
        dcoeffs = [mpc(c) for c in coeffs]
        abs_coeffs = [abs(c) for c in dcoeffs]
        scale = max(abs_coeffs) if abs_coeffs else mpfr(1)
        residuals = []
        for p in cloud.points:
            pz = mpc(p)
            denom = _horner_abs(abs_coeffs, abs(pz))
            if denom == 0:
                denom = scale
            residuals.append(abs(_horner(dcoeffs, pz)) / denom)
        cert = mpfr(10) ** -(cloud.precision.decimal_digits // 4)
        flags = tuple(res > cert for res in residuals)
    return replace(cloud, residuals=tuple(residuals), flags=flags)


def cloud_to_csv(cloud: RootCloud) -> str:
    """CSV rows family, n, re, im, residual with a metadata comment line."""
    lines = [
        f"# hpzeros-rootcloud digits={cloud.precision.decimal_digits} "
        f"family={cloud.family} n={cloud.n} effective_degree={cloud.effective_degree} "
        f"leading_re={cloud.leading.real} leading_im={cloud.leading.imag} "
        f"converged={int(cloud.converged)}",
        "family,n,re,im,residual",
    ]
    for p, res in zip(cloud.points, cloud.residuals):
        lines.append(f"{cloud.family},{cloud.n},{p.real},{p.imag},{res}")
    return "\n".join(lines) + "\n"


def cloud_to_json(cloud: RootCloud) -> dict:
    return {
        "family": cloud.family,
        "n": cloud.n,
        "decimal_digits": cloud.precision.decimal_digits,
        "effective_degree": cloud.effective_degree,
        "leading": [str(cloud.leading.real), str(cloud.leading.imag)],
        "converged": cloud.converged,
        "points": [[str(p.real), str(p.imag)] for p in cloud.points],
        "residuals": [str(r) for r in cloud.residuals],
    }


def cloud_from_json(data: dict) -> RootCloud:
    prec = Precision(int(data["decimal_digits"]))
    with prec.context():
        points = tuple(mpc(mpfr(re), mpfr(im)) for re, im in data["points"])
        residuals = tuple(mpfr(r) for r in data["residuals"])
        leading = mpc(mpfr(data["leading"][0]), mpfr(data["leading"][1]))
        cert = prec.eps(4)
        flags = tuple(res > cert for res in residuals)
    return RootCloud(
        family=int(data["family"]),
        n=int(data["n"]),
        precision=prec,
        points=points,
        residuals=residuals,
        effective_degree=int(data["effective_degree"]),
        leading=leading,
        flags=flags,
        converged=bool(data["converged"]),
    )


def cloud_from_csv(text: str) -> RootCloud:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("# hpzeros-rootcloud"):
        raise RootFindingError("not a root-cloud CSV")
    meta = dict(item.split("=", 1) for item in lines[0].split()[2:])
    prec = Precision(int(meta["digits"]))
    with prec.context():
        leading = mpc(mpfr(meta["leading_re"]), mpfr(meta["leading_im"]))
        points = []
        residuals = []
        for ln in lines[2:]:
            _fam, _n, re, im, res = ln.split(",")
            points.append(mpc(mpfr(re), mpfr(im)))
            residuals.append(mpfr(res))
        cert = prec.eps(4)
        flags = tuple(res > cert for res in residuals)
    return RootCloud(
        family=int(meta["family"]),
        n=int(meta["n"]),
        precision=prec,
        points=tuple(points),
        residuals=tuple(residuals),
        effective_degree=int(meta["effective_degree"]),
        leading=leading,
        flags=flags,
        converged=bool(int(meta["converged"])),
    )
