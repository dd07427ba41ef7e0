"""Empirical observables of root clouds.

Spurious (Froissart) structures are identified by a fixed operational rule:
a point is a *candidate* when its nearest-neighbor distance within its own
family exceeds ``isolation_factor`` (default 3) times the family's median
nearest-neighbor distance, and candidates pair into doublets/triplets when
their mutual distances are below ``pair_factor`` (default 1/2) times the
median nearest-neighbor distance of the union cloud.  All thresholds are
relative to cloud scale, so the detectors are invariant under translating
and rotating every cloud, and every report records the thresholds it used.

Cloud geometry runs at a fixed 64-digit precision regardless of how many
digits the clouds were computed with; detector decisions live at the 1e-1
scale and gain nothing from more.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field

import gmpy2
from gmpy2 import mpc, mpfr

from .precision import Precision
from .roots import RootCloud

__all__ = [
    "AnalysisError",
    "GridClearanceError",
    "CountingMeasure",
    "FroissartReport",
    "GridSpec",
    "kalyagin_point",
    "pushing_gap",
    "spurious_candidates",
    "detect_doublets",
    "detect_triplets",
    "detect_singlets",
    "froissart_report",
    "nearest_to",
    "density_near",
    "measure_discrepancy",
    "potential_grid",
    "grid_to_csv",
]

GEOMETRY_PRECISION = Precision(64)
DEFAULT_ISOLATION_FACTOR = 3.0
DEFAULT_PAIR_FACTOR = 0.5


class AnalysisError(ValueError):
    pass


class GridClearanceError(AnalysisError):
    """A potential-grid point fell within the clearance of a root."""


@dataclass(frozen=True)
class CountingMeasure:
    """Zero-counting measure of one cloud, one atom of weight 1/n per point."""

    cloud: RootCloud
    n: int

    @property
    def mass(self) -> mpfr:
        with GEOMETRY_PRECISION.context():
            return mpfr(self.cloud.effective_degree) / self.n


@dataclass(frozen=True)
class FroissartReport:
    """Classified spurious structures of one solve at one degree."""

    n: int
    doublets: tuple = ()    # (zero point, pole point, separation)
    singlets: tuple = ()    # (family, point, isolation distance)
    triplets: tuple = ()    # (point0, point1, point2, max pairwise separation)
    thresholds_used: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def cx(p):
            return [float(p.real), float(p.imag)]
        return {
            "degree": self.n,
            "doublets": [
                {"zero": cx(z), "pole": cx(p), "separation": float(s)}
                for z, p, s in self.doublets
            ],
            "singlets": [
                {"family": f, "point": cx(p), "isolation": float(d)}
                for f, p, d in self.singlets
            ],
            "triplets": [
                {"points": [cx(a), cx(b), cx(c)], "max_separation": float(s)}
                for a, b, c, s in self.triplets
            ],
            "thresholds_used": self.thresholds_used,
        }


def kalyagin_point(a) -> mpfr:
    """Pushed support endpoint (1-a)^3 / (9 (a^2 - a + 1)) for supports [-a,0], [0,1].

    Strictly decreasing on (0, 1); raises outside that open interval.
    """
    with GEOMETRY_PRECISION.context():
        a = mpfr(a)
        if not (0 < a < 1):
            raise AnalysisError(f"pushing parameter must be in (0, 1), got {float(a)}")
        return (1 - a) ** 3 / (9 * (a * a - a + 1))


def pushing_gap(cloud: RootCloud, interval, im_tol) -> tuple[mpfr, bool]:
    """Leftmost near-real root in a window, and whether the gap below it is clean.

    Keeps roots with |Im| <= im_tol and Re strictly inside (lo, hi) and
    returns their minimum real part.  ``gap_verified`` checks the whole cloud
    (any imaginary part): no point may have real part strictly inside
    (lo, leftmost), which catches off-axis strays hovering over the gap.
    """
    lo, hi = interval
    with GEOMETRY_PRECISION.context():
        lo, hi, im_tol = mpfr(lo), mpfr(hi), mpfr(im_tol)
        band = [p for p in cloud.points if abs(p.imag) <= im_tol and lo < p.real < hi]
        if not band:
            raise AnalysisError(f"no roots with |Im| <= {float(im_tol)} in ({float(lo)}, {float(hi)})")
        leftmost = min(p.real for p in band)
        gap_verified = not any(lo < p.real < leftmost for p in cloud.points)
        return leftmost, gap_verified


def _nn_distances(points) -> list[mpfr]:
    m = len(points)
    out = []
    for i in range(m):
        best = None
        pi = points[i]
        for j in range(m):
            if j == i:
                continue
            d = abs(pi - points[j])
            if best is None or d < best:
                best = d
        out.append(best)
    return out


def _pooled_median_nn(clouds) -> mpfr:
    """Union nearest-neighbor scale: median of the pooled per-cloud
    nearest-neighbor distances.  Pooling per cloud keeps the scale immune to
    a zero of one family exactly coinciding with a pole of another (their
    merged-set distance would be 0 and poison the median)."""
    pooled = []
    for cloud in clouds:
        if len(cloud.points) >= 2:
            pooled.extend(_nn_distances(cloud.points))
    if not pooled:
        return mpfr(0)
    return statistics.median(pooled)


def _candidates(cloud: RootCloud, isolation_factor) -> list[tuple[mpc, mpfr]]:
    """(point, own-family nearest-neighbor distance) for isolated points; []
    when the cloud is too small to define a median scale."""
    if len(cloud.points) < 8:
        return []
    dists = _nn_distances(cloud.points)
    d_med = statistics.median(dists)
    if d_med == 0:
        raise AnalysisError("degenerate cloud: all points coincident")
    picked = [(p, d) for p, d in zip(cloud.points, dists) if d > isolation_factor * d_med]
    picked.sort(key=lambda t: (-t[1], t[0].real, t[0].imag))
    return picked


def spurious_candidates(cloud: RootCloud, isolation_factor=DEFAULT_ISOLATION_FACTOR):
    """Points isolated from their own family: nearest-neighbor distance above
    ``isolation_factor`` times the family median, most isolated first."""
    if len(cloud.points) < 8:
        raise AnalysisError("need at least 8 points to define an isolation scale")
    with GEOMETRY_PRECISION.context():
        return _candidates(cloud, mpfr(isolation_factor))


def _thresholds(d_med, pair_factor, isolation_factor) -> dict:
    return {
        "d_med": float(d_med),
        "eps_pair": float(d_med * pair_factor),
        "pair_factor": float(pair_factor),
        "isolation_factor": float(isolation_factor),
    }


def detect_doublets(zeros: RootCloud, poles: RootCloud, *,
                    pair_factor=DEFAULT_PAIR_FACTOR,
                    isolation_factor=DEFAULT_ISOLATION_FACTOR) -> FroissartReport:
    """Pair isolated zeros with isolated poles closer than eps_pair = d_med/2.

    d_med is the median nearest-neighbor distance over the union of both
    clouds; matching is greedy by ascending separation.  Empty input or no
    candidates give an empty report, never an error.
    """
    with GEOMETRY_PRECISION.context():
        pair_factor = mpfr(pair_factor)
        isolation_factor = mpfr(isolation_factor)
        d_med = _pooled_median_nn((zeros, poles))
        thresholds = _thresholds(d_med, pair_factor, isolation_factor)
        if d_med == 0:
            return FroissartReport(n=zeros.n, thresholds_used=thresholds)
        eps_pair = pair_factor * d_med
        cz = _candidates(zeros, isolation_factor)
        cp = _candidates(poles, isolation_factor)
        pairs = []
        for z, _ in cz:
            for p, _ in cp:
                sep = abs(z - p)
                if sep < eps_pair:
                    pairs.append((sep, z, p))
        pairs.sort(key=lambda t: (t[0], t[1].real, t[1].imag, t[2].real, t[2].imag))
        used_z, used_p, doublets = set(), set(), []
        for sep, z, p in pairs:
            kz, kp = (z.real, z.imag), (p.real, p.imag)
            if kz in used_z or kp in used_p:
                continue
            used_z.add(kz)
            used_p.add(kp)
            doublets.append((z, p, sep))
        return FroissartReport(n=zeros.n, doublets=tuple(doublets), thresholds_used=thresholds)


def detect_triplets(c0: RootCloud, c1: RootCloud, c2: RootCloud, *,
                    pair_factor=DEFAULT_PAIR_FACTOR,
                    isolation_factor=DEFAULT_ISOLATION_FACTOR) -> FroissartReport:
    """Near-coincident triples of isolated points, one from each family."""
    with GEOMETRY_PRECISION.context():
        pair_factor = mpfr(pair_factor)
        isolation_factor = mpfr(isolation_factor)
        d_med = _pooled_median_nn((c0, c1, c2))
        thresholds = _thresholds(d_med, pair_factor, isolation_factor)
        if d_med == 0:
            return FroissartReport(n=c0.n, thresholds_used=thresholds)
        eps_pair = pair_factor * d_med
        cands = [_candidates(c, isolation_factor) for c in (c0, c1, c2)]
        triples = []
        for a, _ in cands[0]:
            for b, _ in cands[1]:
                dab = abs(a - b)
                if dab >= eps_pair:
                    continue
                for c, _ in cands[2]:
                    dac = abs(a - c)
                    dbc = abs(b - c)
                    if dac < eps_pair and dbc < eps_pair:
                        triples.append((max(dab, dac, dbc), a, b, c))
        triples.sort(key=lambda t: (t[0], t[1].real, t[1].imag))
        used = [set(), set(), set()]
        out = []
        for sep, a, b, c in triples:
            keys = [(a.real, a.imag), (b.real, b.imag), (c.real, c.imag)]
            if any(k in used[i] for i, k in enumerate(keys)):
                continue
            for i, k in enumerate(keys):
                used[i].add(k)
            out.append((a, b, c, sep))
        return FroissartReport(n=c0.n, triplets=tuple(out), thresholds_used=thresholds)


def detect_singlets(c0: RootCloud, c1: RootCloud, c2: RootCloud, *,
                    pair_factor=DEFAULT_PAIR_FACTOR,
                    isolation_factor=DEFAULT_ISOLATION_FACTOR) -> FroissartReport:
    """Isolated points with no cross-family point within isolation_factor * d_med."""
    with GEOMETRY_PRECISION.context():
        pair_factor = mpfr(pair_factor)
        isolation_factor = mpfr(isolation_factor)
        clouds = (c0, c1, c2)
        d_med = _pooled_median_nn(clouds)
        thresholds = _thresholds(d_med, pair_factor, isolation_factor)
        if d_med == 0:
            return FroissartReport(n=c0.n, thresholds_used=thresholds)
        singlets = []
        for fam, cloud in enumerate(clouds):
            others = [p for j, c in enumerate(clouds) if j != fam for p in c.points]
            for point, own_iso in _candidates(cloud, isolation_factor):
                if others:
                    cross = min(abs(point - q) for q in others)
                    if cross <= isolation_factor * d_med:
                        continue
                    iso = min(own_iso, cross)
                else:
                    iso = own_iso
                singlets.append((fam, point, iso))
        singlets.sort(key=lambda t: (t[0], t[1].real, t[1].imag))
        return FroissartReport(n=c0.n, singlets=tuple(singlets), thresholds_used=thresholds)


def froissart_report(clouds, n: int | None = None, *,
                     pair_factor=DEFAULT_PAIR_FACTOR,
                     isolation_factor=DEFAULT_ISOLATION_FACTOR) -> FroissartReport:
    """Combined exclusive report for one solve.

    Two clouds (zeros, poles): doublets only.  Three clouds: triplets first,
    then cross-family doublets among the remaining candidates, then singlets
    -- no point lands in two structures.
    """
    clouds = list(clouds)
    if n is None:
        n = clouds[0].n
    if len(clouds) == 2:
        rep = detect_doublets(clouds[0], clouds[1],
                              pair_factor=pair_factor, isolation_factor=isolation_factor)
        return FroissartReport(n=n, doublets=rep.doublets, thresholds_used=rep.thresholds_used)
    if len(clouds) != 3:
        raise AnalysisError("froissart_report expects 2 or 3 clouds")
    with GEOMETRY_PRECISION.context():
        pair_factor_m = mpfr(pair_factor)
        isolation_factor_m = mpfr(isolation_factor)
        trip = detect_triplets(*clouds, pair_factor=pair_factor, isolation_factor=isolation_factor)
        taken = set()
        for a, b, c, _ in trip.triplets:
            for p in (a, b, c):
                taken.add((p.real, p.imag))
        d_med = _pooled_median_nn(clouds)
        thresholds = _thresholds(d_med, pair_factor_m, isolation_factor_m)
        doublets = []
        if d_med > 0:
            eps_pair = pair_factor_m * d_med
            cands = [
                [(p, d) for p, d in _candidates(c, isolation_factor_m)
                 if (p.real, p.imag) not in taken]
                for c in clouds
            ]
            pairs = []
            for i in range(3):
                for j in range(i + 1, 3):
                    for a, _ in cands[i]:
                        for b, _ in cands[j]:
                            sep = abs(a - b)
                            if sep < eps_pair:
                                pairs.append((sep, a, b))
            pairs.sort(key=lambda t: (t[0], t[1].real, t[1].imag, t[2].real, t[2].imag))
            for sep, a, b in pairs:
                ka, kb = (a.real, a.imag), (b.real, b.imag)
                if ka in taken or kb in taken:
                    continue
                taken.add(ka)
                taken.add(kb)
                doublets.append((a, b, sep))
        sing = detect_singlets(*clouds, pair_factor=pair_factor, isolation_factor=isolation_factor)
        singlets = tuple(
            (f, p, d) for f, p, d in sing.singlets if (p.real, p.imag) not in taken
        )
    return FroissartReport(
        n=n,
        doublets=tuple(doublets),
        singlets=singlets,
        triplets=trip.triplets,
        thresholds_used=thresholds,
    )


def nearest_to(cloud: RootCloud, target) -> tuple[mpc, mpfr]:
    """Closest cloud point to a target, with its distance."""
    if not cloud.points:
        raise AnalysisError("empty cloud")
    with GEOMETRY_PRECISION.context():
        target = mpc(target)
        best, best_d = None, None
        for p in cloud.points:
            d = abs(p - target)
            if best_d is None or d < best_d:
                best, best_d = p, d
        return best, best_d


def density_near(cloud: RootCloud, target, radius) -> float:
    """Fraction of cloud points within ``radius`` of ``target``."""
    if not cloud.points:
        raise AnalysisError("empty cloud")
    with GEOMETRY_PRECISION.context():
        target = mpc(target)
        radius = mpfr(radius)
        count = sum(1 for p in cloud.points if abs(p - target) <= radius)
    return count / len(cloud.points)


def _directed_hausdorff(a, b) -> mpfr:
    worst = mpfr(0)
    for p in a:
        best = None
        for q in b:
            d = abs(p - q)
            if best is None or d < best:
                best = d
        if best > worst:
            worst = best
    return worst


def measure_discrepancy(m1: CountingMeasure, m2: CountingMeasure) -> mpfr:
    """Symmetric Hausdorff distance between supports plus the mass difference."""
    if not m1.cloud.points or not m2.cloud.points:
        raise AnalysisError("empty cloud")
    with GEOMETRY_PRECISION.context():
        h = max(_directed_hausdorff(m1.cloud.points, m2.cloud.points),
                _directed_hausdorff(m2.cloud.points, m1.cloud.points))
        return h + abs(m1.mass - m2.mass)


@dataclass(frozen=True)
class GridSpec:
    """Rectangular evaluation grid with a clearance radius around roots."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int = 41
    ny: int = 41
    clearance: float = 1e-6


def potential_grid(clouds, grid: GridSpec):
    """Normalized max-potential max_i log|Q_i(z)| / n on a rectangular grid.

    Each cloud reconstructs log|Q| = log|leading| + sum log|z - root|; grid
    points closer than ``clearance`` to any root raise
    :class:`GridClearanceError`.  Returns (x, y, value) rows, x fastest.
    """
    clouds = list(clouds)
    if not clouds:
        raise AnalysisError("need at least one cloud")
    with GEOMETRY_PRECISION.context():
        clearance = mpfr(grid.clearance)
        rows = []
        xs = [grid.re_min + (grid.re_max - grid.re_min) * i / max(grid.nx - 1, 1)
              for i in range(grid.nx)]
        ys = [grid.im_min + (grid.im_max - grid.im_min) * j / max(grid.ny - 1, 1)
              for j in range(grid.ny)]
        for y in ys:
            for x in xs:
                z = mpc(x, y)
                value = None
                for cloud in clouds:
                    acc = gmpy2.log(abs(cloud.leading))
                    for r in cloud.points:
                        d = abs(z - r)
                        if d < clearance:
                            raise GridClearanceError(
                                f"grid point {x}+{y}i within clearance of a root")
                        acc += gmpy2.log(d)
                    v = acc / max(cloud.n, 1)
                    if value is None or v > value:
                        value = v
                rows.append((x, y, value))
        return rows


def grid_to_csv(rows) -> str:
    lines = ["x,y,value"]
    for x, y, v in rows:
        lines.append(f"{x},{y},{v}")
    return "\n".join(lines) + "\n"
