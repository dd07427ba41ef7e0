"""Acceptance suite: one test and one printed pass/fail line per criterion.

These are the binding end-to-end checks for the whole laboratory, run at
desk scale.  Tolerances are pinned here, not configurable:

  1. order of contact verified at doubled precision for every preset,
     n in {5, 10, 20, 40}, digits = 30 n, tolerance 10^(-digits/2)
  2. support pushing on the touching-interval Markov pair: third-family
     zeros real to 1e-5, gap (0, 0.07) empty, leftmost zero in (0.07, 0.20)
     bracketing 8/63, and closer to 8/63 at n=90 than at n=45
  3. diagonal approximant of sqrt((z+1)/z): poles simple, real, in (-1, 0)
     for n <= 20; the n=1 pole equals -1/4 to working precision
  4. cube-root preset, n = 25..40 at 1200 digits: never two spurious
     zero-pole pairs per degree
  5. [1, f, f^2] family: exactly one third-family zero within 0.05 of the
     simple pole of f^2 for n = 30..40, never part of a doublet/triplet
  6. two-point approximants: same-branch poles real (1e-5) inside
     (0.5, 2); opposite-branch pole density within 0.1 of the junction
     point z=1 at most 0.05
  7. invariants: scale covariance, conjugation symmetry, rational
     exactness, root count = effective degree, byte-identical reruns
  8. disjoint- vs coincident-branch-point unions at n=40: symmetric
     Hausdorff distance recorded (raw and with spurious points removed);
     informational only, no hard threshold
"""

import hashlib
import json
import os

import gmpy2
from gmpy2 import mpc, mpfr, mpq

from hpzeros.analysis import (
    GEOMETRY_PRECISION,
    _directed_hausdorff,
    density_near,
    detect_doublets,
    froissart_report,
    kalyagin_point,
    pushing_gap,
    spurious_candidates,
)
from hpzeros.linsys import (
    build_hp_system,
    build_pade_system,
    build_two_point_system,
    kernel_solve,
    residual_series,
)
from hpzeros.pipeline import RunConfig, run
from hpzeros.precision import Precision, parse_exact
from hpzeros.presets import get_preset, presets
from hpzeros.roots import certify, find_roots
from hpzeros.series import build_function_series

from util import max_match_distance

_SERIES_CACHE: dict = {}


def emit(capsys, name, ok, detail):
    with capsys.disabled():
        print(f"[ACCEPTANCE] {name}: {'PASS' if ok else 'FAIL'} - {detail}", flush=True)


def series_for(spec, length, digits):
    key = (spec.canonical_json(), digits)
    cached = _SERIES_CACHE.get(key)
    if cached is None or len(cached) < length:
        cached = build_function_series(spec, length - 1, Precision(digits))
        _SERIES_CACHE[key] = cached
    return cached.truncated(length)


def solve_preset(name, n, digits):
    preset = get_preset(name)
    if preset.mode == "hermite_pade":
        length = 3 * n + 2
        ser = [series_for(f, length, digits) for f in preset.functions]
        system = build_hp_system(ser[0], ser[1], n)
    elif preset.mode == "pade":
        length = 2 * n + 1
        ser = [series_for(preset.functions[0], length, digits)]
        system = build_pade_system(ser[0], n)
    else:
        length = n + 1
        ser = [series_for(f, length, digits) for f in preset.functions]
        system = build_two_point_system(ser[0], ser[1], n)
    solution = kernel_solve(system)
    return preset, solution, length


def clouds_for(name, n, digits):
    _preset, solution, _length = solve_preset(name, n, digits)
    prec = Precision(digits)
    return [
        find_roots(poly, prec, family=fam, n=n)
        for fam, poly in enumerate(solution.polys)
        if not all(c == 0 for c in poly)
    ]


def test_criterion_1_order_of_contact(capsys):
    degrees = (5, 10, 20, 40)
    failures = []
    cases = 0
    for name, preset in presets().items():
        for n in degrees:
            digits = 30 * n
            cases += 1
            try:
                _p, solution, length = solve_preset(name, n, digits)
                verify = [series_for(f, length, 2 * digits) for f in preset.functions]
                residual_series(solution, verify)
            except Exception as exc:
                failures.append(f"{name}@n={n}: {type(exc).__name__}: {exc}")
    ok = not failures
    emit(capsys, "1 order-of-contact",
         ok, f"{cases} preset/degree cases at digits=30n" if ok else "; ".join(failures[:4]))
    assert ok, failures


def test_criterion_2_kalyagin_pushing(capsys):
    target = 3 * kalyagin_point(mpq(1, 3))  # 8/63 after the x -> 3x rescale
    lefts = {}
    checks = []
    for n in (45, 60, 90):
        digits = 30 * n
        prec = Precision(digits)
        _p, solution, _ = solve_preset("kalyagin_markov", n, digits)
        cloud = certify(solution.polys[2],
                        find_roots(solution.polys[2], prec, family=2, n=n))
        with GEOMETRY_PRECISION.context():
            im_max = max(abs(p.imag) for p in cloud.points)
        checks.append((f"n={n} zeros real", float(im_max) <= 1e-5))
        leftmost, gap_ok = pushing_gap(cloud, (0.0, 3.0), 1e-5)
        lefts[n] = leftmost
        if n == 60:
            checks.append(("n=60 gap (0,0.07) empty", float(leftmost) > 0.07 and gap_ok))
            checks.append(("n=60 leftmost in (0.07,0.20)", 0.07 < float(leftmost) < 0.20))
    with GEOMETRY_PRECISION.context():
        d45 = abs(lefts[45] - target)
        d90 = abs(lefts[90] - target)
    checks.append(("n=90 closer to 8/63 than n=45", d90 < d45))
    ok = all(passed for _, passed in checks)
    detail = (f"leftmost(60)={float(lefts[60]):.5f} vs 8/63={float(target):.5f}, "
              f"|d45|={float(d45):.5f} > |d90|={float(d90):.5f}")
    if not ok:
        detail = "; ".join(name for name, passed in checks if not passed)
    emit(capsys, "2 kalyagin-pushing", ok, detail)
    assert ok, checks


def test_criterion_3_markov_pade_poles(capsys):
    failures = []
    for n in range(1, 21):
        digits = max(256, 30 * n)
        prec = Precision(digits)
        _p, solution, _ = solve_preset("markov_sqrt", n, digits)
        poles = find_roots(solution.polys[1], prec, family=1, n=n)
        with prec.context():
            if len(poles.points) != n:
                failures.append(f"n={n}: {len(poles.points)} poles")
                continue
            if any(abs(p.imag) > prec.eps(4) for p in poles.points):
                failures.append(f"n={n}: complex pole")
            if any(not (-1 < float(p.real) < 0) for p in poles.points):
                failures.append(f"n={n}: pole outside (-1,0)")
            gaps = [abs(a - b) for a, b in zip(poles.points, poles.points[1:])]
            if gaps and float(min(gaps)) < 1e-12:
                failures.append(f"n={n}: pole collision")
            if n == 1:
                err = abs(poles.points[0] + mpfr(1) / 4)
                if err > prec.eps():
                    failures.append(f"n=1 pole off -1/4 by {float(err):.2e}")
    ok = not failures
    emit(capsys, "3 markov-pade-poles", ok,
         "poles simple, real, in (-1,0) for n<=20; n=1 pole = -1/4" if ok
         else "; ".join(failures[:4]))
    assert ok, failures


def test_criterion_4_froissart_doublet_cap(capsys):
    digits = 1200
    prec = Precision(digits)
    counts = {}
    for n in range(25, 41):
        _p, solution, _ = solve_preset("pade10", n, digits)
        zeros = find_roots(solution.polys[0], prec, family=0, n=n)
        poles = find_roots(solution.polys[1], prec, family=1, n=n)
        counts[n] = len(detect_doublets(zeros, poles).doublets)
    ok = all(c in (0, 1) for c in counts.values())
    emit(capsys, "4 doublet-cap", ok,
         f"counts n=25..40: {list(counts.values())} (never 2)" if ok else f"counts: {counts}")
    assert ok, counts


def test_criterion_5_nikishin_pole_shadow(capsys):
    failures = []
    for n in range(30, 41):
        digits = max(256, 30 * n)
        prec = Precision(digits)
        pole = parse_exact("i*sqrt(3)*1.6", prec)
        _p, solution, _ = solve_preset("nik_sqrt3_16", n, digits)
        clouds = [find_roots(solution.polys[f], prec, family=f, n=n) for f in range(3)]
        with prec.context():
            shadows = [p for p in clouds[2].points if abs(p - pole) <= mpfr("0.05")]
        if len(shadows) != 1:
            failures.append(f"n={n}: {len(shadows)} zeros near the pole")
            continue
        report = froissart_report(clouds, n)
        shadow_key = (shadows[0].real, shadows[0].imag)
        in_doublet = any(shadow_key in ((z.real, z.imag), (q.real, q.imag))
                         for z, q, _ in report.doublets)
        in_triplet = any(shadow_key in ((a.real, a.imag), (b.real, b.imag), (c.real, c.imag))
                         for a, b, c, _ in report.triplets)
        if in_doublet or in_triplet:
            failures.append(f"n={n}: shadow zero flagged spurious")
    ok = not failures
    emit(capsys, "5 nikishin-pole-shadow", ok,
         "one third-family zero within 0.05 of the f^2 pole for n=30..40, never "
         "doublet/triplet" if ok else "; ".join(failures[:4]))
    assert ok, failures


def test_criterion_6_two_point_buslaev(capsys):
    digits = 1200
    prec = Precision(digits)
    n = 40
    failures = []
    _p, solution, _ = solve_preset("bus210a", n, digits)
    poles = find_roots(solution.polys[1], prec, family=1, n=n)
    with GEOMETRY_PRECISION.context():
        im_max = max(abs(p.imag) for p in poles.points)
        res = [float(p.real) for p in poles.points]
    if float(im_max) > 1e-5:
        failures.append(f"same-branch pole off axis by {float(im_max):.1e}")
    if not all(0.5 < x < 2.0 for x in res):
        failures.append(f"same-branch pole outside (0.5, 2): [{min(res):.4f}, {max(res):.4f}]")
    _p, solution, _ = solve_preset("bus210b", n, digits)
    poles_b = find_roots(solution.polys[1], prec, family=1, n=n)
    dens = density_near(poles_b, 1.0, 0.1)
    if dens > 0.05:
        failures.append(f"opposite-branch density near junction {dens:.3f} > 0.05")
    ok = not failures
    emit(capsys, "6 two-point-buslaev", ok,
         f"segment poles in [{min(res):.4f}, {max(res):.4f}], junction density {dens:.3f}"
         if ok else "; ".join(failures))
    assert ok, failures


def test_criterion_7_invariant_suite(capsys, tmp_path):
    failures = []
    digits = 256
    prec = Precision(digits)
    n = 8
    # scale covariance of zero sets under f1 -> c f1
    preset = get_preset("ang1")
    length = 3 * n + 2
    base = kernel_solve(build_hp_system(
        series_for(preset.functions[0], length, digits),
        series_for(preset.functions[1], length, digits), n))
    scaled = kernel_solve(build_hp_system(
        build_function_series(preset.functions[0].scaled("1+2*i"), length - 1, prec),
        series_for(preset.functions[1], length, digits), n))
    for fam in range(3):
        za = find_roots(base.polys[fam], prec).points
        zb = find_roots(scaled.polys[fam], prec).points
        with prec.context():
            if len(za) != len(zb) or max_match_distance(za, zb) > mpfr(10) ** -50:
                failures.append(f"scale covariance broken in family {fam}")
    # conjugation symmetry on a symmetric preset
    if not all(c.imag == 0 for fam in base.polys for c in fam):
        failures.append("conjugation: non-real kernel for real data")
    for fam in range(3):
        cloud = find_roots(base.polys[fam], prec)
        with prec.context():
            conj = [mpc(p.real, -p.imag) for p in cloud.points]
            if max_match_distance(cloud.points, conj) > prec.eps(4):
                failures.append(f"conjugation: zeros of family {fam} not closed")
    # rational-function exactness for an integer-exponent spec
    from hpzeros.series import FunctionSpec
    rational = FunctionSpec(factors=(("3", -1),), label="rational_pole")
    sol_r = kernel_solve(build_pade_system(
        build_function_series(rational, 2 * 6, prec), 6))
    remainder = residual_series(sol_r, [build_function_series(rational, 40, prec.doubled())])
    with prec.doubled().context():
        if any(abs(c) > mpfr(10) ** -(digits // 2) for c in remainder.coeffs):
            failures.append("rational exactness: remainder not identically small")
    # root count = effective degree
    for fam in range(3):
        cloud = find_roots(base.polys[fam], prec, family=fam, n=n)
        if len(cloud.points) != cloud.effective_degree:
            failures.append("root count != effective degree")
    # deterministic byte-identical reruns through the full pipeline
    out = str(tmp_path / "det")
    cfg = RunConfig.from_json(
        {"preset": "markov_sqrt", "degrees": [1, 2, 3], "out": out, "digits": 128})
    run(cfg)
    first = _hash_tree(out)
    run(cfg)
    if _hash_tree(out) != first:
        failures.append("rerun not byte-identical")
    ok = not failures
    emit(capsys, "7 invariant-suite", ok,
         "scale covariance, conjugation, rational exactness, root counts, "
         "byte-identical reruns" if ok else "; ".join(failures))
    assert ok, failures


def _hash_tree(root):
    out = {}
    for base, _dirs, names in os.walk(root):
        for name in names:
            path = os.path.join(base, name)
            with open(path, "rb") as fh:
                out[os.path.relpath(path, root)] = hashlib.sha256(fh.read()).hexdigest()
    return out


def test_criterion_8_crosscheck_recorded(capsys):
    n = 40
    digits = 1200
    unions = {}
    filtered = {}
    for name in ("ang1", "nik1"):
        clouds = clouds_for(name, n, digits)
        unions[name] = [p for c in clouds for p in c.points]
        kept = []
        for c in clouds:
            spurious = {(p.real, p.imag) for p, _ in spurious_candidates(c)}
            kept.extend(p for p in c.points if (p.real, p.imag) not in spurious)
        filtered[name] = kept
    with GEOMETRY_PRECISION.context():
        raw = max(_directed_hausdorff(unions["ang1"], unions["nik1"]),
                  _directed_hausdorff(unions["nik1"], unions["ang1"]))
        clean = max(_directed_hausdorff(filtered["ang1"], filtered["nik1"]),
                    _directed_hausdorff(filtered["nik1"], filtered["ang1"]))
    emit(capsys, "8 union-crosscheck (recorded)", True,
         f"symmetric Hausdorff at n=40: raw {float(raw):.4f}, "
         f"spurious-filtered {float(clean):.4f} (exploratory reference 0.15, "
         f"equivalence holds only in the limit)")
    # recorded, not hard-failed: the raw value is inflated by any single
    # spurious stray; sanity-check only that the clouds genuinely overlap.
    assert float(clean) < 1.0
