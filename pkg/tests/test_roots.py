"""Root finder: examples, deflation, certification, and rebuild property."""

import dataclasses
import random

import gmpy2
import pytest
from gmpy2 import mpc, mpfr

from hpzeros.precision import Precision
from hpzeros.roots import (
    RootFindingError,
    certify,
    cloud_from_csv,
    cloud_from_json,
    cloud_to_csv,
    cloud_to_json,
    find_roots,
)

from util import max_match_distance, poly_from_roots

PREC = Precision(128)


class TestExamples:
    def test_quadratic_plus_one(self):
        cloud = find_roots([1, 0, 1], PREC)
        pts = [complex(p) for p in cloud.points]
        assert pts == [-1j, 1j] or pts == [1j, -1j]
        assert all(float(r) <= 1e-32 for r in cloud.residuals)

    def test_linear(self):
        cloud = find_roots([-mpfr("2.5"), 1], PREC)
        assert len(cloud.points) == 1
        assert complex(cloud.points[0]) == 2.5

    def test_degree_40_known_roots(self):
        rng = random.Random(4117)
        with PREC.context():
            roots = [mpc(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(40)]
            coeffs = poly_from_roots(roots, leading=mpfr("0.7"))
        cloud = find_roots(coeffs, PREC)
        assert cloud.effective_degree == 40
        assert cloud.converged
        with PREC.context():
            assert max_match_distance(cloud.points, roots) <= PREC.eps(4)

    def test_all_zero_rejected(self):
        with pytest.raises(RootFindingError):
            find_roots([0, 0, 0], PREC)

    def test_constant_gives_empty_cloud(self):
        cloud = find_roots([mpfr(3)], PREC)
        assert cloud.points == ()
        assert cloud.effective_degree == 0
        recert = certify([mpfr(3)], cloud)
        assert recert.flags == ()


class TestDeflation:
    def test_trailing_zeros_recorded_at_origin(self):
        # z^2 (z + 1): ascending coefficients [0, 0, 1, 1]
        cloud = find_roots([0, 0, 1, 1], PREC)
        assert cloud.effective_degree == 3
        zeros = [p for p in cloud.points if p == 0]
        assert len(zeros) == 2
        assert any(abs(p + 1) < mpfr("1e-30") for p in cloud.points)

    def test_negligible_leading_coefficient_deflated(self):
        with PREC.context():
            tiny = mpfr(10) ** -200
            cloud = find_roots([1, 1, tiny], PREC)
        assert cloud.effective_degree == 1
        assert abs(complex(cloud.points[0]) + 1) < 1e-30


class TestCertify:
    def test_exact_roots_zero_residual(self):
        cloud = find_roots([1, 0, 1], PREC)
        cert = certify([1, 0, 1], cloud)
        assert all(float(r) == 0.0 for r in cert.residuals)
        assert not any(cert.flags)

    def test_perturbed_root_flagged(self):
        p64 = Precision(64)
        cloud = find_roots([1, 0, 1], p64)
        with p64.context():
            bad = tuple(p + mpfr("1e-5") for p in cloud.points)
        tampered = dataclasses.replace(cloud, points=bad)
        cert = certify([1, 0, 1], tampered)
        assert all(cert.flags)


class TestInvariants:
    def test_root_count_equals_effective_degree(self):
        for coeffs in ([1, 0, 1], [0, 0, 1, 1], [2, 3], [5, -4, 3, -2, 1]):
            cloud = find_roots(coeffs, PREC)
            assert len(cloud.points) == cloud.effective_degree

    def test_real_coefficients_conjugate_closure(self):
        rng = random.Random(99)
        coeffs = [mpfr(rng.uniform(-3, 3)) for _ in range(13)]
        cloud = find_roots(coeffs, PREC)
        with PREC.context():
            conj = [mpc(p.real, -p.imag) for p in cloud.points]
            assert max_match_distance(cloud.points, conj) <= PREC.eps(4)

    def test_monic_rebuild_matches_input(self):
        rng = random.Random(7)
        with PREC.context():
            coeffs = [mpc(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(12)]
        cloud = find_roots(coeffs, PREC)
        with PREC.context():
            rebuilt = poly_from_roots(cloud.points, leading=cloud.leading)
            scale = max(abs(c) for c in coeffs)
            worst = max(abs(a - b) for a, b in zip(rebuilt, coeffs))
            assert worst <= PREC.eps(4) * scale

    def test_determinism(self):
        rng = random.Random(3)
        coeffs = [mpfr(rng.uniform(-2, 2)) for _ in range(21)]
        a = find_roots(coeffs, PREC)
        b = find_roots(coeffs, PREC)
        assert [str(p) for p in a.points] == [str(p) for p in b.points]


class TestSerialization:
    def test_csv_round_trip(self):
        cloud = find_roots([1, 0, 1], PREC, family=1, n=7)
        text = cloud_to_csv(cloud)
        again = cloud_from_csv(text)
        assert again.family == 1 and again.n == 7
        assert again.effective_degree == cloud.effective_degree
        with PREC.context():
            assert max_match_distance(again.points, cloud.points) == 0

    def test_json_round_trip(self):
        cloud = find_roots([0, 0, 1, 1], PREC, family=2, n=3)
        doc = cloud_to_json(cloud)
        again = cloud_from_json(doc)
        assert again.points == cloud.points
        assert again.leading == cloud.leading

    def test_csv_rejects_other_files(self):
        with pytest.raises(RootFindingError):
            cloud_from_csv("x,y\n1,2\n")
