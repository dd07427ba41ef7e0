"""Shipped catalog: contents named by the experiments, arity, buildability."""

from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr

from hpzeros.precision import Precision, parse_exact
from hpzeros.presets import MODE_ARITY, Preset, get_preset, presets
from hpzeros.series import build_function_series

PREC = Precision(64)


def test_catalog_nonempty_and_unique():
    catalog = presets()
    assert len(catalog) >= 20
    assert len(set(catalog)) == len(catalog)


def test_ang1_factors():
    p = get_preset("ang1")
    f1, f2 = p.functions
    assert f1.factors == (("1", Fraction(1, 2)), ("-1", Fraction(-1, 2)))
    assert f2.factors == (("2", Fraction(1, 2)), ("-2", Fraction(-1, 2)))


def test_nik_eps_branch_point():
    p = get_preset("nik_eps")
    perturbed = [a for a, _ in p.functions[0].factors if "0.1" in a]
    assert perturbed
    value = parse_exact(perturbed[0], PREC)
    assert float(value.real) == pytest.approx(0.1)
    assert float(value.imag) == pytest.approx(1.6 * 3 ** 0.5)


def test_kalyagin_markov_supports():
    p = get_preset("kalyagin_markov")
    # sqrt((z+1)/z) = (1+w)^(1/2) and sqrt((z-3)/z) = (1-3w)^(1/2)
    assert p.functions[0].factors == (("-1", Fraction(1, 2)),)
    assert p.functions[1].factors == (("3", Fraction(1, 2)),)


def test_both_readings_of_the_nikishin_branch_point_ship():
    catalog = presets()
    assert "nik_sqrt3_16" in catalog
    assert "nik_16i" in catalog


def test_two_point_presets_pair_expansion_points():
    for name in ("bus210a", "bus210b", "bus205c"):
        p = get_preset(name)
        assert p.mode == "two_point"
        assert p.functions[0].expansion_point == "zero"
        assert p.functions[1].expansion_point == "infinity"


def test_opposite_branch_encoded_by_prefactor():
    same = get_preset("bus210a")
    diff = get_preset("bus210b")
    assert same.functions[1].prefactor == "1"
    assert diff.functions[1].prefactor == "-1"
    s_same = build_function_series(same.functions[1], 3, PREC)
    s_diff = build_function_series(diff.functions[1], 3, PREC)
    assert all(a == -b for a, b in zip(s_same.coeffs, s_diff.coeffs))


def test_mode_arity_enforced():
    with pytest.raises(Exception):
        Preset(name="x", mode="pade", functions=get_preset("ang1").functions)


def test_every_preset_builds_a_series():
    for name, p in presets().items():
        assert len(p.functions) == MODE_ARITY[p.mode]
        for f in p.functions:
            s = build_function_series(f, 6, PREC)
            assert len(s) == 7


def test_nikishin_pairs_are_function_and_square():
    for name in ("nik_sqrt3_16", "nik_0_9", "nik_16i", "nik_eps"):
        p = get_preset(name)
        f, f2 = p.functions
        assert f.power == 1 and f2.power == 2
        assert f.factors == f2.factors
        s = build_function_series(f, 8, PREC)
        s2 = build_function_series(f2, 8, PREC)
        from hpzeros.series import series_mul
        sq = series_mul(s, s)
        with PREC.context():
            assert all(abs(a - b) <= mpfr("1e-55") * max(mpfr(1), abs(a))
                       for a, b in zip(sq.coeffs, s2.coeffs))


def test_unknown_preset():
    with pytest.raises(KeyError):
        get_preset("nope")


def test_round_trip_json():
    for p in presets().values():
        doc = p.to_json()
        assert doc["name"] == p.name
        assert len(doc["functions"]) == len(p.functions)
