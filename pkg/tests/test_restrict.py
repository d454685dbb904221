"""Restriction pipeline: trace sums, Siegel zeta values, table rows, and
the Kohnen-Zagier identity."""

import os
import sys
from fractions import Fraction

import pytest
import sympy

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir,
                                "src"))

from restrictia.errors import (BadWeight, GuardMismatch, IdentityFailed)
from restrictia.fieldcore import load_field
from restrictia.qseries import decompose, eisenstein, dim_Mk
from restrictia.restrict import (NIEMEIER_N2, _siegel_solve,
                                 kohnen_zagier_g, niemeier_check,
                                 restriction_qexp, s_l, siegel_zeta,
                                 table_row, verify_kz)

FIELDS = os.path.join(os.path.dirname(__file__), os.pardir, "fields")


def _load(name):
    return load_field(os.path.join(FIELDS, name))


def test_rational_s_l_is_divisor_sum():
    q = _load("deg1-1.json")
    for k in (2, 4, 6, 12):
        for l in range(1, 11):
            assert s_l(q, k, l) == sympy.divisor_sigma(l, k - 1)


def test_rational_restriction_is_eisenstein():
    q = _load("deg1-1.json")
    for k in (4, 6, 8, 10, 12, 14):
        assert restriction_qexp(q, k, 8).coeffs == eisenstein(k, 8).coeffs


def test_odd_weight_rejected():
    q = _load("deg1-1.json")
    with pytest.raises(BadWeight):
        s_l(q, 3, 1)
    with pytest.raises(BadWeight):
        siegel_zeta(q, 2)  # dk = 2 has no space to solve in


def test_quadratic_zeta_values():
    f5 = _load("deg2-5.json")
    assert siegel_zeta(f5, 2) == Fraction(1, 30)
    assert siegel_zeta(f5, 6) == Fraction(67, 630)
    f8 = _load("deg2-8.json")
    assert siegel_zeta(f8, 2) == Fraction(1, 12)
    f13 = _load("deg2-13.json")
    assert siegel_zeta(f13, 2) == Fraction(1, 6)


def test_guard_mismatch_on_corrupted_sums():
    f5 = _load("deg2-5.json")
    w = 12
    m = dim_Mk(w)
    svals = [s_l(f5, 6, l) for l in range(1, m + 3)]
    bad = list(svals)
    bad[-1] += 1
    with pytest.raises(GuardMismatch):
        _siegel_solve(f5, 6, bad, w)


def test_quartic_725_weight2_restriction_is_e4_squared():
    f = _load("deg4-725.json")
    r = restriction_qexp(f, 2, 5)
    e4 = eisenstein(4, 5)
    assert r.coeffs == (e4 * e4).coeffs
    assert r.weight == 8


def test_quartic_725_row():
    f = _load("deg4-725.json")
    row = table_row(f, 4)
    assert row.coords[0] == 1
    assert row.coords[1] == Fraction(-518400, 541)
    assert row.residual_ok
    assert row.diffs[0] == pytest.approx(2.7375349, rel=1e-7)


def test_quintic_14641_row():
    f = _load("deg5-14641.json")
    row = table_row(f, 4)
    assert row.coords[1] == Fraction(-1017360000, 847811)
    assert row.diffs[0] == pytest.approx(0.060027104, rel=1e-7)


def test_eisenstein_reference_constants():
    refs = {
        16: [Fraction(1), Fraction(-3456000, 3617)],
        20: [Fraction(1), Fraction(-209520000, 174611)],
        24: [Fraction(1), Fraction(-340364160000, 236364091),
             Fraction(30710845440000, 236364091)],
    }
    for w, expected in refs.items():
        got = decompose(eisenstein(w, dim_Mk(w) + 3), w)
        assert got == expected, w


def test_kohnen_zagier_g_matches_known_coefficients():
    g = kohnen_zagier_g(14)
    known = {0: 0, 1: 1, 4: -56, 5: 120, 8: -240, 9: 9, 12: 1440,
             13: -1320}
    for n, c in known.items():
        assert g.coeff(n) == c, n
    assert g.weight == Fraction(13, 2)
    for n in (2, 3, 6, 7, 10, 11):
        assert g.coeff(n) == 0


def test_verify_kz_small_discriminants():
    for name in ("deg2-5.json", "deg2-8.json", "deg2-13.json"):
        assert verify_kz(_load(name)) is True


def test_verify_kz_rejects_wrong_degree():
    with pytest.raises(ValueError):
        verify_kz(_load("deg1-1.json"))


def test_niemeier_table_shape():
    assert len(NIEMEIER_N2) == 24
    values = [v for _, v in NIEMEIER_N2]
    assert max(values) == 1104 and min(values) == 0
    assert values.count(720) == 2  # two lattices share N_2 = 720


def test_niemeier_check_needs_sextic():
    with pytest.raises(ValueError):
        niemeier_check(_load("deg2-5.json"))


def test_restriction_weight_and_prec():
    f = _load("deg2-5.json")
    r = restriction_qexp(f, 2, 6)
    assert r.weight == 4 and r.prec == 6
    assert r.coeffs == eisenstein(4, 6).coeffs  # dim M_4 = 1 forces E_4
