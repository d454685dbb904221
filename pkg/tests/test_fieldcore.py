"""Tests for exact field arithmetic, embeddings, and record ingestion."""

import random
from fractions import Fraction
from pathlib import Path

import pytest

from restrictia.errors import (BasisNotMaximal, BasisNotRing, DiscMismatch,
                               FieldMismatch, NotTotallyReal,
                               ReduciblePolynomial, ZeroInput)
from restrictia.fieldcore import (charpoly, embed, inverse_different_basis,
                                  is_totally_positive, load_field, mul)

FIELDS = Path(__file__).resolve().parent.parent / "fields"

Q5 = {"label": "q5", "degree": 2, "disc": 5, "poly": [-1, -1, 1],
      "integral_basis": [["1", "0"], ["0", "1"]]}
QQ = {"label": "q", "degree": 1, "disc": 1, "poly": [-1, 1],
      "integral_basis": [["1"]]}


def test_load_golden_quadratic():
    f = load_field(Q5)
    assert f.degree == 2 and f.disc == 5
    th = f.theta()
    assert (th * th).coords == (Fraction(1), Fraction(1))


def test_load_rational_field():
    f = load_field(QQ)
    assert f.degree == 1 and f.disc == 1
    assert f.theta().coords == (Fraction(1),)


def test_load_rejections():
    bad = dict(Q5)
    bad["disc"] = 6
    with pytest.raises(DiscMismatch):
        load_field(bad)
    bad = dict(Q5)
    bad["poly"] = [1, -2, 1]
    with pytest.raises(ReduciblePolynomial):
        load_field(bad)
    bad = dict(Q5)
    bad["poly"] = [1, 0, 1]
    bad["disc"] = -4
    with pytest.raises(NotTotallyReal):
        load_field(bad)
    bad = dict(Q5)
    bad["integral_basis"] = [["1", "0"], ["0", "1/2"]]
    with pytest.raises(BasisNotRing):
        load_field(bad)
    bad = dict(Q5)
    bad["integral_basis"] = [["0", "1"], ["1", "0"]]
    with pytest.raises(BasisNotRing):
        load_field(bad)  # first basis element must be 1


def test_load_rejects_nonmaximal_ring():
    # Z[sqrt(5)] is a ring of index 2 in the maximal order
    bad = {"label": "x", "degree": 2, "disc": 20, "poly": [-5, 0, 1],
           "integral_basis": [["1", "0"], ["0", "1"]]}
    with pytest.raises(BasisNotMaximal):
        load_field(bad)


def test_load_nontrivial_index_basis():
    # index-3 maximal order where the power basis is not maximal
    rec = {"label": "x4525", "degree": 4, "disc": 4525,
           "poly": [9, 3, -7, -1, 1],
           "integral_basis": [["1", "0", "0", "0"], ["0", "1", "0", "0"],
                              ["0", "0", "1", "0"],
                              ["0", "2/3", "2/3", "1/3"]]}
    f = load_field(rec)
    assert f.disc == 4525


def test_mul_against_defining_relation():
    f = load_field(Q5)
    th = f.theta()
    one = f.one()
    assert mul(th, th).coords == (1, 1)
    assert mul(th, one) == th
    assert ((one + th) * (one - th)).coords == (0, -1)  # 1 - theta^2 = -theta


def test_field_mismatch():
    a = load_field(Q5).theta()
    b = load_field(QQ).one()
    with pytest.raises(FieldMismatch):
        mul(a, b)


def test_charpoly():
    f = load_field(Q5)
    assert charpoly(f.one()) == [1, -2, 1]  # (x-1)^2
    assert charpoly(f.theta()) == [1, -1, -1]


def test_total_positivity():
    f = load_field(Q5)
    th = f.theta()
    assert is_totally_positive(f.one())
    assert not is_totally_positive(th)  # one embedding is negative
    assert is_totally_positive(2 * f.one() + th)
    with pytest.raises(ZeroInput):
        is_totally_positive(f.zero())


def test_trace_dual_defining_property():
    for name in ("deg2-5.json", "deg3-49.json", "deg4-725.json"):
        f = load_field(FIELDS / name)
        dual = inverse_different_basis(f)
        for i in range(f.degree):
            for j in range(f.degree):
                tr = (f.omega(i) * dual[j]).trace()
                assert tr == (1 if i == j else 0)


def test_inverse_different_index_is_disc():
    # [d^-1 : O] = disc, read off the dual coordinate matrix determinant
    from restrictia.linalg import clear_denominators, det_bareiss
    for name in ("deg2-5.json", "deg4-725.json", "deg4-1125.json"):
        f = load_field(FIELDS / name)
        dual = inverse_different_basis(f)
        mat = [list(d.coords) for d in dual]
        num, den = clear_denominators(mat)
        det = Fraction(det_bareiss(num), den ** f.degree)
        assert abs(1 / det) == f.disc


def test_embed_quadratic_enclosures():
    f = load_field(Q5)
    e = embed(f, 64)
    (c0, r0), (c1, r1) = e.apply(f.theta())
    assert c0 < c1  # ascending place order
    sqrt5 = Fraction(223606797749978969640, 10 ** 20)
    assert abs(c1 - (1 + sqrt5) / 2) < Fraction(1, 10 ** 15)
    assert r0 <= Fraction(1, 2 ** 63) and r1 <= Fraction(1, 2 ** 63)


def test_embed_refinement_halves_radius():
    f = load_field(FIELDS / "deg4-725.json")
    e64 = embed(f, 64)
    e128 = embed(f, 128)
    for r64, r128 in zip(e64.entries, e128.entries):
        for (_, rad64), (_, rad128) in zip(r64, r128):
            assert rad128 * 2 <= rad64 or rad64 == 0


def test_embed_product_matches_norm():
    f = load_field(FIELDS / "deg3-49.json")
    e = embed(f, 96)
    th = f.theta()
    prod = Fraction(1)
    slack = Fraction(0)
    for c, r in e.apply(th):
        slack = slack * abs(c) + r * (abs(prod) + slack)
        prod *= c
    assert abs(prod - th.norm()) <= slack + Fraction(1, 2 ** 40)


def test_trace_norm_properties_random():
    rng = random.Random(7)
    f = load_field(FIELDS / "deg4-725.json")
    d = f.degree
    for _ in range(1000):
        a = f.element([rng.randint(-9, 9) for _ in range(d)])
        b = f.element([rng.randint(-9, 9) for _ in range(d)])
        assert (a + b).trace() == a.trace() + b.trace()
        assert (a * b).norm() == a.norm() * b.norm()


def test_total_positivity_matches_embeddings_random():
    rng = random.Random(11)
    f = load_field(FIELDS / "deg3-148.json")
    e = embed(f, 96)
    for _ in range(1000):
        a = f.element([rng.randint(-4, 4) for _ in range(f.degree)])
        if a.is_zero():
            continue
        enclosures = e.apply(a)
        # every enclosure must be sign-definite at this precision
        numeric = all(c - r > 0 for c, r in enclosures)
        definite = all(abs(c) > r for c, r in enclosures)
        assert definite, "enclosure straddles zero; raise prec"
        assert is_totally_positive(a) == numeric


def test_loaded_corpus_fields_validate():
    # every bundled record passes the full loader (spot degrees)
    for name in ("deg1-1.json", "deg2-8.json", "deg3-81.json",
                 "deg3-257.json", "deg4-2000.json", "deg5-24217.json"):
        f = load_field(FIELDS / name)
        assert f.degree == int(f.label[3])
