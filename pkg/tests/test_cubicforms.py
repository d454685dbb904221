"""Binary cubic forms, reduction, the order correspondence, cusp classes."""

import json
import os
import random
from fractions import Fraction
from math import isqrt

import pytest
import sympy

from restrictia.cubicforms import (CubicForm, canonical_form, cusp_classes_csv,
                                   delone_faddeev_order, disc,
                                   enumerate_cusp_classes, enumerate_suborders,
                                   eta_coefficients, form_from_beta,
                                   gl2_canonical, hessian_P, reduce,
                                   subring_key, _box_forms, _roots_in_field)
from restrictia.errors import (BoxOverflow, NonpositiveDisc, NotARing,
                               NotGenerating)
from restrictia.fieldcore import load_field
from restrictia.idealarith import ideal_from_generators

FIELDS = os.path.join(os.path.dirname(__file__), "..", "fields")


def _load(label):
    with open(os.path.join(FIELDS, f"{label}.json")) as fh:
        return load_field(json.load(fh))


def _rand_form(rng, box=9):
    while True:
        f = CubicForm(rng.randint(-box, box), rng.randint(-box, box),
                      rng.randint(-box, box), rng.randint(-box, box))
        if disc(f) != 0:
            return f


def _rand_sl2(rng, words=10):
    g = ((1, 0), (0, 1))
    for _ in range(words):
        n = rng.randint(-3, 3)
        t = ((1, n), (0, 1)) if rng.random() < 0.6 else ((0, -1), (1, 0))
        g = ((g[0][0] * t[0][0] + g[0][1] * t[1][0],
              g[0][0] * t[0][1] + g[0][1] * t[1][1]),
             (g[1][0] * t[0][0] + g[1][1] * t[1][0],
              g[1][0] * t[0][1] + g[1][1] * t[1][1]))
    return g


def test_disc_and_hessian_reference():
    f = CubicForm(1, 0, -1, 0)
    assert disc(f) == 4
    assert hessian_P(f) == 3


def test_disc_matches_sympy_discriminant():
    rng = random.Random(7)
    x = sympy.Symbol("x")
    n = 0
    while n < 40:
        f = _rand_form(rng)
        if f.A == 0:
            continue  # dehomogenized poly drops degree, oracle mismatch
        n += 1
        expr = f.A * x ** 3 + f.B * x ** 2 + f.C * x + f.D
        assert disc(f) == sympy.discriminant(sympy.Poly(expr, x))


def test_compose_matches_substitution():
    rng = random.Random(11)
    x, y = sympy.symbols("x y")
    for _ in range(60):
        f = _rand_form(rng)
        (p, q), (r, s) = gam = ((rng.randint(-4, 4), rng.randint(-4, 4)),
                                (rng.randint(-4, 4), rng.randint(-4, 4)))
        g = f.compose(gam)
        expr = sympy.expand(f.A * (p * x + q * y) ** 3
                            + f.B * (p * x + q * y) ** 2 * (r * x + s * y)
                            + f.C * (p * x + q * y) * (r * x + s * y) ** 2
                            + f.D * (r * x + s * y) ** 3)
        diff = sympy.expand(g.A * x ** 3 + g.B * x ** 2 * y
                            + g.C * x * y ** 2 + g.D * y ** 3 - expr)
        assert diff == 0


def test_reduce_tracks_gamma_and_bounds_P():
    rng = random.Random(23)
    for _ in range(80):
        f = _rand_form(rng)
        if disc(f) <= 0:
            continue
        g = f.compose(_rand_sl2(rng))
        red, gam = reduce(g)
        assert red == g.compose(gam)
        p, q, r = (hessian_P(red),
                   red.B * red.C - 9 * red.A * red.D,
                   red.C ** 2 - 3 * red.B * red.D)
        assert abs(q) <= p <= r
        assert p * p <= disc(f)


def test_reduce_rejects_nonpositive_disc():
    with pytest.raises(NonpositiveDisc):
        reduce(CubicForm(1, 0, 1, 0))
    with pytest.raises(NonpositiveDisc):
        canonical_form(CubicForm(0, 0, 0, 1))


def test_canonical_form_is_class_invariant():
    rng = random.Random(31)
    for _ in range(500):
        f = _rand_form(rng, box=6)
        if disc(f) <= 0:
            continue
        g = f.compose(_rand_sl2(rng))
        assert canonical_form(g) == canonical_form(f)
        assert disc(g) == disc(f)


def test_form_from_beta_on_field_generators():
    for label in ("deg3-49", "deg3-81", "deg3-148", "deg3-169", "deg3-229",
                  "deg3-257"):
        F = _load(label)
        th = F.theta()
        f, a = form_from_beta(th)
        # theta is integral and generates F, so f is its monic minimal
        # polynomial homogenized
        assert a == 1 and f.A == 1
        assert disc(f) % F.disc == 0
        f7, a7 = form_from_beta(th + 7)
        assert a7 == 1  # translation keeps the leading coefficient
        fn, an = form_from_beta(th * Fraction(1, 2))
        from math import gcd
        cont = gcd(gcd(8, 4 * abs(f.B)), gcd(2 * abs(f.C), abs(f.D)))
        assert an == 8 // cont  # denominator 2^3 up to content


def test_form_from_beta_norm_identity():
    # |A_beta| = |Nm(c)| / Nm(Oc + Od) for any representation beta = d/c
    rng = random.Random(43)
    for label in ("deg3-49", "deg3-148"):
        F = _load(label)
        for _ in range(10):
            c = F.element([rng.randint(-5, 5) for _ in range(3)])
            d = F.element([rng.randint(-5, 5) for _ in range(3)])
            if c.is_zero() or d.is_zero():
                continue
            cinv_d = d * _invert(c)
            if all(x == 0 for x in cinv_d.coords[1:]):
                continue
            _, a = form_from_beta(cinv_d)
            nm = ideal_from_generators(F, [c, d]).norm
            assert Fraction(abs(a)) == abs(Fraction(c.norm())) / nm


def _invert(c):
    """1/c via the adjugate of the multiplication matrix."""
    from restrictia.linalg import frac_solve
    m = c.mult_matrix()
    one = [Fraction(1)] + [Fraction(0)] * (len(m) - 1)
    return c.field.element(frac_solve([row[:] for row in m], one))


def test_form_from_beta_rejects_rational():
    F = _load("deg3-49")
    with pytest.raises(NotGenerating):
        form_from_beta(F.element([Fraction(3, 2), 0, 0]))


def test_delone_faddeev_maximal_and_scaled():
    F = _load("deg3-49")
    th = F.theta()
    f, _ = form_from_beta(th)
    basis, m = delone_faddeev_order(f, th)
    assert m == 1
    assert disc(f) == F.disc
    # beta = theta/2 generates an order of index 8
    half = th * Fraction(1, 2)
    f8, a8 = form_from_beta(half)
    _, m8 = delone_faddeev_order(f8, half)
    assert (a8, m8) == (8, 8)
    assert disc(f8) == F.disc * 64


def test_delone_faddeev_rejects_wrong_root():
    F = _load("deg3-49")
    th = F.theta()
    f, _ = form_from_beta(th)
    with pytest.raises(NotARing):
        delone_faddeev_order(f, th + 1)


def _suborder_df_forms(F, max_index):
    """Each suborder's Delone-Faddeev form: normalize an HNF basis so uv
    is rational and read the form off the multiplication table."""
    w2, w3 = F.omega(1), F.omega(2)
    out = {}
    for a in range(1, max_index + 1):
        for c in range(1, max_index // a + 1):
            for b in range(c):
                u0 = w2 * a + w3 * b
                v0 = w3 * c

                def coords_in(e):
                    x, y, z = e.coords
                    if any(t.denominator != 1 for t in (x, y, z)):
                        return None
                    yy, r = divmod(int(y), a)
                    if r:
                        return None
                    zz, r = divmod(int(z) - yy * b, c)
                    if r:
                        return None
                    return int(x), yy, zz

                if any(coords_in(e) is None
                       for e in (u0 * u0, u0 * v0, v0 * v0)):
                    continue
                _, p, q = coords_in(u0 * v0)
                u, v = u0 - q, v0 - p
                _, mu, nu = coords_in(u * u)
                _, mv, nv = coords_in(v * v)
                f = CubicForm(nu, -mu, nv, -mv)
                assert disc(f) == F.disc * (a * c) ** 2
                out.setdefault(a * c, []).append(f)
    return out


@pytest.mark.parametrize("label", ["deg3-49", "deg3-148"])
def test_cusp_class_multiplicity_per_order(label):
    # classes fiber in groups of 2|Aut(O_F)| over isomorphism classes of
    # primitive orders; conjugate suborders share a fiber and orders of
    # shape Z + cR (imprimitive form) are never hit
    F = _load(label)
    aut = 3 if isqrt(F.disc) ** 2 == F.disc else 1
    classes = enumerate_cusp_classes(F, 10)
    oracle = _suborder_df_forms(F, 10)
    for m in range(1, 11):
        fibers = {}
        for cl in classes:
            if cl.order_index == m:
                fibers.setdefault(gl2_canonical(cl.form), []).append(cl)
        assert all(len(v) == 2 * aut for v in fibers.values())
        prim = {gl2_canonical(f) for f in oracle.get(m, [])
                if f.content() == 1}
        assert set(fibers) == prim


def test_cusp_class_exactness_and_embeddings():
    F = _load("deg3-229")
    classes = enumerate_cusp_classes(F, 6)
    assert classes, "the maximal order always contributes"
    for cl in classes:
        b = cl.beta
        f = cl.form
        val = ((b * f.A + f.B) * b + f.C) * b + f.D
        assert val.is_zero()
        assert disc(f) == F.disc * cl.order_index ** 2
        assert cl.A_beta == abs(f.A)
        for x in cl.embeddings:
            fx = ((f.A * x + f.B) * x + f.C) * x + f.D
            assert abs(fx) < 1e-6 * (1 + abs(x)) ** 3


def test_box_enumeration_matches_naive_sweep():
    # every SL2(Z) class of primitive forms with the target disc shows up
    F = _load("deg3-148")
    delta = F.disc
    box = {canonical_form(f).as_tuple() for f in _box_forms(delta, 10 ** 7)}
    naive = set()
    rng = range(-8, 9)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    f = CubicForm(a, b, c, d)
                    if f.content() == 1 and disc(f) == delta:
                        naive.add(canonical_form(f).as_tuple())
    assert naive <= box
    assert all(disc(CubicForm(*t)) == delta for t in box)


def test_box_overflow():
    with pytest.raises(BoxOverflow):
        _box_forms(49 * 64, budget=10)


def test_eta_matches_suborder_sweep():
    # Dirichlet series of zeta_F(s) zeta(2s) zeta(3s-1) / zeta_F(2s)
    # against brute-force HNF suborder counting, three splitting shapes
    for label in ("deg3-49", "deg3-148", "deg3-229"):
        F = _load(label)
        assert eta_coefficients(F, 20) == enumerate_suborders(F, 20)


def test_csv_dump_shape():
    F = _load("deg3-49")
    classes = enumerate_cusp_classes(F, 1)
    text = cusp_classes_csv(classes)
    lines = text.strip().split("\n")
    assert lines[0] == "m,A,B,C,D,A_beta,beta1,beta2,beta3"
    assert len(lines) == 1 + len(classes)
    assert all(len(line.split(",")) == 9 for line in lines[1:])


def test_roots_in_field_skips_degenerate_leading_coefficient():
    # forms divisible by y never produce a generator of the field
    F = _load("deg3-148")
    assert _roots_in_field(CubicForm(0, 1, 5, -1), F, None) == []


def test_subring_key_is_hermite_normal():
    F = _load("deg3-49")
    for cl in enumerate_cusp_classes(F, 10):
        a, b, c = subring_key(cl.form, cl.beta)
        assert a * c == cl.order_index
        assert 0 <= b < c or (c == 1 and b == 0)


def test_subring_key_invariant_under_translation_and_negation():
    # the Delone-Faddeev module only sees the subring, not the root
    F = _load("deg3-148")
    one = F.one()
    for cl in enumerate_cusp_classes(F, 6):
        key = subring_key(cl.form, cl.beta)
        shifted = cl.beta + one
        f1, _ = form_from_beta(shifted)
        assert subring_key(f1, shifted) == key
        flipped = cl.beta * (-1)
        f2, _ = form_from_beta(flipped)
        assert subring_key(f2, flipped) == key


def test_subring_fibers_galois_field():
    # three conjugate roots collapse onto one stable order, so fibers of
    # size 6 appear exactly at the sigma-stable subrings
    F = _load("deg3-49")
    classes = enumerate_cusp_classes(F, 12)
    keys = [(c.order_index,) + subring_key(c.form, c.beta) for c in classes]
    from collections import Counter
    cnt = Counter(keys)
    assert len(classes) == 18 and len(cnt) == 5
    assert Counter(cnt.values()) == {6: 2, 2: 3}
    assert cnt[(1, 1, 0, 1)] == 6
    # indices 4 and 9 carry only the orders Z + p O_F with imprimitive
    # forms, which no primitive enumeration reaches
    by_m = Counter(k[0] for k in cnt)
    assert by_m == {1: 1, 7: 1, 8: 3}
    eta = eta_coefficients(F, 12)
    assert all(by_m[m] <= eta[m] for m in by_m)


def test_subring_fibers_generic_field():
    # no field automorphism, so every module carries exactly two root
    # classes (the two sign directions)
    F = _load("deg3-148")
    classes = enumerate_cusp_classes(F, 12)
    keys = [(c.order_index,) + subring_key(c.form, c.beta) for c in classes]
    from collections import Counter
    cnt = Counter(keys)
    assert len(classes) == 12 and len(cnt) == 6
    assert set(cnt.values()) == {2}
    assert Counter(k[0] for k in cnt) == {1: 1, 2: 1, 5: 1, 8: 2, 10: 1}
