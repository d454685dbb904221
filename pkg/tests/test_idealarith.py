"""Tests for HNF ideal arithmetic, prime splitting, sigma_r, and counts."""

import random
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

from restrictia.errors import NotIntegral, NotPrime, ZeroIdeal
from restrictia.fieldcore import load_field
from restrictia.idealarith import (IdealHNF, different_ideal, factor_prime,
                                   ideal_add, ideal_count,
                                   ideal_from_generators, ideal_inverse,
                                   ideal_mul, inverse_different,
                                   principal_ideal, sigma_r, unit_ideal,
                                   valuation)

FIELDS = Path(__file__).resolve().parent.parent / "fields"

Q5 = {"label": "q5", "degree": 2, "disc": 5, "poly": [-1, -1, 1],
      "integral_basis": [["1", "0"], ["0", "1"]]}
QQ = {"label": "q", "degree": 1, "disc": 1, "poly": [-1, 1],
      "integral_basis": [["1"]]}


@pytest.fixture(scope="module")
def q5():
    return load_field(Q5)


@pytest.fixture(scope="module")
def cubic49():
    return load_field(FIELDS / "deg3-49.json")


def test_unit_ideal_from_one(q5):
    a = ideal_from_generators(q5, [q5.one()])
    assert a == unit_ideal(q5)
    assert a.norm == 1


def test_principal_norm_matches_element_norm(q5):
    g = 2 * q5.theta() - q5.one()  # the square root of 5
    a = principal_ideal(g)
    assert a.norm == abs(g.norm()) == 5


def test_zero_ideal_rejected(q5):
    with pytest.raises(ZeroIdeal):
        ideal_from_generators(q5, [q5.zero()])


def test_fractional_ideal_from_dual_element(q5):
    from restrictia.fieldcore import inverse_different_basis
    nu = inverse_different_basis(q5)[1]
    a = ideal_from_generators(q5, [nu])
    assert a.denom > 1
    assert a.norm < 1


def test_ideal_mul_unit_and_norms(q5):
    rng = random.Random(3)
    for _ in range(200):
        g = q5.element([rng.randint(-9, 9), rng.randint(-9, 9)])
        if g.is_zero():
            continue
        a = principal_ideal(g)
        assert ideal_mul(a, unit_ideal(q5)) == a
        h = q5.element([rng.randint(-9, 9), rng.randint(-9, 9)])
        if h.is_zero():
            continue
        b = principal_ideal(h)
        assert ideal_mul(a, b).norm == a.norm * b.norm


def test_split_prime_product(q5):
    pr = factor_prime(q5, 11)
    assert len(pr) == 2 and all(p.e == 1 and p.f == 1 for p in pr)
    prod = ideal_mul(pr[0].ideal, pr[1].ideal)
    assert prod == principal_ideal(q5.element([11, 0]))


def test_different_ideals():
    qq = load_field(QQ)
    assert different_ideal(qq) == unit_ideal(qq)
    q5 = load_field(Q5)
    assert different_ideal(q5).norm == 5
    f725 = load_field(FIELDS / "deg4-725.json")
    assert different_ideal(f725).norm == 725


def test_inverse_different_inverts(q5):
    d = different_ideal(q5)
    dinv = inverse_different(q5)
    assert ideal_mul(d, dinv) == unit_ideal(q5)
    assert ideal_inverse(d) == dinv


def test_factor_prime_ramified_and_split(q5):
    p5 = factor_prime(q5, 5)
    assert len(p5) == 1 and p5[0].e == 2 and p5[0].f == 1
    p11 = factor_prime(q5, 11)
    assert [(p.e, p.f) for p in p11] == [(1, 1), (1, 1)]
    p2 = factor_prime(q5, 2)
    assert [(p.e, p.f) for p in p2] == [(1, 2)]
    with pytest.raises(NotPrime):
        factor_prime(q5, 6)


def test_factor_prime_fundamental_identity_all_fields():
    for name in ("deg2-12.json", "deg3-81.json", "deg4-1125.json",
                 "deg5-14641.json"):
        f = load_field(FIELDS / name)
        for p in sympy.primerange(2, 101):
            primes = factor_prime(f, p)
            assert sum(q.e * q.f for q in primes) == f.degree
            prod = unit_ideal(f)
            for q in primes:
                for _ in range(q.e):
                    prod = ideal_mul(prod, q.ideal)
            pid = principal_ideal(f.element([p] + [0] * (f.degree - 1)))
            assert prod == pid


def test_factor_prime_kummer_cross_check(cubic49):
    # away from index divisors the shape must match factoring the
    # defining polynomial mod p
    x = sympy.Symbol("x")
    desc = cubic49.defining_poly[::-1]
    for p in sympy.primerange(2, 60):
        shape = sorted((e, g.degree())
                       for g, e in sympy.Poly(desc, x,
                                              modulus=p).factor_list()[1])
        ours = sorted((q.e, q.f) for q in factor_prime(cubic49, p))
        assert ours == shape, p


def test_valuation_basics(q5):
    P = factor_prime(q5, 5)[0]
    assert valuation(unit_ideal(q5), P) == 0
    assert valuation(P.power(3), P) == 3
    # negative valuation on a fractional ideal
    five = principal_ideal(q5.element([5, 0]))
    inv = ideal_inverse(five)
    assert valuation(inv, P) == -2


def test_valuation_reconstructs_ideal(q5):
    rng = random.Random(9)
    for _ in range(25):
        g = q5.element([rng.randint(-20, 20), rng.randint(-20, 20)])
        if g.is_zero():
            continue
        a = principal_ideal(g)
        n = int(a.norm)
        prod = unit_ideal(q5)
        for p in sympy.factorint(n):
            for P in factor_prime(q5, p):
                v = valuation(a, P)
                assert v >= 0
                prod = ideal_mul(prod, P.power(v))
        assert prod == a


def _brute_divisors(a):
    """All divisors of an integral ideal, by brute force.

    In a Dedekind domain every ideal b containing a equals a + xO for
    some x, so sweeping representatives of O/a finds every divisor."""
    field = a.field
    d = field.degree
    diag = [a.hnf[i][i] for i in range(d)]
    seen = {a}
    idx = [0] * d
    while True:
        i = 0
        while i < d and idx[i] + 1 == diag[i]:
            idx[i] = 0
            i += 1
        if i == d:
            break
        idx[i] += 1
        x = field.element(list(idx))
        seen.add(ideal_add(a, principal_ideal(x)))
    return seen


def _brute_sigma(divisors, r):
    return sum(b.det ** r for b in divisors)


def test_sigma_basics(q5):
    assert sigma_r(unit_ideal(q5), 5) == 1
    P = factor_prime(q5, 5)[0]
    assert sigma_r(P.ideal, 1) == 1 + 5
    P2 = factor_prime(q5, 2)[0]
    assert sigma_r(P2.ideal, 1) == 1 + 4  # inert two has norm 4
    with pytest.raises(NotIntegral):
        sigma_r(inverse_different(q5), 1)


def test_sigma_against_brute_force(q5, cubic49):
    rng = random.Random(17)
    cases = []
    for field in (q5, cubic49):
        tried = 0
        while len([c for c in cases if c[0] is field]) < 12 and tried < 200:
            tried += 1
            g = field.element([rng.randint(-6, 6)
                               for _ in range(field.degree)])
            if g.is_zero():
                continue
            a = principal_ideal(g)
            if 1 < a.det <= 2000:
                cases.append((field, a))
    assert len(cases) >= 16
    for field, a in cases:
        divisors = _brute_divisors(a)
        for r in (0, 1, 3):
            assert sigma_r(a, r) == _brute_sigma(divisors, r)


def test_sigma_multiplicative_on_coprime(q5):
    a = factor_prime(q5, 11)[0].ideal
    b = ideal_mul(factor_prime(q5, 5)[0].ideal,
                  factor_prime(q5, 2)[0].ideal)
    assert ideal_add(a, b) == unit_ideal(q5)  # coprime
    ab = ideal_mul(a, b)
    for r in (1, 2, 5):
        assert sigma_r(ab, r) == sigma_r(a, r) * sigma_r(b, r)


def test_ideal_count_quadratic_matches_character_convolution(q5):
    chi = {0: 0, 1: 1, 2: -1, 3: -1, 4: 1}
    n = 60
    counts = ideal_count(q5, n)
    oracle = [sum(chi[d % 5] for d in sympy.divisors(m))
              for m in range(1, n + 1)]
    assert counts == oracle


def test_ideal_count_rationals():
    qq = load_field(QQ)
    assert ideal_count(qq, 15) == [1] * 15
    assert ideal_count(qq, 1) == [1]


def test_hnf_canonical(q5):
    # same ideal from different generating sets gives identical matrices
    g = q5.element([7, 3])
    a = principal_ideal(g)
    b = ideal_from_generators(q5, [g * q5.theta(), g * (q5.one() + q5.theta()),
                                   g * q5.element([2, 1])])
    # theta and 1+theta are units, so these generate the same ideal
    assert a.hnf == b.hnf and a.denom == b.denom
