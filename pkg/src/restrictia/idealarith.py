"""Fractional ideals in Hermite normal form, prime splitting by
decomposing O_F/p as a commutative algebra, valuations, the ideal
divisor-sum sigma_r, and counts of integral ideals by norm."""

from fractions import Fraction
from math import gcd

import sympy

from .errors import (FieldMismatch, NotIntegral, NotPrime, ZeroIdeal)
from .fieldcore import AlgNum
from .linalg import (det_bareiss, hnf_rows, nullspace_mod, rref_mod,
                     solve_upper_int)

_X = sympy.Symbol("x")


class IdealHNF:
    """Fractional ideal: (1/denom) times the lattice spanned by the rows
    of an upper-triangular integer HNF matrix over the integral basis."""

    __slots__ = ("field", "hnf", "denom")

    def __init__(self, field, hnf, denom=1):
        if denom <= 0:
            raise ZeroIdeal("denominator must be positive")
        g = denom
        for row in hnf:
            for x in row:
                g = gcd(g, x)
        self.field = field
        self.hnf = tuple(tuple(x // g for x in row) for row in hnf)
        self.denom = denom // g

    @property
    def det(self):
        d = 1
        for i in range(len(self.hnf)):
            d *= self.hnf[i][i]
        return d

    @property
    def norm(self):
        return Fraction(self.det, self.denom ** self.field.degree)

    def is_integral(self):
        return self.denom == 1

    def rows_as_elements(self):
        return [AlgNum(self.field, [Fraction(x, self.denom) for x in row])
                for row in self.hnf]

    def contains(self, other):
        """Lattice containment: every generator of other lies in self."""
        scale = self.denom
        for row in other.hnf:
            v = [x * scale for x in row]
            if any(x % other.denom for x in v):
                num = [Fraction(x, other.denom) for x in v]
                den = 1
                for f in num:
                    den = den * f.denominator // gcd(den, f.denominator)
                if den != 1:
                    return False
                v = [int(f) for f in num]
            else:
                v = [x // other.denom for x in v]
            if solve_upper_int([list(r) for r in self.hnf], v) is None:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, IdealHNF):
            return NotImplemented
        return self.field.label == other.field.label and \
            self.hnf == other.hnf and self.denom == other.denom

    def __hash__(self):
        return hash((self.field.label, self.hnf, self.denom))

    def __repr__(self):
        return f"IdealHNF({self.field.label}, denom={self.denom}, " \
               f"rows={[list(r) for r in self.hnf]})"


class PrimeIdeal:
    """Prime of O_F above a rational prime, with its (e, f) data."""

    __slots__ = ("p", "e", "f", "ideal", "_powers")

    def __init__(self, p, e, f, ideal):
        self.p = p
        self.e = e
        self.f = f
        self.ideal = ideal
        self._powers = {0: unit_ideal(ideal.field), 1: ideal}

    def power(self, k):
        if k not in self._powers:
            self._powers[k] = ideal_mul(self.power(k - 1), self.ideal)
        return self._powers[k]

    def __repr__(self):
        return f"PrimeIdeal(p={self.p}, e={self.e}, f={self.f})"


def unit_ideal(field):
    d = field.degree
    return IdealHNF(field, [[1 if i == j else 0 for j in range(d)]
                            for i in range(d)], 1)


def _check_field(a, b):
    if a.field.label != b.field.label:
        raise FieldMismatch(f"{a.field.label} vs {b.field.label}")


def ideal_from_generators(field, gens):
    """HNF of the O_F-module generated by the given field elements."""
    d = field.degree
    rows = []
    den = 1
    for g in gens:
        for i in range(d):
            prod = (g * field.omega(i)).coords
            for c in prod:
                den = den * c.denominator // gcd(den, c.denominator)
            rows.append(prod)
    introws = [[int(c * den) for c in row] for row in rows]
    h = hnf_rows(introws)
    if len(h) < d:
        raise ZeroIdeal("generators span a degenerate lattice")
    return IdealHNF(field, h, den)


def principal_ideal(alpha):
    return ideal_from_generators(alpha.field, [alpha])


def ideal_mul(a, b):
    """Product ideal via pairwise generator products."""
    _check_field(a, b)
    field = a.field
    d = field.degree
    arows = [AlgNum(field, row) for row in a.hnf]
    brows = [AlgNum(field, row) for row in b.hnf]
    rows = []
    for x in arows:
        for y in brows:
            rows.append([int(c) for c in (x * y).coords])
    h = hnf_rows(rows)
    return IdealHNF(field, h, a.denom * b.denom)


def ideal_add(a, b):
    """Sum (gcd) of two fractional ideals."""
    _check_field(a, b)
    den = a.denom * b.denom // gcd(a.denom, b.denom)
    rows = [[x * (den // a.denom) for x in row] for row in a.hnf]
    rows += [[x * (den // b.denom) for x in row] for row in b.hnf]
    return IdealHNF(a.field, hnf_rows(rows), den)


def ideal_inverse(a):
    """Inverse fractional ideal {x : x a <= O_F}, via the dual of the
    lattice spanned by the multiplication matrices of the generators."""
    from .linalg import frac_inv
    field = a.field
    d = field.degree
    rows = []
    for g in a.rows_as_elements():
        m = g.mult_matrix()
        # constraint functionals: x g in O_F iff every row of the
        # multiplication matrix pairs integrally with x
        rows.extend([list(r) for r in m])
    den = 1
    for row in rows:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    introws = [[int(x * den) for x in row] for row in rows]
    h = hnf_rows(introws)
    hinv = frac_inv([[Fraction(x) for x in row] for row in h])
    dual = [[den * hinv[i][j] for i in range(d)] for j in range(d)]
    den2 = 1
    for row in dual:
        for x in row:
            den2 = den2 * x.denominator // gcd(den2, x.denominator)
    intdual = [[int(x * den2) for x in row] for row in dual]
    return IdealHNF(field, hnf_rows(intdual), den2)


def different_ideal(field):
    """The different, as inverse of the trace-dual lattice; its norm is
    the field discriminant."""
    from .fieldcore import inverse_different_basis
    inv_diff = ideal_from_generators(field, inverse_different_basis(field))
    return ideal_inverse(inv_diff)


def inverse_different(field):
    from .fieldcore import inverse_different_basis
    return ideal_from_generators(field, inverse_different_basis(field))


def _prime_cache(field):
    with field._lock:
        cache = getattr(field, "_prime_split_cache", None)
        if cache is None:
            cache = {}
            field._prime_split_cache = cache
    return cache


def _transpose(m):
    return [list(col) for col in zip(*m)]


def _algebra_ops(field, p):
    """Multiplication and power maps in A = O_F / p O_F."""
    d = field.degree
    t = field.mul_table

    def amul(u, v):
        out = [0] * d
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        ab = a * b
                        tij = t[i][j]
                        for k in range(d):
                            if tij[k]:
                                out[k] = (out[k] + ab * tij[k]) % p
        return out

    def apow(u, e):
        acc = [1] + [0] * (d - 1)
        base = list(u)
        while e:
            if e & 1:
                acc = amul(acc, base)
            base = amul(base, base)
            e >>= 1
        return acc

    return amul, apow


def _row_space_mod(rows, p):
    """Reduced basis of the row space over F_p."""
    r, _ = rref_mod([list(row) for row in rows], p)
    return [row for row in r if any(row)]


def _in_span_mod(rows, v, p):
    aug = [list(row) for row in rows] + [list(v)]
    return len(_row_space_mod(aug, p)) == len(_row_space_mod(rows, p))


def _minpoly_mod(z, ident, amul, p):
    """Monic minimal polynomial of z over F_p, coefficients ascending."""
    powers = [list(ident)]
    cur = list(ident)
    while True:
        cur = amul(cur, z)
        if _in_span_mod(powers, cur, p):
            break
        powers.append(list(cur))
    k = len(powers)
    from .linalg import solve_mod
    mat = _transpose(powers)
    sol = solve_mod(mat, list(cur), p)
    assert sol is not None, "dependence must be solvable"
    return [(-c) % p for c in sol] + [1], powers


def _split_semisimple(basis, ident, amul, apow, p):
    """Primitive idempotents of a (semisimple, commutative) subalgebra,
    returned as (idempotent vector, block dimension) pairs."""
    k = len(basis)
    frob = [apow(b, p) for b in basis]
    diff = [[(frob[i][j] - basis[i][j]) % p for j in range(len(ident))]
            for i in range(k)]
    fix = nullspace_mod(_transpose(diff), p)
    if len(fix) <= 1:
        return [(ident, k)]
    z = None
    for c in fix:
        cand = [0] * len(ident)
        for ci, b in zip(c, basis):
            if ci:
                for j in range(len(ident)):
                    cand[j] = (cand[j] + ci * b[j]) % p
        if not _in_span_mod([ident], cand, p):
            z = cand
            break
    assert z is not None, "fixed space exceeds scalars, a witness exists"
    mu, _ = _minpoly_mod(z, ident, amul, p)
    poly = sympy.Poly(list(reversed(mu)), _X, modulus=p)
    roots = []
    for fac, mult in poly.factor_list()[1]:
        assert fac.degree() == 1 and mult == 1, \
            "Frobenius-fixed element must split into distinct linear factors"
        coeffs = fac.all_coeffs()
        lead = int(coeffs[0]) % p
        const = int(coeffs[-1]) % p if fac.degree() >= 1 else 0
        root = (-const * pow(lead, -1, p)) % p
        roots.append(root)
    out = []
    for c in roots:
        # CRT idempotent: prod_{c' != c} (z - c') / (c - c')
        eps = list(ident)
        scale = 1
        for c2 in roots:
            if c2 == c:
                continue
            shifted = [(zj - c2 * ij) % p for zj, ij in zip(z, ident)]
            eps = amul(eps, shifted)
            scale = scale * ((c - c2) % p) % p
        inv = pow(scale, -1, p)
        eps = [x * inv % p for x in eps]
        block = _row_space_mod([amul(eps, b) for b in basis], p)
        out.extend(_split_semisimple(block, eps, amul, apow, p))
    return out


def factor_prime(field, p):
    """Complete splitting of p O_F into primes with (e, f) data, by
    decomposing the algebra O_F/p into local factors."""
    if not sympy.isprime(p):
        raise NotPrime(f"{p} is not prime")
    cache = _prime_cache(field)
    if p in cache:
        return cache[p]
    d = field.degree
    amul, apow = _algebra_ops(field, p)
    q = 1
    while q < d:
        q *= p
    ident = [1] + [0] * (d - 1)
    unit_vecs = [[1 if j == i else 0 for j in range(d)] for i in range(d)]
    frob = [apow(v, q) for v in unit_vecs]
    radical = [[int(x) % p for x in v]
               for v in nullspace_mod(_transpose(frob), p)]
    # semisimple quotient handled through idempotents computed inside A:
    # find idempotents of A/rad, then Hensel-lift them into A
    if radical:
        # quotient basis: complete the radical to a basis of A
        rad_rr = _row_space_mod(radical, p)
        qbasis = []
        span = [list(r) for r in rad_rr]
        for v in unit_vecs:
            if not _in_span_mod(span, v, p):
                qbasis.append(v)
                span.append(v)
                span = _row_space_mod(span, p)
    else:
        rad_rr = []
        qbasis = unit_vecs

    # multiplication in B = A/rad via coordinates over (qbasis mod rad)
    from .linalg import solve_mod
    bmat = _transpose([list(r) for r in qbasis] + [list(r) for r in rad_rr])

    def project(v):
        sol = solve_mod([row[:] for row in bmat], list(v), p)
        assert sol is not None
        return [s % p for s in sol[:len(qbasis)]]

    def blift(c):
        out = [0] * d
        for ci, b in zip(c, qbasis):
            if ci:
                for j in range(d):
                    out[j] = (out[j] + ci * b[j]) % p
        return out

    def bmul(u, v):
        return project(amul(blift(u), blift(v)))

    def bpow(u, e):
        acc = project(ident)
        base = list(u)
        while e:
            if e & 1:
                acc = bmul(acc, base)
            base = bmul(base, base)
            e >>= 1
        return acc

    k = len(qbasis)
    bident = project(ident)
    bbasis = [[1 if j == i else 0 for j in range(k)] for i in range(k)]
    blocks = _split_semisimple(bbasis, bident, bmul, bpow, p)

    primes = []
    for eps_b, f in blocks:
        # Hensel-lift the idempotent from B into A
        e_hat = blift(eps_b)
        for _ in range(8):
            sq = amul(e_hat, e_hat)
            if sq == e_hat:
                break
            cube = amul(sq, e_hat)
            e_hat = [(3 * a - 2 * b) % p for a, b in zip(sq, cube)]
        assert amul(e_hat, e_hat) == e_hat, "idempotent lift must converge"
        # local dimension e*f = dim A e_hat
        loc = _row_space_mod([amul(v, e_hat) for v in unit_vecs], p)
        ef = len(loc)
        assert ef % f == 0
        e = ef // f
        # the prime: kernel of x -> B-coords of x*e_hat (radical dies in
        # the projection, the other blocks die against e_hat)
        maps = [project(amul(v, e_hat)) for v in unit_vecs]
        kern = nullspace_mod(_transpose(maps), p)
        rows = [[p if j == i else 0 for j in range(d)] for i in range(d)]
        rows += [[int(x) % p for x in v] for v in kern]
        h = hnf_rows(rows)
        ideal = IdealHNF(field, h, 1)
        assert ideal.det == p ** f, f"prime norm {ideal.det} != {p}^{f}"
        primes.append(PrimeIdeal(p, e, f, ideal))
    assert sum(pr.e * pr.f for pr in primes) == d, "sum e_i f_i = degree"
    primes.sort(key=lambda pr: (pr.f, pr.e, pr.ideal.hnf))
    cache[p] = primes
    return primes


def valuation(a, prime):
    """Exact P-adic valuation of a fractional ideal (negative allowed)."""
    num = IdealHNF(a.field, [list(r) for r in a.hnf], 1)
    vden = 0
    if a.denom > 1:
        dd = a.denom
        while dd % prime.p == 0:
            dd //= prime.p
            vden += 1
    v = 0
    while prime.power(v + 1).contains(num):
        v += 1
    return v - vden * prime.e


def ideal_signature(a):
    """Sorted tuple of (Nm(P), v_P(a)) over primes dividing a."""
    if not a.is_integral():
        raise NotIntegral("ideal_signature needs an integral ideal")
    sig = []
    for p in sorted(sympy.factorint(a.det)):
        for prime in factor_prime(a.field, p):
            v = valuation(a, prime)
            if v:
                sig.append((prime.p ** prime.f, v))
    return tuple(sig)


def _omega_mats(field):
    """Integer multiplication matrices of the integral basis (cached)."""
    with field._lock:
        mats = getattr(field, "_omega_mats", None)
    if mats is None:
        d = field.degree
        mats = []
        for j in range(d):
            cols = [(field.omega(j) * field.omega(i)).coords
                    for i in range(d)]
            mats.append([[int(cols[i][r]) for i in range(d)]
                         for r in range(d)])
        with field._lock:
            field._omega_mats = mats
    return mats


def _invdiff_power_lattice(field, prime, m):
    """Cached (rows, denom) of the lattice P^m d_F^{-1}."""
    with field._lock:
        cache = getattr(field, "_invdiff_lattices", None)
        if cache is None:
            cache = {}
            field._invdiff_lattices = cache
    key = (prime.ideal.hnf, m)
    if key not in cache:
        lat = ideal_mul(prime.power(m), inverse_different(field))
        cache[key] = ([list(r) for r in lat.hnf], lat.denom)
    return cache[key]


def principal_different_signature(field, nu):
    """Signature of (nu) d_F computed element-wise: exact norm from an
    integer determinant, valuations by membership in P^m d_F^{-1}."""
    d = field.degree
    coords = nu.coords
    den = 1
    for c in coords:
        den = den * c.denominator // gcd(den, c.denominator)
    w = [int(c * den) for c in coords]
    mats = _omega_mats(field)
    mint = [[sum(w[j] * mats[j][r][i] for j in range(d)) for i in range(d)]
            for r in range(d)]
    nm = Fraction(det_bareiss(mint), den ** d)
    na = abs(nm) * abs(field.disc)
    if na == 0:
        raise ZeroIdeal("zero element")
    if na.denominator != 1:
        raise NotIntegral(f"(nu) d_F is not integral for nu = {nu}")
    na = int(na)
    sig = []
    for p, vp in sorted(sympy.factorint(na).items()):
        if vp == 1:
            # sum of f_P v_P over P | p equals 1, so exactly one P
            # contributes, with f = v = 1; no splitting needed
            sig.append((p, 1))
            continue
        acc = 0
        for prime in factor_prime(field, p):
            v = 0
            while v * prime.f < vp:
                rows, t = _invdiff_power_lattice(field, prime, v + 1)
                y = [c * t for c in coords]
                if any(x.denominator != 1 for x in y):
                    break
                if solve_upper_int([r[:] for r in rows],
                                   [int(x) for x in y]) is None:
                    break
                v += 1
            if v:
                sig.append((prime.p ** prime.f, v))
                acc += prime.f * v
        assert acc == vp, f"valuations at {p} do not account for the norm"
    return tuple(sig)


def sigma_r(a, r):
    """Divisor sum sigma_r over integral ideal divisors, multiplicative
    over the prime factorization."""
    total = 1
    for nm, v in ideal_signature(a):
        total *= sum(nm ** (r * m) for m in range(v + 1))
    return total


def _poly_disc(field):
    """Discriminant of the defining polynomial, cached on the field."""
    with field._lock:
        dp = getattr(field, "_poly_disc", None)
    if dp is None:
        poly = sympy.Poly(list(reversed(field.defining_poly)), _X)
        dp = int(sympy.discriminant(poly))
        with field._lock:
            field._poly_disc = dp
    return dp


def splitting_degrees(field, p):
    """Residue degrees of the primes above p, with multiplicity.

    Away from the defining polynomial's discriminant the degree pattern
    is read off the polynomial mod p (distinct-degree factorization);
    ramified and index-divisor primes fall back to the full splitting."""
    if _poly_disc(field) % p == 0:
        return [pr.f for pr in factor_prime(field, p)]
    d = field.degree
    if d == 1:
        return [1]
    desc = [c % p for c in reversed(field.defining_poly)]
    if p <= 13:
        # brute root count; a rootless squarefree cubic is irreducible
        r = sum(1 for t in range(p)
                if sum(c * pow(t, i, p) for i, c in
                       enumerate(field.defining_poly)) % p == 0)
        if d == 2:
            return [1, 1] if r == 2 else [2]
        if d == 3:
            return [1, 1, 1] if r == 3 else ([1, 2] if r == 1 else [3])
    if d == 2:
        aa, bb, cc = desc
        return [1, 1] if sympy.jacobi_symbol(bb * bb - 4 * aa * cc, p) == 1 \
            else [2]
    from sympy.polys.domains import ZZ
    from sympy.polys.galoistools import (gf_ddf_zassenhaus, gf_gcd,
                                         gf_pow_mod, gf_sub, gf_degree)
    if d == 3:
        xp = gf_pow_mod([1, 0], p, desc, p, ZZ)
        r = gf_degree(gf_gcd(gf_sub(xp, [1, 0], p, ZZ), desc, p, ZZ))
        return [1, 1, 1] if r == 3 else ([1, 2] if r == 1 else [3])
    out = []
    for g, dg in gf_ddf_zassenhaus(desc, p, ZZ):
        out.extend([dg] * (gf_degree(g) // dg))
    return sorted(out)


def ideal_count(field, nmax):
    """a_n = number of integral ideals of norm n, for n = 1..nmax."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    with field._lock:
        cached = getattr(field, "_ideal_count_cache", None)
    if cached is not None and len(cached) > nmax:
        return cached[1:nmax + 1]
    a = [0] * (nmax + 1)
    a[1] = 1
    for p in sympy.primerange(2, nmax + 1):
        fs = splitting_degrees(field, p)
        jmax = 0
        q = 1
        while q * p <= nmax:
            q *= p
            jmax += 1
        # c[j] = #{(m_i >= 0) : sum m_i f_i = j}, ideals of norm p^j
        c = [1] + [0] * jmax
        for f in fs:
            for j in range(f, jmax + 1):
                c[j] += c[j - f]
        # in place is safe: reads hit p-coprime indices, writes p-divisible
        # ones, and each multiple of p is written once, at j = v_p(m)
        q = p
        for j in range(1, jmax + 1):
            cj = c[j]
            if cj:
                for m in range(q, nmax + 1, q):
                    base = m // q
                    if base % p and a[base]:
                        a[m] += a[base] * cj
            q *= p
    with field._lock:
        field._ideal_count_cache = a
    return a[1:]
