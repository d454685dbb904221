"""Exact arithmetic in a totally real number field given by an ingested
integral basis: elements, trace form, total positivity, trace-dual basis,
and certified real embeddings."""

import json
import threading
from fractions import Fraction
from math import isqrt

import sympy

from .errors import (BasisNotMaximal, BasisNotRing, DiscMismatch,
                     FieldMismatch, NotTotallyReal, PrecisionUnreachable,
                     ReduciblePolynomial, ZeroInput)
from .linalg import (charpoly as mat_charpoly, det_bareiss, frac_inv,
                     hnf_rows, mat_mul, nullspace_mod)

_X = sympy.Symbol("x")


class FieldData:
    """Immutable presentation of a totally real field by an integral basis.

    defining_poly is constant-first; integral_basis rows are coordinates of
    the basis elements over the power basis of a root theta.
    """

    def __init__(self, label, degree, disc, defining_poly, integral_basis,
                 mul_table):
        self.label = label
        self.degree = degree
        self.disc = disc
        self.defining_poly = list(defining_poly)
        self.integral_basis = [list(r) for r in integral_basis]
        self.mul_table = mul_table
        self._embed_cache = {}
        self._lock = threading.Lock()
        self._theta_coords = None

    def element(self, coords):
        return AlgNum(self, coords)

    def zero(self):
        return AlgNum(self, [0] * self.degree)

    def one(self):
        return AlgNum(self, [1] + [0] * (self.degree - 1))

    def omega(self, i):
        return AlgNum(self, [1 if j == i else 0 for j in range(self.degree)])

    def theta(self):
        if self._theta_coords is None:
            d = self.degree
            pow_theta = [Fraction(1) if k == 1 else Fraction(0)
                         for k in range(d)]
            if d == 1:
                # theta is the rational root itself
                pow_theta = [Fraction(-self.defining_poly[0])]
            mat = [[self.integral_basis[j][i] for j in range(d)]
                   for i in range(d)]
            from .linalg import frac_solve
            self._theta_coords = frac_solve(mat, pow_theta)
        return AlgNum(self, self._theta_coords)

    def __repr__(self):
        return f"FieldData({self.label}, d={self.degree}, D={self.disc})"


class AlgNum:
    """Field element as exact rational coordinates over the integral basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        if len(coords) != field.degree:
            raise ValueError("coordinate length mismatch")
        self.field = field
        self.coords = tuple(Fraction(c) for c in coords)

    def _check(self, other):
        if self.field is not other.field and \
                (self.field.label != other.field.label or
                 self.field.defining_poly != other.field.defining_poly):
            raise FieldMismatch(f"{self.field.label} vs {other.field.label}")

    def __add__(self, other):
        if not isinstance(other, AlgNum):
            other = _from_rational(self.field, other)
        self._check(other)
        return AlgNum(self.field,
                      [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        if not isinstance(other, AlgNum):
            other = _from_rational(self.field, other)
        self._check(other)
        return AlgNum(self.field,
                      [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return AlgNum(self.field, [-a for a in self.coords])

    def __mul__(self, other):
        if not isinstance(other, AlgNum):
            return AlgNum(self.field,
                          [a * Fraction(other) for a in self.coords])
        self._check(other)
        d = self.field.degree
        t = self.field.mul_table
        out = [Fraction(0)] * d
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                ab = a * b
                tij = t[i][j]
                for k in range(d):
                    if tij[k]:
                        out[k] += ab * tij[k]
        return AlgNum(self.field, out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __eq__(self, other):
        if not isinstance(other, AlgNum):
            return NotImplemented
        return self.field.label == other.field.label and \
            self.coords == other.coords

    def __hash__(self):
        return hash((self.field.label, self.coords))

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coords)

    def mult_matrix(self):
        """Matrix of multiplication by self, columns = images of omega_j."""
        d = self.field.degree
        t = self.field.mul_table
        m = [[Fraction(0)] * d for _ in range(d)]
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j in range(d):
                tij = t[i][j]
                for k in range(d):
                    if tij[k]:
                        m[k][j] += a * tij[k]
        return m

    def trace(self):
        m = self.mult_matrix()
        return sum(m[i][i] for i in range(self.field.degree))

    def norm(self):
        cp = charpoly(self)
        d = self.field.degree
        return cp[-1] * (-1) ** d

    def __repr__(self):
        return f"AlgNum({self.field.label}, {list(self.coords)})"


def _from_rational(field, r):
    return AlgNum(field, [Fraction(r)] + [0] * (field.degree - 1))


def mul(a, b):
    """Exact product of two elements of the same field."""
    if not isinstance(b, AlgNum):
        raise FieldMismatch("mul needs two field elements")
    return a * b


def charpoly(a):
    """Characteristic polynomial of multiplication by a, monic, listed
    descending: [1, c_1, ..., c_d]."""
    return mat_charpoly(a.mult_matrix())


def is_totally_positive(a):
    """Exact test that every real embedding of a is > 0.

    The charpoly of an element of a totally real field has only real roots,
    so they are all positive iff its coefficients strictly alternate in
    sign; this holds for any power of the minimal polynomial, so no
    squarefree reduction is needed.
    """
    if a.is_zero():
        raise ZeroInput("total positivity of 0 is undefined")
    cp = charpoly(a)
    for k in range(1, len(cp)):
        if cp[k] * (-1) ** k <= 0:
            return False
    return True


def _poly_power_sums(desc, upto):
    """Newton power sums s_0..s_upto of a monic polynomial, descending
    coefficients."""
    n = len(desc) - 1
    s = [Fraction(0)] * (upto + 1)
    s[0] = Fraction(n)
    for k in range(1, upto + 1):
        acc = sum(Fraction(desc[i]) * s[k - i]
                  for i in range(1, min(k - 1, n) + 1))
        s[k] = (Fraction(-k * desc[k]) if k <= n else Fraction(0)) - acc
    return s


def _power_basis_mulmod(u, v, desc):
    """Product of two power-basis coordinate vectors mod the defining
    polynomial (descending coefficient list desc)."""
    n = len(desc) - 1
    prod = [Fraction(0)] * (2 * n - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    prod[i + j] += a * b
    for deg in range(2 * n - 2, n - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = Fraction(0)
            for i in range(1, n + 1):
                prod[deg - i] -= c * desc[i]
    return prod[:n]


def trace_gram(defining_poly_desc, basis):
    """Gram matrix Tr(omega_i omega_j) from power sums of the root."""
    n = len(defining_poly_desc) - 1
    s = _poly_power_sums(defining_poly_desc, 2 * n - 2 if n > 1 else 0)
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            prod = _power_basis_mulmod(basis[i], basis[j],
                                       defining_poly_desc)
            tr = sum(c * s[k] for k, c in enumerate(prod))
            g[i][j] = g[j][i] = tr
    return g


def _dedekind_criterion(desc, p):
    """Dedekind's p-maximality test for the equation order of a monic
    integer polynomial (descending coefficients). True = p-maximal."""
    f = sympy.Poly(desc, _X)
    fp = sympy.Poly(desc, _X, modulus=p)
    factors = fp.factor_list()[1]
    gbar = sympy.Poly(1, _X, modulus=p)
    for fac, _ in factors:
        gbar = gbar * fac
    hbar = fp.quo(gbar)
    g = sympy.Poly([int(c) % p for c in gbar.all_coeffs()], _X)
    h = sympy.Poly([int(c) % p for c in hbar.all_coeffs()], _X)
    t = (g * h - f).quo(sympy.Poly(p, _X))
    tp = sympy.Poly(t.all_coeffs() or [0], _X, modulus=p)
    d = sympy.gcd(sympy.gcd(tp, gbar), hbar)
    return d.degree() <= 0


def _p_maximal(mul_table, p, degree):
    """True iff the order with the given integer multiplication table is
    p-maximal, by checking that the multiplier ring of its p-radical does
    not enlarge it (Pohst-Zassenhaus step)."""
    d = degree

    def amul(u, v):
        out = [0] * d
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        ab = a * b
                        for k in range(d):
                            out[k] = (out[k] + ab * mul_table[i][j][k]) % p
        return out

    q = 1
    while q < d:
        q *= p
    frob = []
    for i in range(d):
        v = [1 if j == i else 0 for j in range(d)]
        acc = [1] + [0] * (d - 1)
        e, base = q, v
        while e:
            if e & 1:
                acc = amul(acc, base)
            base = amul(base, base)
            e >>= 1
        frob.append(acc)
    rad = nullspace_mod([[frob[i][j] for i in range(d)] for j in range(d)],
                        p)
    gens = [[p if j == i else 0 for j in range(d)] for i in range(d)]
    gens += [[int(x) % p for x in v] for v in rad]
    jbasis = hnf_rows(gens)
    jinv = frac_inv([[Fraction(x) for x in row] for row in jbasis])
    constraints = []
    for g in jbasis:
        mg = []
        for i in range(d):
            wi = [1 if j == i else 0 for j in range(d)]
            gi = [0] * d
            for a_idx, a in enumerate(wi):
                if a:
                    for b_idx, b in enumerate(g):
                        if b:
                            ab = a * b
                            for k in range(d):
                                gi[k] += ab * mul_table[a_idx][b_idx][k]
            mg.append(gi)
        t = mat_mul([[Fraction(x) for x in row] for row in mg], jinv)
        for col in range(d):
            constraints.append([t[row][col] for row in range(d)])
    introws, dens = _clear(constraints)
    h = hnf_rows(introws)
    amat = [[Fraction(x, dens) for x in row] for row in h]
    dnew = _transpose(frac_inv(amat))
    num, den = _clear(dnew)
    dd = Fraction(det_bareiss(num), den ** d)
    return abs(dd) == 1


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _transpose(m):
    return [list(col) for col in zip(*m)]


def _clear(mat):
    den = 1
    for row in mat:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    return [[int(x * den) for x in row] for row in mat], den


def load_field(document):
    """Validate a field-data record and build FieldData.

    Accepts a dict or a path to a structured text record with keys label,
    degree, disc, poly (constant-first integers), integral_basis (rows of
    "p/q" strings). Every invariant is checked; failures raise."""
    if not isinstance(document, dict):
        with open(document) as fh:
            document = json.load(fh)
    label = document["label"]
    degree = int(document["degree"])
    disc = int(document["disc"])
    poly_cf = [int(c) for c in document["poly"]]
    if len(poly_cf) != degree + 1 or poly_cf[-1] != 1:
        raise ReduciblePolynomial(f"{label}: need a monic degree-{degree} "
                                  "polynomial, constant coefficient first")
    desc = poly_cf[::-1]
    p = sympy.Poly(desc, _X)
    if degree > 1 and not p.is_irreducible:
        raise ReduciblePolynomial(f"{label}: defining polynomial factors")
    nreal = sum(m for _, m in p.intervals()) if degree > 1 else 1
    if nreal != degree:
        raise NotTotallyReal(f"{label}: {nreal} real roots, need {degree}")

    basis = [[Fraction(str(c)) for c in row]
             for row in document["integral_basis"]]
    if len(basis) != degree or any(len(r) != degree for r in basis):
        raise BasisNotRing(f"{label}: basis must be {degree}x{degree}")
    if basis[0] != [Fraction(1)] + [Fraction(0)] * (degree - 1):
        raise BasisNotRing(f"{label}: first basis element must be 1")

    # multiplication table over the basis; integrality certifies a ring
    bmat = [[basis[j][i] for j in range(degree)] for i in range(degree)]
    try:
        binv = frac_inv(bmat)
    except ZeroDivisionError:
        raise BasisNotRing(f"{label}: basis is singular")
    mul_table = []
    for i in range(degree):
        row_i = []
        for j in range(degree):
            prod = _power_basis_mulmod(basis[i], basis[j], desc)
            coords = [sum(binv[r][c] * prod[c] for c in range(degree))
                      for r in range(degree)]
            if any(c.denominator != 1 for c in coords):
                raise BasisNotRing(f"{label}: omega_{i + 1} omega_{j + 1} "
                                   "leaves the lattice")
            row_i.append([int(c) for c in coords])
        mul_table.append(row_i)

    gram = trace_gram(desc, basis)
    if any(g.denominator != 1 for row in gram for g in row):
        raise BasisNotRing(f"{label}: trace form is not integral")
    det = det_bareiss([[int(g) for g in row] for row in gram])
    if det != disc:
        raise DiscMismatch(f"{label}: trace gram det {det} != recorded "
                           f"disc {disc}")

    # maximality at every prime that could hide an enlargement
    n = degree
    s = _poly_power_sums(desc, 2 * n - 2 if n > 1 else 0)
    hankel = [[s[i + j] for j in range(n)] for i in range(n)]
    polydisc = det_bareiss([[int(x) for x in row] for row in hankel])
    if polydisc % disc != 0:
        raise DiscMismatch(f"{label}: poly disc {polydisc} not divisible "
                           f"by {disc}")
    index2 = polydisc // disc
    index = isqrt(index2)
    if index * index != index2:
        raise DiscMismatch(f"{label}: index squared {index2} is not a "
                           "square")
    checked = set()
    for q in sympy.factorint(polydisc):
        if polydisc % (q * q) != 0 or q in checked:
            continue
        checked.add(q)
        if index % q != 0:
            if not _dedekind_criterion(desc, q):
                raise BasisNotMaximal(f"{label}: equation order not "
                                      f"{q}-maximal and basis does not "
                                      "enlarge it")
        else:
            if not _p_maximal(mul_table, q, degree):
                raise BasisNotMaximal(f"{label}: order enlarges at {q}")

    return FieldData(label, degree, disc, poly_cf, basis, mul_table)


def inverse_different_basis(field):
    """Trace-dual basis of the integral basis; it spans the inverse
    different, and Tr(omega_i omega*_j) = delta_ij exactly."""
    d = field.degree
    gram = [[(field.omega(i) * field.omega(j)).trace() for j in range(d)]
            for i in range(d)]
    ginv = frac_inv(gram)
    return [AlgNum(field, [ginv[j][i] for i in range(d)])
            for j in range(d)]


class EmbeddingMatrix:
    """Certified enclosures of the real embeddings of the integral basis.

    Row i is the i-th real place (roots of defining_poly ascending);
    column j is omega_j. entries[i][j] = (center, radius) as exact
    Fractions with |center - true| <= radius <= 2^-prec."""

    def __init__(self, prec, entries):
        self.prec = prec
        self.entries = entries

    @property
    def degree(self):
        return len(self.entries)

    def as_floats(self):
        return [[float(c) for c, _ in row] for row in self.entries]

    def apply(self, alg):
        """Enclosures (center, radius) of all embeddings of an element."""
        out = []
        for row in self.entries:
            c = sum(co * cen for co, (cen, _) in zip(alg.coords, row))
            r = sum(abs(co) * rad for co, (_, rad) in zip(alg.coords, row))
            out.append((c, r))
        return out


def _eval_desc(desc, x):
    acc = Fraction(0)
    for c in desc:
        acc = acc * x + c
    return acc


def _interval_pow(lo, hi, k):
    if k == 0:
        return Fraction(1), Fraction(1)
    vals = [lo ** k, hi ** k]
    if lo < 0 < hi and k % 2 == 0:
        return Fraction(0), max(vals)
    return min(vals), max(vals)


def embed(field, prec):
    """Certified real-embedding matrix at >= prec bits (entry radii are at
    most 2^-prec). Root order is ascending."""
    if prec < 64:
        raise ValueError("prec must be at least 64 bits")
    with field._lock:
        if prec in field._embed_cache:
            return field._embed_cache[prec]
    d = field.degree
    desc = field.defining_poly[::-1]
    if d == 1:
        root = Fraction(-field.defining_poly[0])
        ivs = [(root, root)]
    else:
        p = sympy.Poly(desc, _X)
        raw = p.intervals()
        ivs = []
        for (a, b), _m in raw:
            lo = Fraction(int(a.p), int(a.q)) if hasattr(a, "p") \
                else Fraction(a)
            hi = Fraction(int(b.p), int(b.q)) if hasattr(b, "p") \
                else Fraction(b)
            ivs.append((lo, hi))
        ivs.sort()
    target = Fraction(1, 2 ** prec)
    cap = 4 * prec + 256
    ivs = [(lo, lo) if lo != hi and _eval_desc(desc, lo) == 0 else
           ((hi, hi) if lo != hi and _eval_desc(desc, hi) == 0 else
            (lo, hi)) for lo, hi in ivs]
    entries = None
    for _round in range(cap):
        entries = []
        worst = Fraction(0)
        for lo, hi in ivs:
            powers = [_interval_pow(lo, hi, k) for k in range(d)]
            row = []
            for j in range(d):
                clo = Fraction(0)
                chi = Fraction(0)
                for k, co in enumerate(field.integral_basis[j]):
                    plo, phi = powers[k]
                    if co >= 0:
                        clo += co * plo
                        chi += co * phi
                    else:
                        clo += co * phi
                        chi += co * plo
                center = (clo + chi) / 2
                radius = (chi - clo) / 2
                row.append((center, radius))
                worst = max(worst, radius)
            entries.append(row)
        if worst <= target:
            break
        nxt = []
        for lo, hi in ivs:
            if hi - lo <= target / (2 ** d):
                nxt.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            fm = _eval_desc(desc, mid)
            if fm == 0:
                nxt.append((mid, mid))
            elif (fm > 0) == (_eval_desc(desc, lo) > 0):
                nxt.append((mid, hi))
            else:
                nxt.append((lo, mid))
        ivs = nxt
    else:
        raise PrecisionUnreachable(f"no convergence to 2^-{prec} within "
                                   f"{cap} refinement rounds")
    result = EmbeddingMatrix(prec, entries)
    with field._lock:
        field._embed_cache[prec] = result
    return result
