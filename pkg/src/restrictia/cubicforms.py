"""Integral binary cubic forms rooted in a cubic field: invariants,
SL2(Z) reduction via the Hessian, the Delone-Faddeev order
correspondence, cusp-class enumeration, and suborder counting."""

from fractions import Fraction
from math import gcd, isqrt

from .errors import (BoxOverflow, NonpositiveDisc, NotARing, NotGenerating)
from .fieldcore import AlgNum, charpoly, embed
from .idealarith import ideal_count
from .linalg import frac_solve


class CubicForm:
    """Integer binary cubic A X^3 + B X^2 Y + C X Y^2 + D Y^3."""

    __slots__ = ("A", "B", "C", "D")

    def __init__(self, A, B, C, D):
        self.A, self.B, self.C, self.D = int(A), int(B), int(C), int(D)

    def as_tuple(self):
        return (self.A, self.B, self.C, self.D)

    def content(self):
        return gcd(gcd(abs(self.A), abs(self.B)),
                   gcd(abs(self.C), abs(self.D)))

    def __call__(self, x, y):
        return ((self.A * x + self.B * y) * x + self.C * y * y) * x + \
            self.D * y ** 3

    def compose(self, gamma):
        """Right action: (f.gamma)(x, y) = f(px + qy, rx + sy)."""
        (p, q), (r, s) = gamma
        a, b, c, d = self.A, self.B, self.C, self.D
        return CubicForm(
            ((a * p + b * r) * p + c * r * r) * p + d * r ** 3,
            3 * a * p * p * q + b * (p * p * s + 2 * p * q * r)
            + c * (2 * p * r * s + q * r * r) + 3 * d * r * r * s,
            3 * a * p * q * q + b * (q * q * r + 2 * p * q * s)
            + c * (p * s * s + 2 * q * r * s) + 3 * d * r * s * s,
            ((a * q + b * s) * q + c * s * s) * q + d * s ** 3)

    def __eq__(self, other):
        return isinstance(other, CubicForm) and \
            self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return f"CubicForm{self.as_tuple()}"


def disc(f):
    """18ABCD + B^2 C^2 - 4AC^3 - 4B^3 D - 27 A^2 D^2."""
    a, b, c, d = f.as_tuple()
    return 18 * a * b * c * d + b * b * c * c - 4 * a * c ** 3 \
        - 4 * b ** 3 * d - 27 * a * a * d * d


def hessian_P(f):
    """Leading coefficient B^2 - 3AC of the Hessian quadratic."""
    a, b, c, _ = f.as_tuple()
    return b * b - 3 * a * c


def _hessian(f):
    a, b, c, d = f.as_tuple()
    return (b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d)


def _mat_mul2(g, h):
    return ((g[0][0] * h[0][0] + g[0][1] * h[1][0],
             g[0][0] * h[0][1] + g[0][1] * h[1][1]),
            (g[1][0] * h[0][0] + g[1][1] * h[1][0],
             g[1][0] * h[0][1] + g[1][1] * h[1][1]))

_ID = ((1, 0), (0, 1))
_S = ((0, -1), (1, 0))


def _T(n):
    return ((1, n), (0, 1))


def reduce(f):
    """SL2(Z)-reduce f through its positive definite Hessian: returns
    (f', gamma) with f' = f.gamma, |Q| <= P <= R, hence P <= sqrt(disc)."""
    if disc(f) <= 0:
        raise NonpositiveDisc(f"disc {disc(f)} is not positive")
    cur = f
    gamma = _ID
    while True:
        p, q, r = _hessian(cur)
        # translation lands Q in [-P, P)
        n = -((q + p) // (2 * p)) if abs(q) > p else 0
        if n:
            t = _T(n)
            cur = cur.compose(t)
            gamma = _mat_mul2(gamma, t)
            p, q, r = _hessian(cur)
        if p > r:
            cur = cur.compose(_S)
            gamma = _mat_mul2(gamma, _S)
            continue
        break
    return cur, gamma


def _is_reduced(f):
    p, q, r = _hessian(f)
    return abs(q) <= p <= r


def canonical_form(f):
    """Deterministic class representative: explore the cluster of reduced
    forms around reduce(f) (boundary identifications and Hessian
    automorphs are words of length <= ~5 in T, T^-1, S, -I) and take the
    lexicographically smallest (P, |A|, A, B, C, D)."""
    f0, _ = reduce(f)
    neg = ((-1, 0), (0, -1))
    moves = (_T(1), _T(-1), _S, neg)
    seen = {f0.as_tuple()}
    frontier = [f0]
    depth = 0
    while frontier and depth < 6 and len(seen) <= 4096:
        depth += 1
        nxt = []
        for g in frontier:
            for mv in moves:
                h = g.compose(mv)
                t = h.as_tuple()
                if t not in seen:
                    seen.add(t)
                    nxt.append(h)
        frontier = nxt
    best = None
    for t in seen:
        g = CubicForm(*t)
        if _is_reduced(g):
            key = (hessian_P(g), abs(t[0])) + t
            if best is None or key < best[0]:
                best = (key, g)
    return best[1]


def gl2_canonical(f):
    """Class representative under all of GL2(Z): the smaller of the two
    SL2(Z) canonical forms of f and its det -1 flip."""
    flip = f.compose(((1, 0), (0, -1)))
    return min(canonical_form(f).as_tuple(),
               canonical_form(flip).as_tuple())


def form_from_beta(beta):
    """Primitive integral cubic with positive leading coefficient whose
    root is beta; returns (form, leading coefficient)."""
    field = beta.field
    if field.degree != 3:
        raise NotGenerating("needs an element of a cubic field")
    if all(c == 0 for c in beta.coords[1:]):
        raise NotGenerating(f"{beta} is rational")
    cp = charpoly(beta)  # monic cubic, equals the minimal polynomial
    den = 1
    for c in cp:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in cp]
    cont = 0
    for x in ints:
        cont = gcd(cont, abs(x))
    ints = [x // cont for x in ints]
    f = CubicForm(*ints)
    val = ((beta * ints[0] + ints[1]) * beta + ints[2]) * beta + ints[3]
    assert val.is_zero(), "charpoly must kill beta"
    return f, ints[0]


def delone_faddeev_order(f, beta):
    """Order basis {1, u, v} with u = A beta, v = A beta^2 + B beta + C;
    verifies the multiplication table and disc(f) = D_F m^2, returns
    ((1, u, v), m)."""
    field = beta.field
    a, b, c, d = f.as_tuple()
    val = ((beta * a + b) * beta + c) * beta + d
    if not val.is_zero():
        raise NotARing("beta is not a root of the form")
    one = field.one()
    u = beta * a
    v = (beta * a + b) * beta + c
    for elt in (u, v):
        if not elt.is_integral():
            raise NotARing("module generators are not integral")
    # multiplication table of the Delone-Faddeev ring
    if u * u != v * a - u * b - one * (a * c) or \
       u * v != one * (-a * d) or \
       v * v != v * c - u * d - one * (b * d):
        raise NotARing("module is not multiplicatively closed")
    rows = [[1, 0, 0], [int(x) for x in u.coords],
            [int(x) for x in v.coords]]
    det = rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1]
    m = abs(det)
    if m == 0:
        raise NotARing("generators do not span a rank-3 module")
    if disc(f) != field.disc * m * m:
        raise NotARing(f"disc {disc(f)} != {field.disc} * {m}^2")
    return (one, u, v), m


class CuspClass:
    """SL2(Z)-class of beta in F - Q: canonical form, exact root, index."""

    def __init__(self, beta, form, a_beta, order_index, embeddings):
        self.beta = beta
        self.form = form
        self.A_beta = a_beta
        self.order_index = order_index
        self.embeddings = embeddings

    def __repr__(self):
        return f"CuspClass(m={self.order_index}, " \
               f"form={self.form.as_tuple()}, A={self.A_beta})"


def _box_forms(delta, budget):
    """All primitive (A,B,C,D) with disc = delta and Hessian satisfying
    |Q| <= P <= sqrt(delta).

    Derivation: 4P^3 = G^2 + 27 delta A^2 with G = 2B^3 - 9ABC + 27A^2 D
    forces 27 delta A^2 <= 4P^3 and G^2 a perfect square; C and D are
    then determined by C = (B^2 - P)/(3A), D = (G + B^3 - 3BP)/(27A^2),
    and |Q| = |2BP - G|/(3|A|) <= P bounds B."""
    steps = 0
    out = []
    for p in range(1, isqrt(delta) + 1):
        cube4 = 4 * p ** 3
        amax = isqrt(cube4 // (27 * delta))
        while 27 * delta * (amax + 1) ** 2 <= cube4:
            amax += 1
        for a in range(1, amax + 1):
            s = cube4 - 27 * delta * a * a
            g = isqrt(s)
            if g * g != s:
                continue
            for aa in (a, -a):
                for gg in sorted({g, -g}):
                    blo = -(-(gg - 3 * a * p) // (2 * p))
                    bhi = (gg + 3 * a * p) // (2 * p)
                    for b in range(blo, bhi + 1):
                        steps += 1
                        if steps > budget:
                            raise BoxOverflow(f"budget {budget} exceeded "
                                              f"at disc {delta}")
                        num_c = b * b - p
                        if num_c % (3 * aa):
                            continue
                        c = num_c // (3 * aa)
                        num_d = gg + b ** 3 - 3 * b * p
                        if num_d % (27 * aa * aa):
                            continue
                        d = num_d // (27 * aa * aa)
                        f = CubicForm(aa, b, c, d)
                        if f.content() != 1:
                            continue
                        if disc(f) != delta:
                            continue
                        out.append(f)
    return out


def _roots_in_field(form, field, emb):
    """Exact elements of F that are roots of the form: propose rational
    coordinates from certified embeddings, then verify f(beta, 1) = 0."""
    import sympy
    x = sympy.Symbol("x")
    a = form.A
    if a == 0:
        return []  # y divides the form, so it is reducible
    poly = sympy.Poly(form.A * x ** 3 + form.B * x ** 2 + form.C * x
                      + form.D, x)
    _, factors = poly.factor_list()
    if len(factors) != 1 or factors[0][1] != 1:
        return []  # reducible form, no roots generating F
    # 60 digits is far beyond what the denominator-A rounding needs, and
    # the exact root check below backstops the numerics anyway
    roots = [Fraction(str(r.evalf(60))) for r in sympy.real_roots(poly)]
    emat = [[cen for cen, _ in row] for row in emb.entries]
    found = {}
    for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1),
                 (2, 1, 0)):
        target = [roots[perm[j]] for j in range(3)]
        approx = frac_solve([row[:] for row in emat], target)
        # A beta is an algebraic integer, so coordinates have denominator
        # dividing A; exact verification backstops the rounding
        cand = [Fraction(round(c * a), a) for c in approx]
        beta = AlgNum(field, cand)
        val = ((beta * form.A + form.B) * beta + form.C) * beta + form.D
        if val.is_zero():
            found[tuple(cand)] = beta
    return list(found.values())


def _ext_gcd(x, y):
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def subring_key(f, beta):
    """Canonical Hermite key (a, b, c), with a c = order index, of the
    Delone-Faddeev module in the integral basis: roots generating the
    same subring of the maximal order get the same key."""
    (_, u, v), m = delone_faddeev_order(f, beta)
    u1, u2 = int(u.coords[1]), int(u.coords[2])
    v1, v2 = int(v.coords[1]), int(v.coords[2])
    # the Z 1 line projects away; key the rank-2 remainder by its unique
    # row Hermite form (a, b), (0, c)
    a, s, t = _ext_gcd(u1, v1)
    c = abs(u1 * v2 - u2 * v1) // a
    assert a * c == m, "Hermite diagonal must recover the index"
    return (a, (s * u2 + t * v2) % c, c)


def enumerate_cusp_classes(field, max_index, budget=20_000_000):
    """All cusp classes with order index <= max_index: box-enumerate
    primitive forms of disc D_F m^2, canonicalize, locate exact roots in
    F, and package with certified float embeddings."""
    if field.degree != 3:
        raise ValueError("cusp classes need a cubic field")
    emb = embed(field, 160)
    classes = []
    for m in range(1, max_index + 1):
        delta = field.disc * m * m
        seen = set()
        for f in _box_forms(delta, budget):
            canon = canonical_form(f)
            if canon.as_tuple() in seen:
                continue
            seen.add(canon.as_tuple())
            betas = _roots_in_field(canon, field, emb)
            if not betas:
                continue
            for beta in sorted(betas, key=lambda b: b.coords):
                _, idx = delone_faddeev_order(canon, beta)
                assert idx == m, "index must match the disc target"
                fb, a_beta = form_from_beta(beta)
                assert canon.as_tuple() in (
                    fb.as_tuple(), tuple(-x for x in fb.as_tuple())), \
                    "the primitive form with root beta is the class rep"
                encl = emb.apply(beta)
                embeddings = [float(cen) for cen, _ in encl]
                classes.append(CuspClass(beta, canon, a_beta, m,
                                         embeddings))
    return classes


def cusp_classes_csv(classes):
    """CSV dump: one row per class."""
    lines = ["m,A,B,C,D,A_beta,beta1,beta2,beta3"]
    for c in classes:
        a, b, cc, d = c.form.as_tuple()
        embs = ",".join(f"{x:.12g}" for x in c.embeddings)
        lines.append(f"{c.order_index},{a},{b},{cc},{d},{c.A_beta},{embs}")
    return "\n".join(lines) + "\n"


def eta_coefficients(field, nmax):
    """Dirichlet coefficients of zeta_F(s) zeta(2s) zeta(3s-1) /
    zeta_F(2s): the number of suborders of each index."""
    if field.degree != 3:
        raise ValueError("the order-counting series is for cubic fields")
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    af = [0] + ideal_count(field, nmax)

    def conv(x, y):
        out = [0] * (nmax + 1)
        for i in range(1, nmax + 1):
            if x[i]:
                for j in range(1, nmax // i + 1):
                    if y[j]:
                        out[i * j] += x[i] * y[j]
        return out

    # zeta_F(2s) support on squares; Dirichlet-invert it
    bf = [0] * (nmax + 1)
    for mm in range(1, isqrt(nmax) + 1):
        bf[mm * mm] = af[mm]
    inv = [0] * (nmax + 1)
    inv[1] = 1
    for n in range(2, nmax + 1):
        tot = 0
        for dd in range(2, n + 1):
            if n % dd == 0 and bf[dd]:
                tot += bf[dd] * inv[n // dd]
        inv[n] = -tot
    c2 = [0] * (nmax + 1)
    for mm in range(1, isqrt(nmax) + 1):
        c2[mm * mm] = 1
    c3 = [0] * (nmax + 1)
    mm = 1
    while mm ** 3 <= nmax:
        c3[mm ** 3] = mm
        mm += 1
    return conv(conv(conv(af, c2), c3), inv)


def enumerate_suborders(field, max_index):
    """Brute-force count of multiplicatively closed sublattices of O_F
    containing 1, by index; HNF parametrization (1, a w2 + b w3, c w3)."""
    if field.degree != 3:
        raise ValueError("suborder sweep is for cubic fields")
    if max_index > 50:
        raise ValueError("max_index is capped at 50 for the sweep")
    w2 = field.omega(1)
    w3 = field.omega(2)
    counts = [0] * (max_index + 1)

    def member(elt, a, b, c):
        x, y, z = elt.coords
        if x.denominator != 1 or y.denominator != 1 or z.denominator != 1:
            return False
        yy, r = divmod(int(y), a)
        if r:
            return False
        zz, r = divmod(int(z) - yy * b, c)
        return r == 0

    one = field.one()
    for a in range(1, max_index + 1):
        for c in range(1, max_index // a + 1):
            for b in range(c):
                e2 = w2 * a + w3 * b
                e3 = w3 * c
                if member(e2 * e2, a, b, c) and \
                   member(e2 * e3, a, b, c) and \
                   member(e3 * e3, a, b, c):
                    basis = (one, e2, e3)
                    gram = [[(x * y).trace() for y in basis]
                            for x in basis]
                    dd = gram[0][0] * (gram[1][1] * gram[2][2]
                                       - gram[1][2] * gram[2][1]) \
                        - gram[0][1] * (gram[1][0] * gram[2][2]
                                        - gram[1][2] * gram[2][0]) \
                        + gram[0][2] * (gram[1][0] * gram[2][1]
                                        - gram[1][1] * gram[2][0])
                    assert dd == field.disc * (a * c) ** 2, \
                        "suborder disc must be D_F index^2"
                    counts[a * c] += 1
    return counts
