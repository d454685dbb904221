"""Lattice-point enumeration under a positive-definite form (Fincke-Pohst
depth-first search), the totally positive trace slice of the inverse
different, and theta-series coefficients of even integral lattices."""

from fractions import Fraction
from math import ceil, floor, sqrt

from .errors import NotEven, NotPositiveDefinite
from .fieldcore import inverse_different_basis, is_totally_positive
from .linalg import frac_solve


class GramForm:
    """Symmetric positive-definite form with exact rational entries and a
    cached exact LDL^T factorization (plus a float copy for search)."""

    def __init__(self, gram):
        self.dim = len(gram)
        self.gram = [[Fraction(x) for x in row] for row in gram]
        for i in range(self.dim):
            for j in range(self.dim):
                if self.gram[i][j] != self.gram[j][i]:
                    raise NotPositiveDefinite("form is not symmetric")
        self._ldl = None

    def ldl(self):
        """Exact G = L D L^T with unit lower-triangular L; certifies
        positive definiteness through the pivots."""
        if self._ldl is None:
            n = self.dim
            lmat = [[Fraction(1) if i == j else Fraction(0)
                     for j in range(n)] for i in range(n)]
            diag = [Fraction(0)] * n
            work = [row[:] for row in self.gram]
            for k in range(n):
                piv = work[k][k]
                if piv <= 0:
                    raise NotPositiveDefinite(f"pivot {k} is {piv}")
                diag[k] = piv
                for i in range(k + 1, n):
                    f = work[i][k] / piv
                    lmat[i][k] = f
                    for j in range(k + 1, n):
                        work[i][j] -= f * work[k][j]
            self._ldl = (lmat, diag)
        return self._ldl

    def _int_gram(self):
        if not hasattr(self, "_igram"):
            ok = all(x.denominator == 1 for row in self.gram for x in row)
            self._igram = [[int(x) for x in row] for row in self.gram] \
                if ok else None
        return self._igram

    def value(self, v, center=None):
        """Exact Q(v + center)."""
        n = self.dim
        if center is None:
            ig = self._int_gram()
            if ig is not None:
                total = 0
                for i in range(n):
                    vi = v[i]
                    if vi:
                        row = ig[i]
                        total += vi * row[i] * vi
                        for j in range(i + 1, n):
                            if v[j]:
                                total += 2 * vi * row[j] * v[j]
                return Fraction(total)
        z = [Fraction(x) for x in v]
        if center is not None:
            z = [a + b for a, b in zip(z, center)]
        total = Fraction(0)
        for i in range(n):
            for j in range(n):
                total += z[i] * self.gram[i][j] * z[j]
        return total


def enumerate_below(form, bound, center=None):
    """Stream (vector, True) of integer v with Q(v + center) < bound.

    Depth-first over coordinates, last coordinate outermost. The float
    search bound is safety-inflated so no qualifying vector is lost;
    leaves clear of the boundary by the error margin are trusted and only
    near-boundary leaves get the exact rational re-check."""
    n = form.dim
    lmat, diag = form.ldl()
    bound = Fraction(bound)
    if bound <= 0:
        return
    lf = [[float(x) for x in row] for row in lmat]
    df = [float(x) for x in diag]
    bf = float(bound)
    eps = bf * 2.0 ** -18 + 2.0 ** -24
    cf = [float(x) for x in (center or [0] * n)]

    # y_i = z_i + sum_{j>i} L_ji z_j with z = v + center; offsets o[i]
    # accumulate the contribution of the already-chosen outer coordinates
    v = [0] * n
    offs = [[0.0] * n for _ in range(n + 1)]
    offs[n] = [cf[i] for i in range(n)]

    def dfs(i, rem):
        o = offs[i + 1]
        s = sqrt(max(rem, 0.0) / df[i]) + 1e-9
        lo = ceil(-o[i] - s)
        hi = floor(-o[i] + s)
        for x in range(lo, hi + 1):
            v[i] = x
            y = x + o[i]
            used = df[i] * y * y
            rem2 = rem - used
            if rem2 < -eps:
                continue
            if i == 0:
                # rem2 > 2 eps leaves float headroom on both sides of the
                # accumulated-error budget, so Q(v+c) < bound is certain
                if rem2 > 2.0 * eps:
                    yield tuple(v), True
                elif form.value(v, center) < bound:
                    yield tuple(v), True
            else:
                z = x + cf[i]
                nxt = offs[i]
                for k in range(i):
                    nxt[k] = o[k] + lf[i][k] * z
                yield from dfs(i - 1, rem2)
        v[i] = 0

    yield from dfs(n - 1, bf + eps)


def _trace_slice_context(field):
    """Per-field cache: dual basis, trace Gram, slice form, and certified
    float enclosures of the dual-basis embeddings (midpoint, radius)."""
    with field._lock:
        ctx = getattr(field, "_trace_slice_ctx", None)
    if ctx is not None:
        return ctx
    from .fieldcore import embed
    d = field.degree
    dual = inverse_different_basis(field)
    gram = [[(dual[i] * dual[j]).trace() for j in range(d)]
            for i in range(d)]
    emb = embed(field, 64)
    mid = [[0.0] * d for _ in range(d)]
    rad = [[0.0] * d for _ in range(d)]
    for j in range(d):
        encl = emb.apply(dual[j])
        for i, (c, r) in enumerate(encl):
            mid[i][j] = float(c)
            # one float rounding of the exact midpoint, folded into radius
            rad[i][j] = float(r) + abs(mid[i][j]) * 2.0 ** -50 + 2.0 ** -60
    ctx = (dual, gram, mid, rad)
    with field._lock:
        field._trace_slice_ctx = ctx
    return ctx


def totally_positive_of_trace(field, l):
    """All nu in the inverse different with nu >> 0 and trace l, exactly.

    The first integral basis element is 1, so over the trace-dual basis
    the trace of nu is its first coordinate; enumeration runs on the
    (d-1)-dimensional slice with the exact trace form. Candidates pass a
    certified float sign filter on the embeddings (interval enclosures
    with rigorous error budget); only ambiguous ones fall back to the
    exact total-positivity test."""
    if l < 1:
        return []
    d = field.degree
    dual, gram, mid, rad = _trace_slice_context(field)
    if d == 1:
        return [l * dual[0]]
    # complete the square over coordinates 2..d with x_1 = l fixed
    sub = [row[1:] for row in gram[1:]]
    b = [l * gram[0][j] for j in range(1, d)]
    mu = frac_solve([row[:] for row in sub], b)
    cross = sum(mu[i] * sub[i][j] * mu[j]
                for i in range(d - 1) for j in range(d - 1))
    bound = Fraction(l * l) - Fraction(l * l) * gram[0][0] + cross
    out = []
    if bound > 0:
        form = GramForm(sub)
        fl = float(l)
        for v, _certain in enumerate_below(form, bound, center=mu):
            verdict = True
            for i in range(d):
                row_m = mid[i]
                row_r = rad[i]
                dot = fl * row_m[0]
                err = fl * row_r[0]
                mag = abs(dot)
                for j, x in enumerate(v):
                    if x:
                        t = x * row_m[j + 1]
                        dot += t
                        mag += abs(t)
                        err += abs(x) * row_r[j + 1]
                # accumulated dot-product rounding, d+2 ops at magnitude mag
                err += mag * (d + 2) * 2.0 ** -52
                if dot <= err:
                    verdict = False if dot < -err else None
                    break
            if verdict is False:
                continue
            nu = l * dual[0]
            for j, x in enumerate(v):
                if x:
                    nu = nu + x * dual[j + 1]
            if verdict is None and not is_totally_positive(nu):
                continue
            assert nu.trace() == l, "slice parametrization fixes the trace"
            out.append(nu)
    out.sort(key=lambda a: a.coords)
    return out


def theta_coefficients(form, max_norm):
    """r(n) = #{v : v^T G v = 2n} for an even integral Gram, n <= max_norm."""
    g = form.gram
    for i in range(form.dim):
        for j in range(form.dim):
            if g[i][j].denominator != 1:
                raise NotEven("Gram must be integral")
        if int(g[i][i]) % 2:
            raise NotEven(f"diagonal entry {i} is odd")
    counts = [0] * (max_norm + 1)
    bound = 2 * max_norm + 1
    for v, certain in enumerate_below(form, bound):
        q = form.value(v)
        assert q.denominator == 1
        q = int(q)
        if q <= 2 * max_norm:
            assert q % 2 == 0, "even lattice has even norms"
            counts[q // 2] += 1
    return counts


# Gram matrix of the E_8 root lattice (Cartan matrix, Bourbaki numbering:
# chain 1-3-4-5-6-7-8 with node 2 hanging off node 4)
E8_GRAM = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
]


def e8_form():
    return GramForm(E8_GRAM)
