"""Exact integer and rational linear algebra used across the package."""

from fractions import Fraction
from math import gcd


def extgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
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


def hnf_rows(rows):
    """Hermite normal form of the row span of an integer matrix.

    Returns the list of basis rows in echelon order: pivot columns strictly
    increasing, pivot entries positive, entries above each pivot reduced into
    [0, pivot).
    """
    basis = []   # echelon rows
    pivots = []  # pivot column of each basis row
    for raw in rows:
        v = list(raw)
        while True:
            lead = next((j for j, x in enumerate(v) if x), None)
            if lead is None:
                break
            if lead in pivots:
                i = pivots.index(lead)
                b = basis[i]
                if v[lead] % b[lead] == 0:
                    q = v[lead] // b[lead]
                    v = [x - q * y for x, y in zip(v, b)]
                else:
                    g, s, t = extgcd(b[lead], v[lead])
                    nb = [s * x + t * y for x, y in zip(b, v)]
                    nv = [(b[lead] // g) * y - (v[lead] // g) * x
                          for x, y in zip(b, v)]
                    basis[i] = nb
                    v = nv
            else:
                if v[lead] < 0:
                    v = [-x for x in v]
                pos = sum(1 for p in pivots if p < lead)
                basis.insert(pos, v)
                pivots.insert(pos, lead)
                break
    # reduce entries above each pivot into [0, pivot)
    for i in range(len(basis) - 1, -1, -1):
        p = pivots[i]
        d = basis[i][p]
        for j in range(i):
            q = basis[j][p] // d
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return basis


def det_bareiss(mat):
    """Exact determinant of a square integer matrix, fraction-free."""
    a = [list(r) for r in mat]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def frac_solve(mat, rhs):
    """Solve mat * x = rhs exactly over the rationals (mat square, invertible).

    Returns a list of Fractions, or raises ZeroDivisionError on singular input.
    """
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(y)]
         for row, y in zip(mat, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


def frac_inv(mat):
    """Exact inverse of a square rational matrix."""
    n = len(mat)
    a = [[Fraction(x) for x in row] +
         [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def frac_rref(mat):
    """Reduced row echelon form over the rationals; returns (rref, pivot_cols)."""
    a = [[Fraction(x) for x in row] for row in mat]
    if not a:
        return [], []
    rows, cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def mat_mul(a, b):
    """Matrix product with exact entries (int or Fraction)."""
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def charpoly(mat):
    """Characteristic polynomial of a square rational matrix.

    Faddeev-LeVerrier recursion; returns monic coefficients
    [1, c_1, ..., c_n] for x^n + c_1 x^{n-1} + ... + c_n, as Fractions.
    """
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    coeffs = [Fraction(1)]
    mk = [row[:] for row in m]
    for k in range(1, n + 1):
        ck = -sum(mk[i][i] for i in range(n)) / k
        coeffs.append(ck)
        if k < n:
            for i in range(n):
                mk[i][i] += ck
            mk = mat_mul(m, mk)
    return coeffs


def solve_upper_int(basis, v):
    """Express v as an integer combination of upper-echelon HNF basis rows.

    basis is square upper triangular with nonzero diagonal (rows = lattice
    generators).  Returns the integer coefficient vector, or None when v is
    not in the lattice.
    """
    n = len(basis)
    x = [0] * n
    rem = list(v)
    for j in range(n):
        q, r = divmod(rem[j], basis[j][j])
        if r:
            return None
        x[j] = q
        if q:
            rem = [a - q * b for a, b in zip(rem, basis[j])]
    if any(rem):
        return None
    return x


def clear_denominators(mat):
    """Rational matrix -> (integer matrix, common positive denominator)."""
    denom = 1
    for row in mat:
        for x in row:
            f = Fraction(x)
            denom = denom * f.denominator // gcd(denom, f.denominator)
    out = [[int(Fraction(x) * denom) for x in row] for row in mat]
    return out, denom


# dense linear algebra over GF(p)

def rref_mod(mat, p):
    """Row reduce mod p; returns (rref, pivot_cols)."""
    a = [[x % p for x in row] for row in mat]
    if not a:
        return [], []
    rows, cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], pivots


def nullspace_mod(mat, p):
    """Basis of the right kernel {x : mat x = 0} over GF(p)."""
    rref, pivots = rref_mod(mat, p)
    cols = len(mat[0]) if mat else 0
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-rref[r][fc]) % p
        basis.append(v)
    return basis


def solve_mod(mat, rhs, p):
    """One solution x of mat x = rhs over GF(p), or None if inconsistent."""
    aug = [row + [b] for row, b in zip(mat, rhs)]
    rref, pivots = rref_mod(aug, p)
    cols = len(mat[0]) if mat else 0
    if cols in pivots:
        return None
    x = [0] * cols
    for r, pc in enumerate(pivots):
        x[pc] = rref[r][cols]
    return x
