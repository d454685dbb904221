"""Exact q-expansion arithmetic for level-one modular forms.

Coefficients are Fractions throughout; a series knows how many coefficients
it carries (prec = number of known coefficients a_0..a_{prec-1}) and,
optionally, a weight tag (0 means unspecified).
"""

from fractions import Fraction

import sympy

from .errors import BadWeight, NotInSpace, OddWeight, PrecTooSmall


class QSeries:
    """A q-expansion with exact rational coefficients.

    weight: even nonnegative integer, 0 = unspecified.
    prec:   coefficients a_0 .. a_{prec-1} are known.
    """

    __slots__ = ("coeffs", "weight", "prec")

    def __init__(self, coeffs, weight=0):
        if weight < 0 or weight % 2:
            raise BadWeight(f"weight must be even nonnegative, got {weight}")
        self.coeffs = [Fraction(c) for c in coeffs]
        self.weight = weight
        self.prec = len(self.coeffs)

    def coeff(self, n):
        if n >= self.prec:
            raise PrecTooSmall(f"coefficient {n} beyond precision "
                               f"{self.prec}")
        return self.coeffs[n]

    def _join_weight(self, other):
        if self.weight and other.weight and self.weight != other.weight:
            raise BadWeight(f"cannot add weights {self.weight} and "
                            f"{other.weight}")
        return self.weight or other.weight

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries([other])
        w = self._join_weight(other)
        p = min(self.prec, other.prec)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(p)],
                       w)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries([other])
        w = self._join_weight(other)
        p = min(self.prec, other.prec)
        return QSeries([self.coeffs[i] - other.coeffs[i] for i in range(p)],
                       w)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries([c * Fraction(other) for c in self.coeffs],
                           self.weight)
        p = min(self.prec, other.prec)
        out = [Fraction(0)] * p
        for i, a in enumerate(self.coeffs[:p]):
            if a:
                for j in range(min(p - i, other.prec)):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return QSeries(out, self.weight + other.weight)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = QSeries([Fraction(1)] + [Fraction(0)] * (self.prec - 1), 0)
        base = self
        e = n
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        out = QSeries(result.coeffs, self.weight * n)
        return out

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        p = min(self.prec, other.prec)
        return self.coeffs[:p] == other.coeffs[:p]

    def __hash__(self):
        return hash(tuple(self.coeffs[:8]))

    def truncate(self, prec):
        if prec > self.prec:
            raise PrecTooSmall(f"cannot extend precision {self.prec} to "
                               f"{prec}")
        return QSeries(self.coeffs[:prec], self.weight)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.prec > 6 else ""
        return f"QSeries(weight={self.weight}, prec={self.prec}, " \
               f"[{head}{tail}])"

    def to_dict(self):
        return {"weight": self.weight, "prec": self.prec,
                "coeffs": [f"{c.numerator}/{c.denominator}"
                           for c in self.coeffs]}

    @classmethod
    def from_dict(cls, d):
        return cls([Fraction(c) for c in d["coeffs"]], d["weight"])


def bernoulli(n):
    """Exact Bernoulli number with the B_1 = -1/2 convention."""
    if n == 1:
        return Fraction(-1, 2)
    b = sympy.bernoulli(n)
    return Fraction(int(b.p), int(b.q))


def _divisor_power_sums(r, prec):
    """sigma_r(n) for n = 1..prec-1 by a divisor sieve."""
    s = [0] * prec
    for d in range(1, prec):
        pd = d ** r
        for m in range(d, prec, d):
            s[m] += pd
    return s


def eisenstein(k, prec):
    """Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1} q^n."""
    if k < 4 or k % 2:
        raise BadWeight(f"Eisenstein weight must be even >= 4, got {k}")
    factor = Fraction(-2 * k) / bernoulli(k)
    sig = _divisor_power_sums(k - 1, prec)
    coeffs = [Fraction(1)] + [factor * sig[n] for n in range(1, prec)]
    return QSeries(coeffs, k)


def delta(prec):
    """The discriminant cusp form (E_4^3 - E_6^2)/1728."""
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    diff = e4 * e4 * e4 - e6 * e6
    return QSeries([c / 1728 for c in diff.coeffs], 12)


def dim_Mk(k):
    """Dimension of the space of level-one modular forms of weight k."""
    if k % 2:
        raise OddWeight(f"weight {k} is odd")
    if k < 0:
        return 0
    return k // 12 if k % 12 == 2 else k // 12 + 1


def monomial_basis(k, prec):
    """The basis {E_4^a Delta^b : 4a + 12b = k}, ascending in b.

    Spans the full space exactly when k is divisible by 4 (then the count
    matches dim_Mk); other weights raise BadWeight.
    """
    if k == 0:
        return [QSeries([Fraction(1)] + [Fraction(0)] * (prec - 1), 0)]
    if k < 0 or k % 4:
        raise BadWeight(f"monomial basis needs 4 | k, got {k}")
    e4 = eisenstein(4, prec)
    dl = delta(prec)
    out = []
    for b in range(0, k // 12 + 1):
        a = (k - 12 * b) // 4
        f = QSeries([Fraction(1)] + [Fraction(0)] * (prec - 1), 0)
        f = (e4 ** a) * (dl ** b) if a or b else f
        out.append(QSeries(f.coeffs, k))
    assert len(out) == dim_Mk(k), "monomial count must equal the dimension"
    return out


def _e4e6_monomials(k, prec):
    """Spanning monomials E_4^a E_6^b of weight k (all even k >= 0)."""
    if k == 0:
        return [QSeries([Fraction(1)] + [Fraction(0)] * (prec - 1), 0)]
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    out = []
    for b in range(0, k // 6 + 1):
        if (k - 6 * b) % 4:
            continue
        a = (k - 6 * b) // 4
        f = (e4 ** a) * (e6 ** b)
        out.append(QSeries(f.coeffs, k))
    assert len(out) == dim_Mk(k), "monomial count must equal the dimension"
    return out


def miller_basis(k, prec):
    """Echelonized basis f_0..f_{D-1} of weight-k forms: a_j(f_i) = delta_ij
    for j < D = dim."""
    d = dim_Mk(k)
    if prec < d:
        raise PrecTooSmall(f"need prec >= {d}, got {prec}")
    basis = [list(f.coeffs) for f in _e4e6_monomials(k, prec)]
    # exact Gauss-Jordan on the leading D columns
    for col in range(d):
        piv = next((i for i in range(col, d) if basis[i][col]), None)
        assert piv is not None, "monomial basis must be unitriangular-able"
        basis[col], basis[piv] = basis[piv], basis[col]
        inv = 1 / basis[col][col]
        basis[col] = [x * inv for x in basis[col]]
        for i in range(d):
            if i != col and basis[i][col]:
                f = basis[i][col]
                basis[i] = [x - f * y for x, y in zip(basis[i], basis[col])]
    return [QSeries(row, k) for row in basis]


def decompose(series, k):
    """Exact coordinates of a weight-k form in monomial_basis(k).

    Requires at least dim + 2 known coefficients; the coefficients beyond
    the dimension act as guards and any residual raises NotInSpace.
    """
    d = dim_Mk(k)
    if series.prec < d + 2:
        raise PrecTooSmall(f"need prec >= dim + 2 = {d + 2}, got "
                           f"{series.prec}")
    basis = monomial_basis(k, series.prec)
    # solve with the leading d x d system (unitriangular in echelon order)
    mat = [[basis[j].coeffs[i] for j in range(d)] for i in range(d)]
    from .linalg import frac_solve
    coords = frac_solve(mat, series.coeffs[:d])
    # verify every remaining known coefficient
    for n in range(d, series.prec):
        recon = sum(c * basis[j].coeffs[n] for j, c in enumerate(coords))
        if recon != series.coeffs[n]:
            raise NotInSpace(f"residual at q^{n}: {series.coeffs[n] - recon}")
    return coords
