"""Numeric evaluation of the cubic-field inner product formula, its tail
constants, Riemann/Dedekind zeta sums with certified remainders, and an
independent Petersson-norm quadrature oracle."""

import math
from collections import Counter
from fractions import Fraction

import mpmath
import numpy as np

from .cubicforms import enumerate_cusp_classes, eta_coefficients, subring_key
from .errors import (BadWeight, NonconvergentTail, OddWeight, TailTooLarge,
                     ToleranceUnreachable, ZeroCoordinate)
from .idealarith import ideal_count


class InnerProductResult:
    """One inner-product evaluation with its truncation certificate."""

    def __init__(self, value, truncation, tail_bound, method):
        self.value = value
        self.truncation = truncation
        self.tail_bound = tail_bound
        self.method = method

    def describe(self):
        m, n = self.truncation
        return (f"method={self.method} value={self.value.real:.10e}"
                f" imag_residue={abs(self.value.imag):.2e}"
                f" M={m} N={n} tail_bound={self.tail_bound:.3e}")

    def __repr__(self):
        return f"InnerProductResult({self.describe()})"


def _rising(k, n):
    out = 1
    for i in range(n):
        out *= k + i
    return out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def pq_ratio(k, l, xs):
    """The symmetrized derivative ratio P_{m,k,l}/Q_{m,k+l} at the given
    nonzero coordinates: (-1)^l l! sum over compositions r of l of
    prod_j (k)_(r_j)/r_j! x_j^(-k-r_j); exact on rational input."""
    if k < 1 or not 0 <= l <= k - 1:
        raise ValueError(f"need k >= 1 and 0 <= l <= k-1, got k={k} l={l}")
    if not xs:
        raise ValueError("need at least one coordinate")
    exact = all(isinstance(x, (int, Fraction)) for x in xs)
    if exact:
        xs = [Fraction(x) for x in xs]
    for x in xs:
        if x == 0:
            raise ZeroCoordinate("coordinates must be nonzero")
    m = len(xs)
    total = Fraction(0) if exact else 0.0
    for comp in _compositions(l, m):
        term = Fraction(1) if exact else 1.0
        for x, r in zip(xs, comp):
            term *= Fraction(_rising(k, r), math.factorial(r)) / x ** (k + r)
        total += term
    sign = -1 if l % 2 else 1
    return sign * math.factorial(l) * total


def riemann_zeta_real(s, tol=1e-13):
    """zeta(s) for real s > 1 by Euler-Maclaurin through the B_2 term;
    the remainder is below s(s+1)(s+2) N^(-s-3)/720 <= tol."""
    if s <= 1:
        raise ValueError(f"need s > 1, got {s}")
    n = 16
    while s * (s + 1) * (s + 2) / 720.0 * n ** (-s - 3) > tol:
        n *= 2
    partial = math.fsum(j ** -s for j in range(n, 0, -1))
    return (partial + n ** (1 - s) / (s - 1) - 0.5 * n ** -s
            + s / 12.0 * n ** (-s - 1))


def _divisor_tail(nmax, s, d):
    """Upper bound for sum_{n>nmax} d_d(n) n^-s.

    sum_{n<=x} d_d(n) <= x (ln x + 1)^(d-1) by induction on d, so partial
    summation leaves s int_N^inf (ln x + 1)^(d-1) x^-s dx, an incomplete
    gamma in u = (s-1)(ln x + 1)."""
    y = (s - 1) * (math.log(nmax) + 1.0)
    gam = math.factorial(d - 1) * math.exp(-y) * \
        math.fsum(y ** i / math.factorial(i) for i in range(d))
    return s * math.exp(s - 1) * (s - 1) ** (-d) * gam


def dedekind_zeta_numeric(field, s, tol=1e-10, nmax_cap=2_500_000):
    """zeta_F(s) = sum a_n n^-s for real s > 1, summed until the
    d_d(n)-domination remainder is certified below tol (None means Q)."""
    if s <= 1:
        raise ValueError(f"need s > 1, got {s}")
    if field is None or field.degree == 1:
        return riemann_zeta_real(s, tol)
    d = field.degree
    n = 256
    while _divisor_tail(n, s, d) / 2.0 > tol:
        n *= 2
        if n > nmax_cap:
            raise TailTooLarge(f"zeta_F({s}) needs more than {nmax_cap} "
                               f"ideal norms for tolerance {tol}")
    counts = np.array(ideal_count(field, n), dtype=float)
    value = float(np.sum(counts / np.arange(1, n + 1, dtype=float) ** s))
    # counts are nonnegative, so value underestimates by at most the
    # divisor tail; return the midpoint of the bracket
    return value + _divisor_tail(n, s, d) / 2.0


def c_k(k):
    """The explicit tail constant: Gamma(3k-1)/(2 Gamma(k)) (4 pi)^(2-3k)
    times the weighted zeta sum over derivative orders l < k."""
    if k < 3:
        raise ValueError(f"the tail estimate needs k >= 3, got {k}")
    acc = 0.0
    for l in range(k):
        acc += ((2 * math.pi) ** (k - 1 - l)
                * riemann_zeta_real(k / 2 + l)
                * math.comb(k - 1 + l, l) / math.comb(k + 2 * l, l)
                * math.factorial(l + 1) * 6.0 ** (k / 2 + l))
    return math.gamma(3 * k - 1) / (2 * math.gamma(k)) \
        * (4 * math.pi) ** (2 - 3 * k) * acc


def C_k(k):
    """Field-uniform inner-product bound constant 6 c_k zeta(k/2)^3
    zeta(3k/2 - 1) / zeta(k)^2."""
    return (6 * c_k(k) * riemann_zeta_real(k / 2) ** 3
            * riemann_zeta_real(1.5 * k - 1) / riemann_zeta_real(k) ** 2)


def _class_tail(field, k, max_index, c_f):
    """Bound on the inner-product mass of the subrings with index beyond
    max_index: c_f c_k D^(-k/4) times the tail of the order-counting
    Dirichlet series at s = k/2, one term per order."""
    s = k / 2
    tol_s = 1e-3 if s <= 2 else 1e-8
    zs = dedekind_zeta_numeric(field, s, tol_s)
    zk = dedekind_zeta_numeric(field, k, 1e-10)
    eta_full = ((zs + tol_s) * riemann_zeta_real(k)
                * riemann_zeta_real(1.5 * k - 1) / (zk - 1e-10))
    bs = eta_coefficients(field, max_index)
    partial = math.fsum(bs[m] / float(m) ** s
                        for m in range(1, max_index + 1))
    return (c_f * c_k(k) * field.disc ** (-k / 4.0)
            * max(0.0, eta_full - partial))


def inner_product_d3(field, k, cusp_coeffs, max_index=40, c_f=None,
                     tol=None, budget=20_000_000):
    """Inner product of the restriction against the cusp form with the
    given coefficients c_1..c_N, evaluated by the unfolded sum

      i Gamma(3k-1) / ((4 pi)^(3k-2) Gamma(k)) sum_l C(k-1,l) (2 pi i)^(k-1-l)
        sum_O A^-k sum_j (P/Q)(diffs_j) sum_n e(n beta_j) conj(c_n) n^(-2k-l)

    with one term per order O inside the maximal order, index <= max_index.
    Enumerated root classes sharing a Delone-Faddeev module split that
    term's weight evenly (conjugate directions, and for a Galois field the
    three roots of a stable order's form, give equal or conjugate values).
    tail_bound adds the certified subring tail (via the order-counting
    series, using |c_n| <= c_f n^(3k/2)) to the certified n-truncation
    tail."""
    if field.degree != 3:
        raise ValueError("the explicit inner product needs a cubic field")
    if k % 2:
        raise OddWeight(f"the unfolding needs even k, got {k}")
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    n_terms = len(cusp_coeffs)
    if n_terms < 1:
        raise ValueError("need at least one cusp coefficient")
    csbar = np.conj(np.array([complex(c) for c in cusp_coeffs]))
    narr = np.arange(1, n_terms + 1, dtype=float)
    if c_f is None:
        c_f = float(np.max(np.abs(csbar) / narr ** (1.5 * k)))
    weights = [csbar / narr ** (2 * k + l) for l in range(k)]
    classes = enumerate_cusp_classes(field, max_index, budget)
    classes.sort(key=lambda c: (c.order_index, c.form.as_tuple(),
                                c.beta.coords))
    keys = [(cls.order_index,) + subring_key(cls.form, cls.beta)
            for cls in classes]
    sizes = Counter(keys)
    tsum = [0j] * k
    tabs = [0.0] * k
    for cls, key in zip(classes, keys):
        em = cls.embeddings
        apow = float(cls.A_beta) ** -k / sizes[key]
        for j in range(3):
            bj = em[j]
            xs = [bj - em[jj] for jj in range(3) if jj != j]
            phases = np.exp((2j * math.pi * (bj - math.floor(bj))) * narr)
            for l in range(k):
                pq = pq_ratio(k, l, xs)
                tsum[l] += apow * pq * complex(np.sum(phases * weights[l]))
                tabs[l] += apow * abs(pq)
    pref = 1j * math.gamma(3 * k - 1) / \
        ((4 * math.pi) ** (3 * k - 2) * math.gamma(k))
    value = pref * sum(math.comb(k - 1, l) * (2j * math.pi) ** (k - 1 - l)
                       * tsum[l] for l in range(k))
    if k == 2:
        # the l = 0 tail weight is zeta(1); no finite certificate here
        tail = math.inf
    else:
        ntail = abs(pref) * sum(
            math.comb(k - 1, l) * (2 * math.pi) ** (k - 1 - l) * tabs[l]
            * c_f * n_terms ** (1 - (k / 2 + l)) / (k / 2 + l - 1)
            for l in range(k))
        tail = ntail + _class_tail(field, k, max_index, c_f)
    if tol is not None and tail > tol:
        raise NonconvergentTail(f"tail bound {tail:.3e} exceeds {tol:.3e}")
    return InnerProductResult(complex(value), (max_index, n_terms),
                              float(tail), "PropFormula")


def _delta_norm_cached(tol):
    cached = _delta_norm_cached.cache.get(tol)
    if cached is None:
        from .qseries import delta
        d40 = delta(40)
        cached = petersson_norm_numeric(d40, d40, tol)
        _delta_norm_cached.cache[tol] = cached
    return cached


_delta_norm_cached.cache = {}


def coefficient_oracle_d3(field, k=4):
    """<restriction, weight-12 cusp form> without the class sum: write
    the restriction as E_4^3 + b Delta, use E_4^3 = E_12 + (432000/691)
    Delta and Eisenstein-cusp orthogonality, and scale the quadrature
    norm by b + 432000/691."""
    if field.degree != 3:
        raise ValueError("the oracle route needs a cubic field")
    if k != 4:
        raise ValueError("the monomial shortcut is specific to k = 4")
    from .restrict import table_row
    b = table_row(field, k).coords[1]
    return float(b + Fraction(432000, 691)) * _delta_norm_cached(1e-13)


def _encode_signed(coeffs, step):
    pos = bytearray(len(coeffs) * step)
    neg = bytearray(len(coeffs) * step)
    for i, c in enumerate(coeffs):
        if c > 0:
            pos[i * step:i * step + (c.bit_length() + 7) // 8] = \
                c.to_bytes((c.bit_length() + 7) // 8, "little")
        elif c < 0:
            c = -c
            neg[i * step:i * step + (c.bit_length() + 7) // 8] = \
                c.to_bytes((c.bit_length() + 7) // 8, "little")
    return int.from_bytes(bytes(pos), "little") - \
        int.from_bytes(bytes(neg), "little")


def _kron_square(coeffs, prec, bbits):
    """First prec coefficients of the square of an integer polynomial by
    one big-integer multiply (balanced base-2^bbits digits)."""
    step = bbits // 8
    half = 1 << (bbits - 1)
    bound = max(abs(c) for c in coeffs)
    assert len(coeffs) * bound * bound < half, "digit width too small"
    sq = _encode_signed(coeffs, step) ** 2
    raw = sq.to_bytes(sq.bit_length() // 8 + 1 + step, "little")
    out = []
    carry = 0
    for n in range(prec):
        u = int.from_bytes(raw[n * step:(n + 1) * step], "little") + carry
        if u >= half:
            u -= 1 << bbits
            carry = 1
        else:
            carry = 0
        out.append(u)
    return out


def tau_list(nmax):
    """tau(1..nmax) by squaring the cube of the Euler product three
    times: prod (1-q^m)^3 = sum (-1)^j (2j+1) q^(j(j+1)/2)."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    prec = nmax
    eta3 = [0] * prec
    j = 0
    while j * (j + 1) // 2 < prec:
        eta3[j * (j + 1) // 2] = (2 * j + 1) * (1 if j % 2 == 0 else -1)
        j += 1
    eta6 = _kron_square(eta3, prec, 64)
    eta12 = _kron_square(eta6, prec, 104)
    eta24 = _kron_square(eta12, prec, 224)
    return eta24[:nmax]


def deligne_tau_check(nmax=100000):
    """|tau(n)| <= n^6 for n <= nmax, exactly; the constant c = 1 this
    certifies feeds the tail bounds."""
    taus = tau_list(nmax)
    for n, t in enumerate(taus, start=1):
        if abs(t) > n ** 6:
            return False
    return True


def _quad_pairs(f, g, nq):
    pairs = {}
    for m in range(min(nq + 1, f.prec)):
        am = f.coeffs[m]
        if not am:
            continue
        for n in range(min(nq + 1, g.prec)):
            bn = g.coeffs[n]
            if not bn:
                continue
            key = (m + n, abs(m - n))
            pairs[key] = pairs.get(key, Fraction(0)) + am * bn
    return pairs


def petersson_norm_numeric(f, g, tol=1e-12):
    """<f, g> over the standard fundamental domain with the dudv/v^2
    measure: u-integration is exact per Fourier pair (incomplete gamma
    above v = 1, explicit sine windows below), leaving one tanh-sinh
    v-integral on [sqrt(3)/2, 1]."""
    w = f.weight or g.weight
    if not w or (f.weight and g.weight and f.weight != g.weight):
        raise BadWeight(f"need one common weight, got {f.weight} and "
                        f"{g.weight}")
    if f.coeffs[0] != 0 and g.coeffs[0] != 0:
        raise ValueError("at least one slot must hold a cusp form")
    nq = min(f.prec, g.prec) - 1
    if nq < 2:
        raise ToleranceUnreachable("need at least 3 known coefficients")
    with mpmath.workdps(max(18, 8 + int(-math.log10(tol)))):
        fourpi = 4 * mpmath.pi
        # v >= 1: sum_n a_n b_n (4 pi n)^(1-w) Gamma(w-1, 4 pi n)
        upper = mpmath.mpf(0)
        last = None
        for n in range(1, nq + 1):
            ab = f.coeffs[n] * g.coeffs[n] if n < f.prec and n < g.prec \
                else 0
            term = mpmath.mpf(0)
            if ab:
                term = (mpmath.mpf(ab.numerator) / ab.denominator
                        * (fourpi * n) ** (1 - w)
                        * mpmath.gammainc(w - 1, fourpi * n))
                upper += term
            last = abs(term) if ab else last
        # e^(-4 pi) per index: geometric remainder off the last term
        rem_upper = (last or mpmath.mpf(0)) * mpmath.mpf(2) * \
            mpmath.exp(-fourpi * 1) / (1 - mpmath.exp(-fourpi))
        pairs = _quad_pairs(f, g, nq)
        shells = {}
        for (s, r), ab in pairs.items():
            if s == 0:
                continue
            shells.setdefault(s, []).append((r, ab))
        smax = max(shells) if shells else 0
        vlow = mpmath.sqrt(3) / 2

        def integrand(v):
            u0 = mpmath.sqrt(1 - v * v)
            acc = mpmath.mpf(0)
            for s, items in shells.items():
                ex = mpmath.exp(-2 * mpmath.pi * s * v)
                if ex == 0:
                    continue
                inner = mpmath.mpf(0)
                for r, ab in items:
                    abv = mpmath.mpf(ab.numerator) / ab.denominator
                    if r == 0:
                        inner += abv * (1 - 2 * u0)
                    else:
                        inner -= abv * mpmath.sin(2 * mpmath.pi * r * u0) \
                            / (mpmath.pi * r)
                acc += ex * inner
            return acc * v ** (w - 2)

        lower, err = mpmath.quad(integrand, [vlow, 1], error=True,
                                 maxdegree=8)
        # shell decay bounds the dropped m + n > nq mass
        shell_last = mpmath.mpf(0)
        if smax:
            for r, ab in shells[smax]:
                shell_last += abs(mpmath.mpf(ab.numerator) / ab.denominator)
            shell_last *= mpmath.exp(-2 * mpmath.pi * smax * vlow)
        rem_lower = shell_last
        total_err = abs(err) + rem_upper + rem_lower
        if not total_err < tol:
            raise ToleranceUnreachable(
                f"certified error {float(total_err):.2e} above {tol:.2e}; "
                "supply more coefficients or loosen tol")
        return float(upper + lower)


def niemeier_min_pairing(tol=1e-13):
    """min over rank-24 root numbers of |N_2 - 65520/691| <Delta, Delta>:
    the linear-independence margin for every unimodular theta series."""
    from .restrict import NIEMEIER_N2
    gap = min(abs(Fraction(n2) - Fraction(65520, 691))
              for _, n2 in NIEMEIER_N2)
    return float(gap) * _delta_norm_cached(tol)
