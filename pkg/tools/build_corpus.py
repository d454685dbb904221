"""Regenerate the bundled corpus of totally real field records in fields/.

Finds defining polynomials for totally real number fields with prescribed
discriminants (degrees 1 through 6), computes their maximal orders, and
writes one JSON record per field.  The search for primitive generators uses
the Hunter bound: every degree-n field contains an algebraic integer theta,
not in Q, with 0 <= Tr(theta) <= n/2 and

    sum theta_i^2  <=  Tr^2/n + gamma_{n-1} * (D/n)^(1/(n-1)),

so monic integer polynomials whose roots are all real and whose second power
sum obeys that bound are enumerated by a depth-first sweep over coefficient
prefixes (each derivative of a real-rooted polynomial is real-rooted, which
pins each successive coefficient to a short integer interval).  Fields with
proper subfields can escape the primitive sweep; they are picked up by
dedicated relative sweeps (x^4+p*x^2+q, sqrt(delta) over a cubic field, and
quadratic-times-cubic composita).

Usage: python3 tools/build_corpus.py [--degree N|all] [--out DIR]
"""

import argparse
import json
import math
import sys
sys.set_int_max_str_digits(200000)
import os
import sys
import time
from fractions import Fraction

import numpy as np
import sympy

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
from restrictia.linalg import (clear_denominators, det_bareiss, frac_inv,
                               hnf_rows, mat_mul, nullspace_mod)  # noqa: E402

# Hermite constants gamma_1 .. gamma_5
GAMMA = {1: 1.0, 2: (4 / 3) ** 0.5, 3: 2 ** (1 / 3), 4: 2 ** 0.5,
         5: 8 ** (1 / 5)}

TARGETS = {
    2: None,  # filled in main(): all fundamental discriminants <= 200
    3: [49, 81, 148, 169, 229, 257],
    4: [725, 1125, 1600, 1957, 2000, 2048, 2225, 2304, 2525, 2624, 2777,
        3600, 3981, 4205, 4225, 4352, 4400, 4525, 4752, 4913, 5125, 5225,
        5725, 5744, 6125, 6224, 6809, 7053, 7056, 7168],
    5: [14641, 24217, 36497, 38569, 65657, 70601, 81509, 81589, 89417,
        101833, 106069, 117688, 122821, 124817, 126032, 135076, 138136,
        138917, 144209, 147109, 149169, 153424, 157457, 160801, 161121,
        170701, 173513, 176281, 176684, 179024],
    6: [300125, 371293, 434581, 453789, 485125, 592661, 703493, 722000,
        810448, 820125, 905177, 966125, 980125, 1075648, 1081856, 1134389,
        1202933, 1229312, 1241125, 1259712, 1279733, 1292517, 1312625,
        1387029, 1397493, 1416125, 1528713, 1541581, 1683101, 1767625],
}

X = sympy.Symbol("x")


def fundamental_discs(bound):
    def squarefree(m):
        return all(e == 1 for e in sympy.factorint(m).values())

    out = []
    for d in range(5, bound + 1):
        if d % 4 == 1 and squarefree(d):
            out.append(d)
        elif d % 4 == 0 and (d // 4) % 4 in (2, 3) and squarefree(d // 4):
            out.append(d)
    return out


def power_sums_extend(desc, ps, upto):
    """Extend power sums of the roots of a monic poly (descending integer
    coefficients desc = [1, a_1, ..., a_n]) to index `upto` via Newton."""
    n = len(desc) - 1
    s = dict(ps)
    s[0] = n
    for k in range(1, upto + 1):
        if k in s:
            continue
        acc = sum(desc[i] * s[k - i] for i in range(1, min(k - 1, n) + 1))
        s[k] = (-k * desc[k] if k <= n else 0) - acc
    return s


def disc_from_power_sums(desc, ps):
    """Exact polynomial discriminant det(s_{i+j}) of a monic squarefreeish
    integer polynomial, from its root power sums (Hankel determinant)."""
    n = len(desc) - 1
    s = power_sums_extend(desc, ps, 2 * n - 2)
    hank = [[s[i + j] for j in range(n)] for i in range(n)]
    return det_bareiss(hank)


def enum_real_polys(n, s2_cap, trace):
    """Yield (desc, power_sums) for monic integer candidates with all roots
    real (up to numeric slop), fixed trace, and S_2 <= s2_cap.

    desc = [1, a_1, ..., a_n] descending coefficients.
    """
    a1 = -trace
    fact = [math.factorial(i) for i in range(n + 1)]
    eps = 1e-6

    def rec(a, k, ps):
        if k == n + 1:
            yield a, ps
            return
        step = fact[n - k]
        if k == 1:
            lo = hi = a1
        else:
            # critical points: roots of p^{(n-k+1)}, built from a_0..a_{k-1}
            prev = [a[i] * (fact[n - i] // fact[k - 1 - i])
                    for i in range(k)]
            crit = np.sort(np.roots(prev).real) if k >= 2 else []
            # p^{(n-k)}(x) = q(x) + t with t = a_k (n-k)!
            qcoef = [a[i] * (fact[n - i] // fact[k - i]) for i in range(k)]
            qcoef = qcoef + [0]
            lo_t, hi_t = -math.inf, math.inf
            for j, c in enumerate(crit):
                val = float(np.polyval(qcoef, c))
                if (k - 1 - j) % 2 == 0:
                    lo_t = max(lo_t, -val)
                else:
                    hi_t = min(hi_t, -val)
            lo = -10 ** 9 if lo_t == -math.inf \
                else math.ceil((lo_t - eps) / step)
            hi = 10 ** 9 if hi_t == math.inf \
                else math.floor((hi_t + eps) / step)
            if k == 2:
                # S_2 = a_1^2 - 2 a_2 <= s2_cap bounds a_2 from below
                lo = max(lo, math.ceil((a1 * a1 - s2_cap) / 2 - eps))
        for ak in range(lo, hi + 1):
            if k == 1:
                yield from rec(a + [ak], k + 1, {1: -a1})
            elif k == 2:
                s2v = a1 * a1 - 2 * ak
                if s2v <= 0 or s2v > s2_cap:
                    continue
                yield from rec(a + [ak], k + 1, {1: -a1, 2: s2v})
            else:
                # Newton: s_k = -k a_k - sum_{i<k} a_i s_{k-i}
                sk = -k * ak - sum(a[i] * ps[k - i] for i in range(1, k))
                if sk * sk > ps[2] ** k:
                    continue  # power-mean bound |S_k| <= S_2^{k/2}
                nps = dict(ps)
                nps[k] = sk
                yield from rec(a + [ak], k + 1, nps)

    yield from rec([1], 1, {})


def count_real_roots(desc):
    return sympy.Poly(desc, X).count_roots(-sympy.oo, sympy.oo)


def _power_mulmod(desc):
    """Multiplication of power-basis coordinate vectors mod the monic
    defining polynomial (descending integer coefficients desc)."""
    n = len(desc) - 1
    a = [Fraction(c) for c in desc]

    def mulmod(u, v):
        prod = [Fraction(0)] * (2 * n - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj:
                        prod[i + j] += ui * vj
        for d in range(2 * n - 2, n - 1, -1):
            c = prod[d]
            if c:
                prod[d] = Fraction(0)
                for i in range(1, n + 1):
                    prod[d - i] -= c * a[i]
        return prod[:n]

    return mulmod


def _row_times_mat(v, m):
    return [sum(x * m[k][j] for k, x in enumerate(v)) for j in
            range(len(m[0]))]


def _frac_det(mat):
    num, den = clear_denominators(mat)
    return Fraction(det_bareiss(num), den ** len(mat))


def _p_enlarge(B, p, mulmod, n):
    """One Pohst-Zassenhaus step: multiplier ring of the p-radical.

    B: order basis rows over the power basis (Fractions).  Returns the
    enlarged order's basis rows, or None when B is already p-maximal.
    """
    Binv = frac_inv(B)
    # integer multiplication table over the basis B
    W = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            prod = mulmod(B[i], B[j])
            coords = _row_times_mat(prod, Binv)
            assert all(c.denominator == 1 for c in coords), \
                "basis does not span a ring"
            W[i][j] = W[j][i] = [int(c) for c in coords]

    def amul(x, y):
        z = [0] * n
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        w = W[i][j]
                        for k in range(n):
                            z[k] = (z[k] + xi * yj * w[k]) % p
        return z

    def apow(x, e):
        r = None
        base = x
        while e:
            if e & 1:
                r = base if r is None else amul(r, base)
            base = amul(base, base)
            e >>= 1
        return r

    # radical of pA: kernel of the p^j-power Frobenius, p^j >= n
    j = 1
    while p ** j < n:
        j += 1
    frob = []
    for i in range(n):
        t = [1 if k == i else 0 for k in range(n)]
        for _ in range(j):
            t = apow(t, p)
        frob.append(t)
    # row convention: x -> x @ frob; kernel rows from the transposed matrix
    rad = nullspace_mod([[frob[i][k] for i in range(n)] for k in range(n)],
                        p)
    gens = [[p if k == i else 0 for k in range(n)] for i in range(n)]
    gens += [[int(x) for x in r] for r in rad]
    J = hnf_rows(gens)
    Jinv = frac_inv(J)
    # multiplier ring {x : x J subseteq J}: stack the constraint functionals
    constraints = []
    for g in J:
        # Mg rows: coords over B of w_i * g
        Mg = []
        for i in range(n):
            row = [0] * n
            for jj, gj in enumerate(g):
                if gj:
                    w = W[i][jj]
                    for k in range(n):
                        row[k] += gj * w[k]
            Mg.append(row)
        T = mat_mul(Mg, Jinv)
        for col in zip(*T):
            constraints.append(list(col))
    H = hnf_rows(clear_denominators(constraints)[0])
    q = clear_denominators(constraints)[1]
    A = [[Fraction(x, q) for x in row] for row in H]
    D = [list(col) for col in zip(*frac_inv(A))]
    if abs(_frac_det(D)) == 1:
        return None
    return mat_mul(D, B)


def maximal_order(desc):
    """Maximal order of the field defined by a monic irreducible integer
    polynomial (descending coefficients), by the Round-2 algorithm.

    Returns (field_disc, basis_rows) with basis_rows[i] the Fraction
    coordinates of the i-th integral basis element over the power basis,
    HNF-normalized so the first element is 1.
    """
    n = len(desc) - 1
    mulmod = _power_mulmod(desc)
    polydisc = disc_from_power_sums(desc, {})
    B = [[Fraction(1 if i == k else 0) for k in range(n)] for i in range(n)]
    for p, e in sorted(sympy.factorint(polydisc).items()):
        if e < 2:
            continue
        while True:
            Bnew = _p_enlarge(B, p, mulmod, n)
            if Bnew is None:
                break
            B = Bnew
    disc_frac = polydisc * _frac_det(B) ** 2
    assert disc_frac.denominator == 1, "index must divide the poly disc"
    disc = int(disc_frac)
    num, q = clear_denominators(B)
    h = hnf_rows([r[::-1] for r in num])
    basis = [[Fraction(x, q) for x in row[::-1]] for row in reversed(h)]
    assert basis[0] == [Fraction(1)] + [Fraction(0)] * (n - 1), \
        "maximal order should contain 1 as its first HNF vector"
    return disc, basis


def trace_gram_det(desc, basis):
    """Exact det Tr(w_i w_j), as an independent check on round_two."""
    n = len(basis)
    a = [Fraction(c) for c in desc]
    s = power_sums_extend(desc, {}, 2 * n - 2)

    def mulmod(u, v):
        prod = [Fraction(0)] * (2 * n - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj:
                        prod[i + j] += ui * vj
        for d in range(2 * n - 2, n - 1, -1):
            c = prod[d]
            if c:
                prod[d] = Fraction(0)
                for i in range(1, n + 1):
                    prod[d - i] -= c * a[i]
        return prod[:n]

    def tr(u):
        return sum(u[m] * s[m] for m in range(n))

    g = [[tr(mulmod(basis[i], basis[j])) for j in range(n)]
         for i in range(n)]
    num, den = [], 1
    for row in g:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    num = [[int(x * den) for x in row] for row in g]
    return Fraction(det_bareiss(num), den ** n)


def write_record(outdir, degree, disc, desc, basis):
    label = f"deg{degree}-{disc}"
    rec = {
        "label": label,
        "degree": degree,
        "disc": disc,
        "poly": [int(c) for c in reversed(desc)],
        "integral_basis": [[str(f) if f.denominator != 1 else str(f.numerator)
                            for f in row] for row in basis],
    }
    with open(os.path.join(outdir, f"{label}.json"), "w") as fh:
        json.dump(rec, fh, indent=1)
    return label


def process_candidate(desc, ps, targets, found, outdir, degree):
    """Exact-disc target filter, then full validation and record emission."""
    if desc[-1] == 0:
        return
    disc = disc_from_power_sums(desc, ps)
    if disc <= 0 or disc > 10 ** 24:
        # a generator with an astronomically large index is useless even
        # when the field disc matches; a smaller generator will be found
        return
    hits = [t for t in targets
            if t not in found and disc % t == 0
            and math.isqrt(disc // t) ** 2 == disc // t]
    if not hits:
        return
    p = sympy.Poly(desc, X)
    if not p.is_irreducible:
        return
    if count_real_roots(desc) != degree:
        return
    fdisc, basis = maximal_order(desc)
    if fdisc in targets and fdisc not in found:
        g = trace_gram_det(desc, basis)
        assert g == fdisc, f"trace gram {g} != round_two disc {fdisc}"
        label = write_record(outdir, degree, fdisc, desc, basis)
        found[fdisc] = label
        print(f"  found {label}  poly={desc}", flush=True)


def primitive_sweep(degree, targets, found, outdir):
    dmax = max(targets)
    t0 = time.time()
    tried = 0
    for trace in range(0, degree // 2 + 1):
        s2_cap = trace * trace / degree + \
            GAMMA[degree - 1] * (dmax / degree) ** (1 / (degree - 1))
        print(f"degree {degree} trace {trace} s2_cap {s2_cap:.2f}",
              flush=True)
        for desc, ps in enum_real_polys(degree, s2_cap, trace):
            tried += 1
            if tried % 500000 == 0:
                print(f"  ... {tried} candidates, {time.time() - t0:.0f}s, "
                      f"{len(found)}/{len(targets)} found", flush=True)
            process_candidate(desc, ps, targets, found, outdir, degree)
            if len(found) == len(targets):
                return
    print(f"degree {degree}: primitive sweep done, {tried} candidates, "
          f"{time.time() - t0:.0f}s", flush=True)


def quartic_pure_sweep(targets, found, outdir):
    """x^4 + p x^2 + q sweep: quartics with a quadratic subfield."""
    for p in range(-1, -221, -1):
        for q in range(1, p * p // 4 + 1):
            desc = [1, 0, p, 0, q]
            ps = power_sums_extend(desc, {}, 2)
            process_candidate(desc, ps, targets, found, outdir, 4)
            if len(found) == len(targets):
                return


def cubic_fields_upto(bound):
    """All totally real cubic fields with disc <= bound: disc -> (desc,
    basis).  Complete by Hunter (degree 3 has no intermediate fields)."""
    results = {}
    for trace in (0, 1):
        s2_cap = trace * trace / 3 + GAMMA[2] * (bound / 3) ** 0.5
        for desc, ps in enum_real_polys(3, s2_cap, trace):
            if desc[-1] == 0:
                continue
            disc = disc_from_power_sums(desc, ps)
            if disc <= 0 or disc > bound * 4096:
                continue
            p = sympy.Poly(desc, X)
            if not p.is_irreducible:
                continue
            if count_real_roots(desc) != 3:
                continue
            fdisc, basis = maximal_order(desc)
            if fdisc <= bound and fdisc not in results:
                results[fdisc] = (desc, basis)
    return results


def sextic_relative_sweep(targets, found, outdir, coord_bound=9):
    """Minimal polynomials of sqrt(delta) for totally positive delta in
    totally real cubic fields: sextics with a cubic subfield."""
    dmax = max(targets)
    cubics = cubic_fields_upto(int(math.isqrt(dmax)) + 1)
    print(f"sextic relative sweep over {len(cubics)} cubic fields",
          flush=True)
    for d3 in sorted(cubics):
        desc3, basis = cubics[d3]
        a = [Fraction(c) for c in desc3]

        def mulmod(u, v):
            prod = [Fraction(0)] * 5
            for i, ui in enumerate(u):
                if ui:
                    for j, vj in enumerate(v):
                        if vj:
                            prod[i + j] += ui * vj
            for dd in (4, 3):
                c = prod[dd]
                if c:
                    prod[dd] = Fraction(0)
                    for i in range(1, 4):
                        prod[dd - i] -= c * a[i]
            return prod[:3]

        # skip bases that cannot reach any remaining target: the target
        # must be d3^2 * Nm(relative different) * square for a small index
        live = [t for t in targets if t not in found]
        if not any(t * k * k % (d3 * d3) == 0
                   for t in live for k in range(1, 13)):
            continue
        roots = np.sort(np.roots([float(c) for c in desc3]).real)
        emb = np.array([[float(sum(basis[t][i] * r ** i for i in range(3)))
                         for t in range(3)] for r in roots])
        B = coord_bound
        for c0 in range(0, 3 * B + 1):
            for c1 in range(-B, B + 1):
                for c2 in range(-B, B + 1):
                    if c1 == 0 and c2 == 0:
                        continue  # rational delta: not a sextic generator
                    vals = emb @ np.array([c0, c1, c2], dtype=float)
                    if np.any(vals < 1e-9):
                        continue
                    # disc of prod (x^2 - delta_i) is 64 Nm(delta) dg^2
                    # with dg the square of root differences; cheap float
                    # square-quotient filter before any exact work
                    dg = ((vals[0] - vals[1]) * (vals[0] - vals[2])
                          * (vals[1] - vals[2])) ** 2
                    dh = 64.0 * vals[0] * vals[1] * vals[2] * dg * dg
                    if dh < 0.5 or dh > 5e9:
                        continue  # generator index would exceed ~50
                    live = [t for t in targets if t not in found]
                    if not any(abs(round((dh / t) ** 0.5) ** 2 * t - dh)
                               <= 1e-6 * dh for t in live):
                        continue
                    delta = [c0 * basis[0][i] + c1 * basis[1][i]
                             + c2 * basis[2][i] for i in range(3)]
                    cols = [mulmod(delta, [1, 0, 0]),
                            mulmod(delta, [0, 1, 0]),
                            mulmod(delta, [0, 0, 1])]
                    # char poly of mult-by-delta: x^3 - e1 x^2 + e2 x - e3
                    e1 = cols[0][0] + cols[1][1] + cols[2][2]
                    e2 = (cols[0][0] * cols[1][1] - cols[1][0] * cols[0][1]
                          + cols[0][0] * cols[2][2]
                          - cols[2][0] * cols[0][2]
                          + cols[1][1] * cols[2][2]
                          - cols[2][1] * cols[1][2])
                    e3 = (cols[0][0] * (cols[1][1] * cols[2][2]
                                        - cols[2][1] * cols[1][2])
                          - cols[1][0] * (cols[0][1] * cols[2][2]
                                          - cols[2][1] * cols[0][2])
                          + cols[2][0] * (cols[0][1] * cols[1][2]
                                          - cols[1][1] * cols[0][2]))
                    if any(f.denominator != 1 for f in (e1, e2, e3)):
                        continue
                    desc = [1, 0, -int(e1), 0, int(e2), 0, -int(e3)]
                    ps = power_sums_extend(desc, {}, 2)
                    process_candidate(desc, ps, targets, found, outdir, 6)
                    if len(found) == len(targets):
                        return


def compositum_sweep(targets, found, outdir):
    """Degree-6 composita of a real quadratic and a totally real cubic."""
    dmax = max(targets)
    cubics = cubic_fields_upto(int((dmax / 125) ** 0.5) + 80)
    quads = fundamental_discs(int(round(dmax ** (1 / 3))) + 1)
    y = sympy.Symbol("y")
    for d2 in quads:
        if d2 % 4 == 1:
            g = sympy.Poly([1, -1, -(d2 - 1) // 4], X)
        else:
            g = sympy.Poly([1, 0, -d2 // 4], X)
        for d3 in sorted(cubics):
            if d2 ** 3 * d3 ** 2 > dmax * 4096:
                continue
            desc3, _ = cubics[d3]
            f = sympy.Poly(desc3, X)
            for t in (1, 2, 3, -1):
                h = sympy.resultant(
                    f.as_expr().subs(X, X - t * y), g.as_expr().subs(X, y),
                    y)
                hp = sympy.Poly(sympy.expand(h), X)
                if hp.degree() != 6 or not hp.is_irreducible:
                    continue
                desc = [int(c) for c in hp.all_coeffs()]
                ps = power_sums_extend(desc, {}, 2)
                process_candidate(desc, ps, targets, found, outdir, 6)
                break
            if len(found) == len(targets):
                return


def quad_relative_sweep(targets, found, outdir, bbox=13, slack=600):
    """Degree-6 fields with a real quadratic subfield: monic relative
    cubics x^3 + alpha x^2 + beta x + gamma over O_{F2}, alpha reduced mod
    3 O_{F2}, filtered on the two embeddings of the relative polynomial
    discriminant (both positive, integer norm with d2^3 * Nm dividing a
    target times a square), resolved exactly by a resultant in the end."""
    dmax = max(targets)
    y = sympy.Symbol("y")
    coords = np.arange(-bbox, bbox + 1)
    for d2 in fundamental_discs(int(round(dmax ** (1 / 3))) + 1):
        if d2 ** 3 > dmax:
            continue
        if d2 % 4 == 1:
            g2 = [1, -1, -(d2 - 1) // 4]
            w1 = (1 + d2 ** 0.5) / 2
        else:
            g2 = [1, 0, -d2 // 4]
            w1 = (d2 ** 0.5) / 2
        w2 = (g2[1] / -1) - w1  # conjugate root: sum = -g2[1]
        rel_bound = dmax // d2 ** 3
        grid1 = (coords[:, None] + w1 * coords[None, :]).ravel()
        grid2 = (coords[:, None] + w2 * coords[None, :]).ravel()
        for a0 in range(3):
            for a1 in range(3):
                al1 = a0 + a1 * w1
                al2 = a0 + a1 * w2
                d1 = (18 * al1 * grid1[:, None] * grid1[None, :]
                      - 4 * al1 ** 3 * grid1[None, :]
                      + al1 ** 2 * grid1[:, None] ** 2
                      - 4 * grid1[:, None] ** 3
                      - 27 * grid1[None, :] ** 2)
                d2e = (18 * al2 * grid2[:, None] * grid2[None, :]
                       - 4 * al2 ** 3 * grid2[None, :]
                       + al2 ** 2 * grid2[:, None] ** 2
                       - 4 * grid2[:, None] ** 3
                       - 27 * grid2[None, :] ** 2)
                nm = d1 * d2e
                ok = np.argwhere((d1 > 0.5) & (d2e > 0.5)
                                 & (nm <= rel_bound * slack))
                if ok.size == 0:
                    continue
                side = coords.size
                for i, j in ok:
                    absn = int(round(nm[i, j])) * d2 ** 3
                    hit = any(t not in found and absn % t == 0
                              and math.isqrt(absn // t) ** 2 == absn // t
                              for t in targets)
                    if not hit:
                        continue
                    b0, b1 = coords[i // side], coords[i % side]
                    c0, c1 = coords[j // side], coords[j % side]
                    h = sympy.resultant(
                        sympy.Poly(g2, y).as_expr(),
                        X ** 3 + (a0 + a1 * y) * X ** 2
                        + (b0 + b1 * y) * X + (c0 + c1 * y), y)
                    hp = sympy.Poly(sympy.expand(h), X)
                    if hp.degree() != 6:
                        continue
                    desc = [int(c) for c in hp.all_coeffs()]
                    ps = power_sums_extend(desc, {}, 2)
                    process_candidate(desc, ps, targets, found, outdir, 6)
        print(f"  quad-relative base {d2} done ({len(found)} found)",
              flush=True)
        if len(found) == len(targets):
            return


def build_degree(degree, outdir):
    targets = TARGETS[degree]
    found = {}
    if degree == 2:
        for d in targets:
            desc = [1, -1, -(d - 1) // 4] if d % 4 == 1 else [1, 0, -d // 4]
            fdisc, basis = maximal_order(desc)
            assert fdisc == d, (d, fdisc)
            found[d] = write_record(outdir, 2, d, desc, basis)
        print(f"degree 2: wrote {len(found)} records", flush=True)
        return found
    if degree == 6:
        # cheap structured sweeps first: they hit many of the targets
        compositum_sweep(set(targets), found, outdir)
        sextic_relative_sweep(set(targets), found, outdir)
        if len(found) < len(targets):
            quad_relative_sweep(set(targets), found, outdir)
    if len(found) < len(targets):
        primitive_sweep(degree, set(targets), found, outdir)
    if degree == 4 and len(found) < len(targets):
        quartic_pure_sweep(set(targets), found, outdir)
    missing = sorted(set(targets) - set(found))
    if missing:
        print(f"degree {degree}: MISSING {missing}", flush=True)
    else:
        print(f"degree {degree}: complete ({len(found)} fields)",
              flush=True)
    return found


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--degree", default="all")
    ap.add_argument("--out", default="fields")
    args = ap.parse_args()
    TARGETS[2] = fundamental_discs(200)
    os.makedirs(args.out, exist_ok=True)

    if args.degree in ("1", "all"):
        with open(os.path.join(args.out, "deg1-1.json"), "w") as fh:
            json.dump({"label": "deg1-1", "degree": 1, "disc": 1,
                       "poly": [-1, 1], "integral_basis": [["1"]]}, fh,
                      indent=1)
        print("degree 1: wrote rationals record", flush=True)
    degrees = [2, 3, 4, 5, 6] if args.degree == "all" \
        else [int(args.degree)]
    for deg in degrees:
        if deg != 1:
            build_degree(deg, args.out)


if __name__ == "__main__":
    main()
