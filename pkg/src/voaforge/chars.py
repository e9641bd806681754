"""Graded q-series characters and the exact identities between them.

Conventions: z tracks the Cartan weight in fundamental-weight units (the
simple root carries z^2), w grades module multiplicity in open families,
and every series is truncated strictly below a stated q-order with
truthful support windows.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .exact import BiSeries, euler_poch, pochhammer, rat

Z_ALPHA = 2  # z-exponent of the simple root


def weight_z(r: int, s: int, p: int) -> Fraction:
    """z-exponent of the highest weight with labels (r, s)."""
    return s - 1 - Fraction(r - 1, p)


def weight_q(r: int, s: int, p: int) -> Fraction:
    """Conformal weight of the highest weight with labels (r, s)."""
    return Fraction((s * p - (r - 1)) ** 2 - p * p, 4 * p)


def f_rs(r: int, s: int, p: int, qorder) -> BiSeries:
    """Leading monomial z^{weight} q^{conformal weight}."""
    return BiSeries.monomial(rat(1), weight_q(r, s, p), weight_z(r, s, p),
                             qorder=qorder)


def denom_D(p: int, qorder) -> BiSeries:
    """(z^a q; q) (z^-a; q) (q; q) with a the simple root."""
    return (pochhammer(1, Z_ALPHA, qorder)
            * pochhammer(0, -Z_ALPHA, qorder)
            * euler_poch(qorder))


def inv_D(p: int, qorder, zlo=None) -> BiSeries:
    if zlo is None:
        zlo = -Z_ALPHA * (int(qorder) + 2)
    return denom_D(p, qorder).inv(zlo=rat(zlo))


def chi(m: int, qorder, var: str = "z") -> BiSeries:
    """Weyl character (x^m - x^-m)/(x - x^-1) as a Laurent polynomial."""
    if m < 0:
        raise ValueError("chi needs m >= 0")
    out = BiSeries.zero(qorder)
    for i in range(m):
        e = m - 1 - 2 * i
        if var == "z":
            out = out + BiSeries.monomial(rat(1), 0, e, qorder=qorder)
        else:
            out = out + BiSeries.monomial(rat(1), 0, 0, we=rat(e),
                                          qorder=qorder)
    return out


def default_zvalid(qorder) -> Fraction:
    return rat(-Z_ALPHA * (int(qorder) + 2))


def _quotient(labels, p: int, qorder, wexps=None, zvalid=None) -> BiSeries:
    """Sum of c * w^we * f_{r,s} over labels, divided by D.

    labels: iterable of (coeff, r, s); wexps aligns optional w-exponents.
    The build order is boosted so the quotient is truthful below qorder
    even when a leading weight is negative, and the inverse cutoff sits a
    numerator-width margin below `zvalid` so every reported z-exponent at
    or above `zvalid` is exact.
    """
    labels = list(labels)
    if not labels:
        return BiSeries.zero(qorder)
    if zvalid is None:
        zvalid = default_zvalid(qorder)
    dmin = min(weight_q(r, s, p) for _, r, s in labels)
    boost = max(rat(0), -dmin)
    qb = rat(qorder) + boost
    num = BiSeries.zero(qb)
    zmax = max(weight_z(r, s, p) for _, r, s in labels)
    for i, (c, r, s) in enumerate(labels):
        we = rat(0) if wexps is None else rat(wexps[i])
        num = num + BiSeries.monomial(rat(c), weight_q(r, s, p),
                                      weight_z(r, s, p), we=we, qorder=qb)
    out = num * inv_D(p, qb, zlo=rat(zvalid) - zmax)
    return out.clip_z(rat(zvalid), None).truncate(qorder)


def ch_betagamma(qorder) -> BiSeries:
    """1 / ((z^a q; q)(z^-a; q))."""
    den = pochhammer(1, Z_ALPHA, qorder) * pochhammer(0, -Z_ALPHA, qorder)
    return den.inv(zlo=rat(-Z_ALPHA * (int(qorder) + 2)))


def ch_weyl_free(p: int, n: int, qorder) -> BiSeries:
    """Free-field route: q^{D(1,n+1)} chi_{n+1}(z) / ((z^a q)(z^-a q)(q))."""
    den = (pochhammer(1, Z_ALPHA, qorder) * pochhammer(1, -Z_ALPHA, qorder)
           * euler_poch(qorder))
    top = chi(n + 1, qorder).shift(qe=weight_q(1, n + 1, p))
    return top * den.inv()


def ch_weyl_simple(p: int, n: int, qorder) -> BiSeries:
    """Simple-quotient route: (f_{1,n+1} - f_{1,-(n+1)}) / D."""
    return _quotient([(1, 1, n + 1), (-1, 1, -(n + 1))], p, qorder)


def weyl_check(p: int, n: int, qorder) -> dict:
    """The Weyl module at level -2 + 1/p is simple: both characters agree."""
    lhs = ch_weyl_free(p, n, qorder)
    rhs = ch_weyl_simple(p, n, qorder)
    return _report({"p": p, "n": n, "qorder": str(rat(qorder))}, lhs, rhs)


def ch_lplus(p: int, r: int, s: int, qorder) -> BiSeries:
    """(f_{r,s} - f_{r,-s}) / D for the positive-series simple module."""
    return _quotient([(1, r, s), (-1, r, -s)], p, qorder)


def ch_lplus_negative(p: int, r: int, m: int, qorder) -> BiSeries:
    """(f_{p-r,-(m-1)} - f_{p-r,m+1}) / D for the reflected label (-r, -m)."""
    return _quotient([(1, p - r, -(m - 1)), (-1, p - r, m + 1)], p, qorder)


def _s_range(r: int, p: int, qorder):
    """All second labels m with weight_q(r, m, p) < qorder."""
    # (m p - (r-1))^2 < 4 p qorder + p^2
    lim = 4 * p * rat(qorder) + p * p
    if lim <= 0:
        return []
    root = math.isqrt(int(lim)) + 2
    lo = -((root - (r - 1)) // p) - 2
    hi = (root + (r - 1)) // p + 2
    return [m for m in range(lo, hi + 1) if weight_q(r, m, p) < qorder]


def a_series(p: int, r: int, s: int, qorder) -> BiSeries:
    """Sum over the full spectral-flow orbit, graded by w."""
    ok_m = set(_s_range(r, p, qorder))
    labels, wexps = [], []
    n = 0
    lo_n = min(((m - s) // 2 for m in ok_m), default=0) - 1
    hi_n = max(((m - s) // 2 for m in ok_m), default=0) + 1
    for n in range(lo_n, hi_n + 1):
        if 2 * n + s in ok_m:
            labels.append((1, r, 2 * n + s))
            wexps.append(s + 2 * n - 1)
    return _quotient(labels, p, qorder, wexps=wexps)


def b_series(p: int, r: int, s: int, qorder) -> BiSeries:
    """Multiplicity-graded sum of positive-series characters."""
    ok_m = set(_s_range(r, p, qorder))
    out = BiSeries.zero(qorder)
    hi_n = (max((abs(m) for m in ok_m), default=0) - s) // 2 + 1
    for n in range(0, max(hi_n, 0) + 1):
        m = 2 * n + s
        if m not in ok_m and -m not in ok_m:
            continue
        piece = _quotient([(1, r, m), (-1, r, -m)], p, qorder)
        out = out + chi(m, qorder, var="w") * piece
    return out


def b_minus_series(p: int, r: int, s: int, qorder) -> BiSeries:
    """Multiplicity-graded sum of reflected-label characters."""
    ok_m = set(_s_range(p - r, p, qorder))
    out = BiSeries.zero(qorder)
    hi_n = (max((abs(m) for m in ok_m), default=0) + 2 - s) // 2 + 1
    for n in range(0, max(hi_n, 0) + 1):
        a, b = -(2 * n + s - 1), 2 * n + s + 1
        if a not in ok_m and b not in ok_m:
            continue
        piece = _quotient([(1, p - r, a), (-1, p - r, b)], p, qorder)
        out = out + chi(2 * n + s, qorder, var="w") * piece
    return out


def decomposition_check(p: int, r: int, s: int, qorder) -> dict:
    """Spectral-flow orbit sum against its two-family decomposition."""
    lhs = a_series(p, r, s, qorder)
    rhs = (b_series(p, r, s, qorder)
           + b_minus_series(p, p - r, 3 - s, qorder).shift(we=-1))
    return _report({"p": p, "r": r, "s": s, "qorder": str(rat(qorder))},
                   lhs, rhs)


def ch_ft(p: int, qorder) -> BiSeries:
    """Sum of (n+1) copies of the even-label Weyl characters."""
    out = BiSeries.zero(qorder)
    n = 0
    while weight_q(1, n + 1, p) < qorder:
        out = out + ch_weyl_simple(p, n, qorder).scale(rat(n + 1))
        n += 2
    return out


# ---------------------------------------------------------------------------
# p = 1: one-boson building blocks


def _tri(n: int) -> Fraction:
    return Fraction(n * (n + 1), 2)


def ch_fock_u(n: int, qorder) -> BiSeries:
    """Character q^{n(n+1)/2}/(q;q) of the charge -n Fock module."""
    inv_eta = euler_poch(qorder).inv()
    return inv_eta.shift(qe=_tri(n)).truncate(qorder)


def ch_m(n: int, qorder) -> BiSeries:
    """Alternating tail sum of Fock characters (kernel of one screen)."""
    out = BiSeries.zero(qorder)
    inv_eta = euler_poch(qorder).inv()
    j = 0
    # the exponent dips while n + j < 0, so do not stop inside the dip
    while n + j < 0 or _tri(n + j) < qorder:
        if _tri(n + j) < qorder:
            out = out + inv_eta.shift(qe=_tri(n + j)).truncate(
                qorder).scale(rat((-1) ** j))
        j += 1
    return out


def p1_decomposition_check(qorder, zmax: int = 6) -> dict:
    """Triple free-field decomposition of the p = 1 kernel character."""
    lhs = ch_ft(1, qorder).clip_z(rat(-zmax), rat(zmax))
    rhs = BiSeries.zero(qorder)
    bound = int(2 * rat(qorder)) + 2
    for n in range(-bound, bound + 1):
        for m in range(-bound, bound + 1):
            if (n + m) % 2 or abs(n + m) > zmax:
                continue
            drop = Fraction((n + m) ** 2, 4)
            if _tri(abs(n)) + _tri(abs(m)) - drop >= qorder:
                continue
            qb = rat(qorder) + drop
            piece = (ch_m(n, qb) * ch_m(m, qb) * euler_poch(qb).inv())
            piece = piece.shift(qe=-drop, ze=rat(n + m)).truncate(qorder)
            rhs = rhs + piece
    rhs = rhs.clip_z(rat(-zmax), rat(zmax))
    return _report({"qorder": str(rat(qorder)), "zmax": zmax}, lhs, rhs)


def _report(params: dict, lhs: BiSeries, rhs: BiSeries) -> dict:
    diff = lhs.diff_on_common(rhs)
    out = dict(params)
    out["ok"] = not diff
    out["lhs"] = lhs.to_json()
    out["rhs"] = rhs.to_json()
    out["residue"] = [
        {"qe": str(k[0]), "ze": str(k[1]), "we": str(k[2]),
         "lhs": str(a), "rhs": str(b)}
        for k, a, b in diff[:20]]
    return out
