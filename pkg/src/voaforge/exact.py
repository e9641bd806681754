"""Exact arithmetic kernels: rationals, cyclotomic numbers, truncated series.

Everything in this package is exact; no floats anywhere. Rationals are
stdlib Fractions. Cyclotomic numbers live in Q(zeta_{2p}) represented
densely modulo the cyclotomic polynomial Phi_{2p}. Series are Laurent
series in q with Laurent "polynomial" parts in z and w per q-level,
truncated at a q-order and optionally windowed in z and w.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Optional

Rat = Fraction


def rat(x) -> Fraction:
    """Coerce int/str/Fraction to Fraction. Strings use 'a/b' form."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Rat")


def rat_str(x: Fraction) -> str:
    return str(Fraction(x))


def binomial(n: int, k: int) -> int:
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k) if k <= n else 0
    # (-m choose k) = (-1)^k (m+k-1 choose k)
    m = -n
    return (-1) ** k * comb(m + k - 1, k)


# ---------------------------------------------------------------------------
# dense polynomials over Q, low degree first (support for the cyclotomics)

def _poly_trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b) and _poly_trim(a):
        if not a or len(a) < len(b):
            break
        c = a[-1] * inv_lead
        d = len(a) - len(b)
        q[d] = c
        for j, bj in enumerate(b):
            a[d + j] -= c * bj
        _poly_trim(a)
    return _poly_trim(q), _poly_trim(a)


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


_CYCLO_CACHE: dict[int, tuple[Fraction, ...]] = {}


def cyclotomic_poly(n: int) -> tuple[Fraction, ...]:
    """Coefficients of Phi_n, low degree first."""
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    # x^n - 1 divided by the product of Phi_d over proper divisors d | n
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    den = [Fraction(1)]
    for d in _divisors(n)[:-1]:
        den = _poly_mul(den, list(cyclotomic_poly(d)))
    q, r = _poly_divmod(num, den)
    if r:
        raise ArithmeticError("cyclotomic division not exact")
    _CYCLO_CACHE[n] = tuple(q)
    return _CYCLO_CACHE[n]


def euler_phi(n: int) -> int:
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


class Cyclo:
    """Element of Q(zeta_{2p}), zeta_{2p} = exp(pi i / p).

    Dense Fraction vector of length phi(2p) modulo Phi_{2p}. For p = 1 the
    field is Q itself (zeta_2 = -1).
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[Fraction]):
        if p < 1:
            raise ValueError("p must be >= 1")
        self.p = p
        deg = euler_phi(2 * p)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            cs = _reduce_mod_cyclo(cs, 2 * p)
        cs += [Fraction(0)] * (deg - len(cs))
        self.coeffs = tuple(cs)

    # -- constructors
    @classmethod
    def zero(cls, p: int) -> "Cyclo":
        return cls(p, [])

    @classmethod
    def one(cls, p: int) -> "Cyclo":
        return cls(p, [Fraction(1)])

    @classmethod
    def rational(cls, p: int, r) -> "Cyclo":
        return cls(p, [rat(r)])

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "Cyclo":
        """zeta_{2p}^k."""
        k %= 2 * p
        cs = [Fraction(0)] * k + [Fraction(1)]
        return cls(p, cs)

    # -- ring ops
    def _chk(self, other: "Cyclo"):
        if self.p != other.p:
            raise ValueError("mixed cyclotomic fields")

    def __add__(self, other: "Cyclo") -> "Cyclo":
        self._chk(other)
        return Cyclo(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Cyclo") -> "Cyclo":
        self._chk(other)
        return Cyclo(self.p, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.p, [-a for a in self.coeffs])

    def __mul__(self, other) -> "Cyclo":
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.p, [a * other for a in self.coeffs])
        self._chk(other)
        prod = _poly_mul(list(self.coeffs), list(other.coeffs))
        return Cyclo(self.p, prod)

    __rmul__ = __mul__

    def inv(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi = list(cyclotomic_poly(2 * self.p))
        # extended euclid: s*self + t*phi = gcd = const
        r0, r1 = phi, _poly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r2 = _poly_divmod(r0, r1)
            r0, r1 = r1, r2
            s0, s1 = s1, _poly_trim([a - b for a, b in
                                     _zip_pad(s0, _poly_mul(q, s1))])
        if len(r0) != 1:
            raise ArithmeticError("cyclotomic polynomial not irreducible?")
        c = 1 / r0[0]
        return Cyclo(self.p, [a * c for a in s0])

    def __truediv__(self, other) -> "Cyclo":
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.p, [a / other for a in self.coeffs])
        self._chk(other)
        return self * other.inv()

    def __pow__(self, n: int) -> "Cyclo":
        if n < 0:
            return self.inv() ** (-n)
        out = Cyclo.one(self.p)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational cyclotomic number")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclo.rational(self.p, other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                bits.append(str(c))
            else:
                mono = "z" if i == 1 else f"z^{i}"
                bits.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")

    def to_json(self):
        return {"p": self.p, "coeffs": [rat_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, d) -> "Cyclo":
        return cls(d["p"], [rat(c) for c in d["coeffs"]])


def _zip_pad(a: list[Fraction], b: list[Fraction]):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def _reduce_mod_cyclo(cs: list[Fraction], n: int) -> list[Fraction]:
    _, r = _poly_divmod(cs, list(cyclotomic_poly(n)))
    return r


# ---------------------------------------------------------------------------
# truncated Laurent series in (q, z, w)

_NEG_INF = None  # window bound sentinels are None

Key = tuple[Fraction, Fraction, Fraction]


def _win_contains(win, x: Fraction) -> bool:
    lo, hi = win
    if lo is not None and x < lo:
        return False
    if hi is not None and x > hi:
        return False
    return True


def _win_add(a, b):
    alo, ahi = a
    blo, bhi = b
    lo = None if (alo is None or blo is None) else alo + blo
    hi = None if (ahi is None or bhi is None) else ahi + bhi
    return (lo, hi)


def _win_intersect(a, b):
    alo, ahi = a
    blo, bhi = b
    lo = blo if alo is None else (alo if blo is None else max(alo, blo))
    hi = bhi if ahi is None else (ahi if bhi is None else min(ahi, bhi))
    return (lo, hi)


def _win_union(a, b):
    alo, ahi = a
    blo, bhi = b
    lo = None if (alo is None or blo is None) else min(alo, blo)
    hi = None if (ahi is None or bhi is None) else max(ahi, bhi)
    return (lo, hi)


def _norm_win(win) -> tuple:
    if win is None:
        return (None, None)
    lo, hi = win
    return (None if lo is None else rat(lo), None if hi is None else rat(hi))


class BiSeries:
    """q-series with Laurent parts in z (and optionally w) per q-level.

    Coefficients are known exactly for q-exponents strictly below `qorder`
    and z-, w-exponents inside the windows. Windows are true support bounds
    for everything produced by the arithmetic here; `clip_*` narrows a
    window by discarding terms, so multiply before clipping. Within one
    series all q-exponents share a residue mod 1, likewise for z and w.
    """

    __slots__ = ("terms", "qorder", "zwin", "wwin")

    def __init__(self, terms, qorder, zwin=(None, None), wwin=(None, None)):
        self.qorder = rat(qorder)
        self.zwin = _norm_win(zwin)
        self.wwin = _norm_win(wwin)
        clean: dict[Key, Fraction] = {}
        for (qe, ze, we), c in terms.items():
            c = rat(c)
            if c == 0:
                continue
            qe, ze, we = rat(qe), rat(ze), rat(we)
            if qe >= self.qorder:
                continue
            if not _win_contains(self.zwin, ze):
                continue
            if not _win_contains(self.wwin, we):
                continue
            clean[(qe, ze, we)] = c
        self.terms = clean
        self._check_classes()

    def _check_classes(self):
        for idx, name in ((0, "q"), (1, "z"), (2, "w")):
            seen = None
            for key in self.terms:
                r = key[idx] % 1
                if seen is None:
                    seen = r
                elif r != seen:
                    raise ValueError(
                        f"mixed {name}-exponent classes in one series: "
                        f"{seen} vs {r}")

    # -- constructors
    @classmethod
    def zero(cls, qorder, zwin=(None, None), wwin=(None, None)) -> "BiSeries":
        return cls({}, qorder, zwin, wwin)

    @classmethod
    def monomial(cls, coeff, qe=0, ze=0, we=0, qorder=10,
                 zwin=(None, None), wwin=(None, None)) -> "BiSeries":
        return cls({(rat(qe), rat(ze), rat(we)): rat(coeff)},
                   qorder, zwin, wwin)

    @classmethod
    def one(cls, qorder) -> "BiSeries":
        return cls.monomial(1, qorder=qorder)

    # -- inspection
    def coeff(self, qe, ze=0, we=0) -> Fraction:
        key = (rat(qe), rat(ze), rat(we))
        if key[0] >= self.qorder:
            raise ValueError(f"coefficient at q^{qe} beyond truncation order")
        return self.terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def min_q(self) -> Optional[Fraction]:
        return min((k[0] for k in self.terms), default=None)

    def support_z(self):
        if not self.terms:
            return None
        zs = [k[1] for k in self.terms]
        return (min(zs), max(zs))

    def q_levels(self) -> dict[Fraction, dict[tuple[Fraction, Fraction], Fraction]]:
        out: dict[Fraction, dict] = {}
        for (qe, ze, we), c in self.terms.items():
            out.setdefault(qe, {})[(ze, we)] = c
        return out

    # -- arithmetic
    def __add__(self, other: "BiSeries") -> "BiSeries":
        if isinstance(other, (int, Fraction)):
            other = BiSeries.monomial(other, qorder=self.qorder)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return BiSeries(terms, min(self.qorder, other.qorder),
                        _win_union(self.zwin, other.zwin),
                        _win_union(self.wwin, other.wwin))

    __radd__ = __add__

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def __neg__(self) -> "BiSeries":
        return self.scale(Fraction(-1))

    def scale(self, c) -> "BiSeries":
        c = rat(c)
        return BiSeries({k: c * v for k, v in self.terms.items()},
                        self.qorder, self.zwin, self.wwin)

    def shift(self, qe=0, ze=0, we=0) -> "BiSeries":
        """Multiply by the monomial q^qe z^ze w^we."""
        qe, ze, we = rat(qe), rat(ze), rat(we)
        terms = {(k[0] + qe, k[1] + ze, k[2] + we): c
                 for k, c in self.terms.items()}
        return BiSeries(terms, self.qorder + qe,
                        _win_add(self.zwin, ((ze, ze))),
                        _win_add(self.wwin, ((we, we))))

    def __mul__(self, other) -> "BiSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        aq0 = self.min_q()
        bq0 = other.min_q()
        aq0 = self.qorder if aq0 is None else min(aq0, self.qorder)
        bq0 = other.qorder if bq0 is None else min(bq0, other.qorder)
        qorder = min(self.qorder + bq0, other.qorder + aq0)
        terms: dict[Key, Fraction] = {}
        for (qa, za, wa), ca in self.terms.items():
            for (qb, zb, wb), cb in other.terms.items():
                qe = qa + qb
                if qe >= qorder:
                    continue
                key = (qe, za + zb, wa + wb)
                terms[key] = terms.get(key, Fraction(0)) + ca * cb
        return BiSeries(terms, qorder,
                        _win_add(self.zwin, other.zwin),
                        _win_add(self.wwin, other.wwin))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiSeries":
        if n < 0:
            raise ValueError("negative powers: use inv() explicitly")
        if n == 0:
            return BiSeries.one(self.qorder)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    # -- truncation / windows
    def truncate(self, qorder) -> "BiSeries":
        qorder = rat(qorder)
        if qorder > self.qorder:
            raise ValueError("cannot extend a truncated series")
        return BiSeries(self.terms, qorder, self.zwin, self.wwin)

    def clip_z(self, lo, hi) -> "BiSeries":
        win = _win_intersect(self.zwin, _norm_win((lo, hi)))
        return BiSeries(self.terms, self.qorder, win, self.wwin)

    def clip_w(self, lo, hi) -> "BiSeries":
        win = _win_intersect(self.wwin, _norm_win((lo, hi)))
        return BiSeries(self.terms, self.qorder, self.zwin, win)

    def ct_w(self) -> "BiSeries":
        """Constant term in w."""
        terms = {k: c for k, c in self.terms.items() if k[2] == 0}
        return BiSeries(terms, self.qorder, self.zwin, (0, 0))

    # -- inversion
    def inv(self, zlo=None) -> "BiSeries":
        """Multiplicative inverse as a truncated series.

        Requires a w-free series whose lowest q-level has a unique term of
        maximal z-exponent. When the expansion runs to arbitrarily low
        z-exponents a cutoff `zlo` must be supplied; the result is then
        supported on [zlo, inf).
        """
        if any(k[2] != 0 for k in self.terms):
            raise ValueError("inverse implemented for w-free series only")
        if not self.terms:
            raise ValueError("series with zero known part is not invertible")
        q0 = self.min_q()
        lead_block = [(k, c) for k, c in self.terms.items() if k[0] == q0]
        z0 = max(k[1] for k, _ in lead_block)
        lead = [(k, c) for k, c in lead_block if k[1] == z0]
        (lq, lz, lw), lc = lead[0]
        qorder_out = self.qorder - 2 * q0
        # R = self / (lc q^q0 z^z0) - 1, so every term has qe > 0, or
        # qe == 0 with ze < 0
        r_terms: dict[Key, Fraction] = {}
        min_pos_q = None
        max_rise = Fraction(0)
        zdrop = None
        for (qe, ze, we), c in self.terms.items():
            kq, kz = qe - q0, ze - z0
            if kq == 0 and kz == 0:
                continue
            r_terms[(kq, kz, Fraction(0))] = c / lc
            if kq > 0:
                min_pos_q = kq if min_pos_q is None else min(min_pos_q, kq)
                if kz > 0:
                    max_rise = max(max_rise, kz)
            else:
                zdrop = -kz if zdrop is None else min(zdrop, -kz)
        if zdrop is not None and zlo is None:
            raise ValueError(
                "inverse has unbounded z-support; supply a zlo cutoff")
        if zlo is None:
            zcut = (None, None)
        else:
            # a clipped term can climb back at most rise-per-q-step times
            # the number of q-steps available
            steps = 0
            if min_pos_q is not None and max_rise > 0:
                steps = int(qorder_out / min_pos_q) + 1
            slack = steps * max_rise
            zcut = (rat(zlo) + z0 - slack, None)
        r = BiSeries(r_terms, qorder_out, zcut)
        geom = BiSeries.one(qorder_out)
        power = BiSeries.one(qorder_out)
        sign = Fraction(-1)
        while True:
            power = BiSeries((power * r).terms, qorder_out, zcut)
            if power.is_zero():
                break
            geom = geom + power.scale(sign)
            sign = -sign
        out = geom.shift(qe=-q0, ze=-z0).scale(1 / lc)
        out = BiSeries(out.terms, qorder_out,
                       (None, None) if zlo is None else (rat(zlo), None))
        return out

    # -- comparison
    def common_window(self, other: "BiSeries"):
        return (min(self.qorder, other.qorder),
                _win_intersect(self.zwin, other.zwin),
                _win_intersect(self.wwin, other.wwin))

    def eq_on_common(self, other: "BiSeries") -> bool:
        return not self.diff_on_common(other)

    def diff_on_common(self, other: "BiSeries") -> list:
        """Mismatching keys on the common window, sorted; empty if equal."""
        qo, zw, ww = self.common_window(other)
        a = BiSeries(self.terms, qo, zw, ww)
        b = BiSeries(other.terms, qo, zw, ww)
        keys = set(a.terms) | set(b.terms)
        out = []
        for k in keys:
            ca = a.terms.get(k, Fraction(0))
            cb = b.terms.get(k, Fraction(0))
            if ca != cb:
                out.append((k, ca, cb))
        out.sort()
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.eq_on_common(other)

    def __hash__(self):
        return id(self)

    # -- serialization
    def to_json(self):
        def wb(w):
            lo, hi = w
            return [None if lo is None else rat_str(lo),
                    None if hi is None else rat_str(hi)]
        out = {
            "qOrder": rat_str(self.qorder),
            "zWindow": wb(self.zwin),
            "terms": [],
        }
        has_w = any(k[2] != 0 for k in self.terms) or self.wwin != (None, None)
        if has_w:
            out["wWindow"] = wb(self.wwin)
        for (qe, ze, we) in sorted(self.terms):
            t = {"q": rat_str(qe), "z": rat_str(ze),
                 "c": rat_str(self.terms[(qe, ze, we)])}
            if has_w:
                t["w"] = rat_str(we)
            out["terms"].append(t)
        return out

    @classmethod
    def from_json(cls, d) -> "BiSeries":
        def rb(v):
            return None if v is None else rat(v)
        zwin = tuple(rb(x) for x in d.get("zWindow", [None, None]))
        wwin = tuple(rb(x) for x in d.get("wWindow", [None, None]))
        terms = {}
        for t in d["terms"]:
            key = (rat(t["q"]), rat(t["z"]), rat(t.get("w", 0)))
            terms[key] = rat(t["c"])
        return cls(terms, rat(d["qOrder"]), zwin, wwin)

    def __repr__(self):
        if not self.terms:
            return f"BiSeries(0; O(q^{self.qorder}))"
        bits = []
        for (qe, ze, we) in sorted(self.terms)[:12]:
            c = self.terms[(qe, ze, we)]
            mono = []
            if qe:
                mono.append(f"q^{qe}")
            if ze:
                mono.append(f"z^{ze}")
            if we:
                mono.append(f"w^{we}")
            m = "*".join(mono) or "1"
            bits.append(f"{c}*{m}")
        more = "" if len(self.terms) <= 12 else f" +{len(self.terms)-12} terms"
        return f"BiSeries({' + '.join(bits)}{more}; O(q^{self.qorder}))"


def series_inv(s: BiSeries, zlo=None) -> BiSeries:
    return s.inv(zlo=zlo)


def ct_extract(s: BiSeries) -> BiSeries:
    return s.ct_w()


# ---------------------------------------------------------------------------
# Pochhammer factories

def pochhammer(aq, az, qorder) -> BiSeries:
    """(x; q)_infinity with x = z^az q^aq, truncated below q^qorder.

    Needs aq > 0, or aq == 0 with az < 0 (then the j = 0 factor is the only
    one contributing at q^0 and z-support at level q^m is bounded).
    """
    aq, az = rat(aq), rat(az)
    if aq < 0 or (aq == 0 and az >= 0):
        raise ValueError("pochhammer needs aq > 0 or (aq == 0 and az < 0)")
    out = BiSeries.one(qorder)
    j = 0
    while aq + j < qorder:
        factor = BiSeries({(Fraction(0), Fraction(0), Fraction(0)): Fraction(1),
                           (aq + j, az, Fraction(0)): Fraction(-1)}, qorder)
        out = out * factor
        j += 1
    return BiSeries(out.terms, qorder)


def euler_poch(qorder) -> BiSeries:
    """(q; q)_infinity."""
    return pochhammer(1, 0, qorder)
