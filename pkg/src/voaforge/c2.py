"""C2 Poisson algebra: polynomial images, ideal equality, nilpotency.

Everything runs in the commutative ring Q[abar, beta, gamma] with the
Poisson structure {beta, gamma} = 1 and abar central. Ideal computations
use Buchberger with graded lexicographic order, abar > beta > gamma.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .exact import rat, rat_str

ABG = ("abar", "beta", "gamma")
HEF = ("h", "e", "f")


class Poly:
    """Multivariate polynomial with Fraction coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = tuple(ring)
        self.terms = {k: rat(v) for k, v in terms.items() if v != 0}

    @classmethod
    def zero(cls, ring) -> "Poly":
        return cls(ring, {})

    @classmethod
    def const(cls, ring, c) -> "Poly":
        return cls(ring, {(0,) * len(ring): rat(c)})

    @classmethod
    def var(cls, ring, name, power: int = 1) -> "Poly":
        i = tuple(ring).index(name)
        exps = tuple(power if j == i else 0 for j in range(len(ring)))
        return cls(ring, {exps: Fraction(1)})

    def _chk(self, other: "Poly"):
        if self.ring != other.ring:
            raise ValueError("polynomials in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.ring, other)
        self._chk(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, Fraction(0)) + v
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.ring, other)
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = rat(c)
        return Poly(self.ring, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._chk(other)
        t: dict = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                t[k] = t.get(k, Fraction(0)) + va * vb
        return Poly(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(self.ring, 1)
        for _ in range(n):
            out = out * self
        return out

    def diff(self, name) -> "Poly":
        i = self.ring.index(name)
        t: dict = {}
        for k, v in self.terms.items():
            if k[i] == 0:
                continue
            nk = tuple(e - 1 if j == i else e for j, e in enumerate(k))
            t[nk] = t.get(nk, Fraction(0)) + v * k[i]
        return Poly(self.ring, t)

    def subs(self, images: dict) -> "Poly":
        """Ring map sending each variable to a Poly in the target ring."""
        tgt = next(iter(images.values())).ring
        out = Poly.zero(tgt)
        for k, v in self.terms.items():
            mono = Poly.const(tgt, v)
            for name, e in zip(self.ring, k):
                if e:
                    mono = mono * (images[name] ** e)
            out = out + mono
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.ring, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return id(self)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms, key=_grlex, reverse=True):
            mono = "*".join(f"{n}^{e}" if e > 1 else n
                            for n, e in zip(self.ring, k) if e)
            c = rat_str(self.terms[k])
            bits.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


def _grlex(exps) -> tuple:
    return (sum(exps), exps)


def lead(f: Poly):
    """(exponents, coeff) of the graded-lex leading term."""
    if f.is_zero():
        raise ValueError("zero polynomial has no leading term")
    k = max(f.terms, key=_grlex)
    return k, f.terms[k]


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _quot_mono(b, a):
    return tuple(y - x for x, y in zip(a, b))


def _mono_mul(f: Poly, exps, c) -> Poly:
    return Poly(f.ring, {tuple(a + b for a, b in zip(k, exps)): v * c
                         for k, v in f.terms.items()})


def normal_form(f: Poly, basis) -> Poly:
    """Remainder of multivariate division by the basis."""
    rem = Poly.zero(f.ring)
    work = f
    while not work.is_zero():
        k, c = lead(work)
        hit = None
        for g in basis:
            gk, gc = lead(g)
            if _divides(gk, k):
                hit = (g, _quot_mono(k, gk), c / gc)
                break
        if hit is None:
            rem = rem + Poly(f.ring, {k: c})
            work = work - Poly(f.ring, {k: c})
        else:
            g, q, c2 = hit
            work = work - _mono_mul(g, q, c2)
    return rem


def _spoly(f: Poly, g: Poly) -> Poly:
    fk, fc = lead(f)
    gk, gc = lead(g)
    lcm = tuple(max(a, b) for a, b in zip(fk, gk))
    return _mono_mul(f, _quot_mono(lcm, fk), Fraction(1, 1) / fc) \
        - _mono_mul(g, _quot_mono(lcm, gk), Fraction(1, 1) / gc)


def groebner(gens) -> list:
    """Buchberger with interreduction; leading coefficients one."""
    basis = [g for g in gens if not g.is_zero()]
    pairs = list(combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop()
        s = normal_form(_spoly(basis[i], basis[j]), basis)
        if not s.is_zero():
            basis.append(s)
            pairs.extend((t, len(basis) - 1) for t in range(len(basis) - 1))
    # interreduce
    out = []
    for i, g in enumerate(basis):
        r = normal_form(g, [b for j, b in enumerate(basis) if j != i
                            and not b.is_zero()])
        if not r.is_zero():
            out.append(r.scale(1 / lead(r)[1]))
    # dedupe
    seen = []
    for g in out:
        if not any(g == h for h in seen):
            seen.append(g)
    return sorted(seen, key=lambda g: _grlex(lead(g)[0]))


def in_ideal(f: Poly, gb) -> bool:
    return normal_form(f, gb).is_zero()


def ideal_equal(gens_a, gens_b) -> bool:
    ga, gb = groebner(gens_a), groebner(gens_b)
    return (all(in_ideal(g, ga) for g in gens_b)
            and all(in_ideal(g, gb) for g in gens_a))


def poisson(f: Poly, g: Poly) -> Poly:
    """{f, g} with {beta, gamma} = 1 and abar central."""
    return f.diff("beta") * g.diff("gamma") - f.diff("gamma") * g.diff("beta")


# ---------------------------------------------------------------------------
# the concrete images

def abg_vars():
    return (Poly.var(ABG, "abar"), Poly.var(ABG, "beta"),
            Poly.var(ABG, "gamma"))


def c2_images(p: int) -> dict:
    """Classes of the affine fields in the beta-gamma-lattice C2 ring."""
    ab, b, g = abg_vars()
    return {"e": b,
            "h": b * g * (-2) - ab,
            "f": -(b * g * g) - g * ab}


def c2_map(expr: Poly, p: int) -> Poly:
    """Evaluate a polynomial in h, e, f on the C2 classes."""
    return expr.subs(c2_images(p))


def casimir_report(p: int) -> dict:
    """p * (image of h^2 + 4ef) equals the squared long-root class."""
    h = Poly.var(HEF, "h")
    e = Poly.var(HEF, "e")
    f = Poly.var(HEF, "f")
    omega = h * h + 4 * e * f
    img = c2_map(omega, p)
    ab = Poly.var(ABG, "abar")
    ok = img.scale(p) == (ab * ab).scale(p)
    return {"p": p, "ok": ok, "image": repr(img),
            "statement": "p * c2(h^2 + 4ef) == (sqrt(p) abar)^2"}


def x_elements(p: int) -> dict:
    """C2 classes of the one-screening strong generators."""
    ab, b, g = abg_vars()
    tail = ab ** (2 * p - 1)
    return {"x01": b * tail,
            "x11": (2 * b * g + ab) * tail,
            "x21": (2 * b * g * g + 2 * g * ab) * tail}


def five_elements(p: int) -> list:
    x = x_elements(p)
    return [x["x01"] * x["x01"],
            x["x01"] * x["x11"],
            x["x11"] * x["x11"] + x["x01"] * x["x21"],
            x["x11"] * x["x21"],
            x["x21"] * x["x21"]]


def target_ideal(p: int) -> list:
    ab, b, _ = abg_vars()
    return [ab ** (4 * p),
            (ab ** (4 * p - 1)) * b,
            (ab ** (4 * p - 2)) * b * b]


def ideal_report(p: int) -> dict:
    """The five quadratic classes generate the stated monomial-type ideal."""
    gens = five_elements(p)
    tgt = target_ideal(p)
    ga = groebner(gens)
    gt = groebner(tgt)
    ab = Poly.var(ABG, "abar")
    precondition = not in_ideal(ab, gt) and not in_ideal(ab, ga)
    fwd = [in_ideal(g, gt) for g in gens]
    back = [in_ideal(g, ga) for g in tgt]
    ok = precondition and all(fwd) and all(back)
    return {"p": p, "ok": ok,
            "five_in_target": fwd, "target_in_five": back,
            "abar_outside": precondition,
            "groebner_size": len(ga)}


def derivation_report(p: int) -> dict:
    """Nilpotency transport along the Poisson derivation by the f-class.

    The derivation D = {f-class, .} regenerates the strong-generator
    column (D x01 = x11, D x11 = x21, D x21 = 0), and the square-zero
    lemma a^n = 0 => (Da)^(n^2) = 0 bounds the order of every class.
    """
    x = x_elements(p)
    F = c2_images(p)["f"]

    def D(v):
        return poisson(F, v)

    gt = groebner(target_ideal(p))
    checks = []
    ok = True

    def rec(name, good, detail=""):
        nonlocal ok
        ok = ok and good
        checks.append({"relation": name, "ok": good, "detail": detail})

    rec("D x01 == x11", D(x["x01"]) == x["x11"])
    rec("D x11 == x21", D(x["x11"]) == x["x21"])
    rec("D x21 == 0", D(x["x21"]).is_zero())
    rec("x01^2 in ideal", in_ideal(x["x01"] ** 2, gt))
    rec("x11^4 in ideal (lemma bound, n=2)", in_ideal(x["x11"] ** 4, gt))
    rec("x11^2 in ideal (sharp)", in_ideal(x["x11"] ** 2, gt))
    rec("x21^2 in ideal", in_ideal(x["x21"] ** 2, gt))

    # the transport argument needs the ideal to be stable under D
    rec("ideal is D-stable",
        all(in_ideal(D(g), gt) for g in target_ideal(p)))
    rec("Leibniz: D(x01^2) == 2 x01 x11",
        D(x["x01"] ** 2) == 2 * x["x01"] * x["x11"])
    # a^2 = 0 gives (Da)^2 = -a D^2a; both sides land in the ideal here
    rec("(Dx01)^2 + x01 D^2x01 in ideal",
        in_ideal(x["x11"] ** 2 + x["x01"] * x["x21"], gt))

    table = {"00": 2, "01": 4, "02": 2,
             "10": 4, "11": 16, "12": 4,
             "20": 2, "21": 4, "22": 2}
    return {"p": p, "ok": ok, "checks": checks, "order_bounds": table,
            "note": "orders: square-zero seeds and derivation-string tops "
                    "have order 2; one derivation step squares the bound"}


def c2_report(p: int) -> dict:
    cas = casimir_report(p)
    ideal = ideal_report(p)
    der = derivation_report(p)
    return {"p": p, "ok": cas["ok"] and ideal["ok"] and der["ok"],
            "casimir": cas, "ideal": ideal, "derivation": der}
