"""Weight-line modules over the affine zero-mode sl2 and their structure.

A line of vectors indexed by b' in b + Z carries the action
    e . v(b') = v(b'+1)
    h . v(b') = (2b' - k) v(b')
    f . v(b') = -(b' + A)(b' + B) v(b'-1)
with A, B the two label constants; A + B = -k - 1 makes the bracket close.
Submodules start exactly at the roots of the f-coefficient, which yields
the full composition-series classification.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import rat, rat_str
from .realize import level


def a_rs(r: int, s: int, p: int) -> Fraction:
    """Label constant; a(r,s) + a(-r,-s) = -k - 1."""
    return Fraction((1 - s) * p + (r - 1), 2 * p)


def a_neg(r: int, s: int, p: int) -> Fraction:
    """a(-r,-s) in closed form."""
    return Fraction((1 + s) * p - r - 1, 2 * p)


def h_rs(r: int, s: int, p: int) -> Fraction:
    """Conformal weight of the (r, s) line."""
    return Fraction((r - s * p) ** 2 - (1 - p) ** 2, 4 * p)


@dataclass(frozen=True)
class ThetaLine:
    """One weight line with its rational parameters."""
    p: int
    r: int
    s: int
    b: Fraction

    @property
    def k(self) -> Fraction:
        return level(self.p)

    @property
    def A(self) -> Fraction:
        return a_rs(self.r, self.s, self.p)

    @property
    def B(self) -> Fraction:
        return a_neg(self.r, self.s, self.p)

    def e_c(self, bp) -> Fraction:
        return Fraction(1)

    def h_c(self, bp) -> Fraction:
        return 2 * rat(bp) - self.k

    def f_c(self, bp) -> Fraction:
        bp = rat(bp)
        return -(bp + self.A) * (bp + self.B)

    def weight(self, a, bp) -> Fraction:
        """Conformal weight of the flowed vector with flow amount a."""
        a, bp = rat(a), rat(bp)
        return (1 - a) * bp + Fraction(1, 4) * self.k * a * a \
            + h_rs(self.r, self.s, self.p)


def theta_line(p: int, r: int, s: int, b) -> ThetaLine:
    if not 1 <= r <= p:
        raise ValueError("first label must satisfy 1 <= r <= p")
    return ThetaLine(p, r, s, rat(b))


def bracket_check(p: int, r: int, s: int, b, window: int = 6) -> dict:
    """Verify the sl2 relations on the line, point by point."""
    line = theta_line(p, r, s, b)
    checks = []
    ok = True

    def rec(name, good, detail=""):
        nonlocal ok
        ok = ok and good
        checks.append({"relation": name, "ok": good, "detail": detail})

    rec("A + B == -k - 1", line.A + line.B == -line.k - 1,
        f"A={rat_str(line.A)} B={rat_str(line.B)} k={rat_str(line.k)}")
    for t in range(-window, window + 1):
        bp = line.b + t
        ef = line.f_c(bp) * line.e_c(bp - 1) - line.e_c(bp) * line.f_c(bp + 1)
        rec(f"[e,f] = h at b'={rat_str(bp)}", ef == line.h_c(bp),
            f"got {rat_str(ef)}, h-coeff {rat_str(line.h_c(bp))}")
        he = line.h_c(bp + 1) - line.h_c(bp)
        rec(f"[h,e] = 2e at b'={rat_str(bp)}", he == 2, f"got {rat_str(he)}")
        hf = line.h_c(bp - 1) - line.h_c(bp)
        rec(f"[h,f] = -2f at b'={rat_str(bp)}", hf == -2,
            f"got {rat_str(hf)}")
    return {"p": p, "r": r, "s": s, "b": rat_str(line.b), "window": window,
            "ok": ok, "checks": checks}


def classify(p: int, r: int, s: int, b) -> dict:
    """Composition series of the line from the f-coefficient roots.

    Roots on the line split off lowest-weight submodules; zero, one, or two
    in-line roots give a simple line, a length-two chain, or a length-three
    chain with a finite middle. Arrows run from submodule to quotient.
    """
    line = theta_line(p, r, s, b)
    k = line.k
    roots = sorted({-line.A, -line.B})
    in_line = [t for t in roots if (t - line.b).denominator == 1]
    factors: list[dict] = []
    if not in_line:
        case = "simple"
        factors.append({"type": "dense", "label": None,
                        "note": "no f-root meets the line"})
    elif len(in_line) == 1:
        case = "chain-2"
        t = in_line[0]
        factors.append({"type": "lowest", "label": rat_str(2 * t - k)})
        factors.append({"type": "highest", "label": rat_str(2 * t - 2 - k)})
    else:
        case = "chain-3"
        t1, t2 = in_line
        factors.append({"type": "lowest", "label": rat_str(2 * t2 - k)})
        factors.append({"type": "finite", "label": rat_str(2 * t2 - 2 - k),
                        "dim": int(t2 - t1)})
        factors.append({"type": "highest", "label": rat_str(2 * t1 - 2 - k)})
    arrows = " -> ".join(
        ("L-(%s)" % f["label"]) if f["type"] == "lowest"
        else ("L+(%s)" % f["label"]) if f["type"] in ("highest", "finite")
        else "dense" for f in factors)
    return {"p": p, "r": r, "s": s, "b": rat_str(line.b), "case": case,
            "weight": rat_str(h_rs(r, s, p)), "factors": factors,
            "series": arrows,
            "A": rat_str(line.A), "B": rat_str(line.B)}


def sweep(pmax: int = 3, window: int = 6) -> dict:
    """Bracket checks over the standard label grid and probe points."""
    reports = []
    ok = True
    for p in range(1, pmax + 1):
        for r in range(1, p + 1):
            for s in (1, 2, 3):
                bs = [Fraction(0), Fraction(1, 7),
                      -a_rs(r, s, p), -a_neg(r, s, p)]
                for b in bs:
                    rep = bracket_check(p, r, s, b, window=window)
                    ok = ok and rep["ok"]
                    reports.append({"p": p, "r": r, "s": s,
                                    "b": rep["b"], "ok": rep["ok"]})
    return {"pmax": pmax, "ok": ok, "count": len(reports),
            "cases": reports}
