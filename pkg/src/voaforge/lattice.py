"""Free-field state spaces: generator bases, Gram pairings, cocycle hook.

Each space is a finite list of Heisenberg generators with a rational Gram
matrix; Fock momenta are coefficient tuples over that basis. Bases are
chosen once and for all so every pairing is rational (the lattice boson
that would carry a sqrt(p) is rescaled; see the `uva` space).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exact import rat

Vec = tuple[Fraction, ...]


@dataclass(frozen=True)
class Space:
    """Generator basis with Gram matrix and (trivial by default) cocycle."""

    name: str
    gens: tuple[str, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    p: int = 1
    # per-generator-pair cocycle signs, extended biadditively; all +1 is
    # valid whenever products are only taken between momenta x, y with
    # (x,y) + (x,x)(y,y) even, which holds on every sublattice where this
    # engine multiplies states; lone screening charges may violate it, but
    # a single sector-preserving application is normalization-independent
    signs: tuple[tuple[int, ...], ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        n = len(self.gens)
        if self.signs is None:
            object.__setattr__(self, "signs",
                               tuple(tuple(1 for _ in range(n))
                                     for _ in range(n)))

    @property
    def rank(self) -> int:
        return len(self.gens)

    def gen_index(self, g: str) -> int:
        try:
            return self.gens.index(g)
        except ValueError:
            raise KeyError(
                f"unknown generator {g!r} in space {self.name!r}; "
                f"generators are {', '.join(self.gens)}") from None

    def basis_vec(self, g: str) -> Vec:
        i = self.gen_index(g)
        return tuple(Fraction(1) if j == i else Fraction(0)
                     for j in range(self.rank))

    def zero_vec(self) -> Vec:
        return tuple(Fraction(0) for _ in range(self.rank))

    def vec(self, coeffs: dict[str, Fraction] | Iterable) -> Vec:
        if isinstance(coeffs, dict):
            out = [Fraction(0)] * self.rank
            for g, c in coeffs.items():
                out[self.gen_index(g)] += rat(c)
            return tuple(out)
        vs = [rat(c) for c in coeffs]
        if len(vs) != self.rank:
            raise ValueError(f"expected {self.rank} coefficients")
        return tuple(vs)

    def pair(self, mu, nu) -> Fraction:
        """Gram pairing of two momentum vectors."""
        out = Fraction(0)
        for i, a in enumerate(mu):
            if a:
                row = self.gram[i]
                for j, b in enumerate(nu):
                    if b:
                        out += a * row[j] * b
        return out

    def pair_gen(self, g: str, mu) -> Fraction:
        return self.pair(self.basis_vec(g), mu)

    def norm(self, mu) -> Fraction:
        return self.pair(mu, mu)

    def epsilon(self, mu, nu) -> int:
        """Cocycle sign for the lattice operator of momentum mu hitting nu."""
        if all(s == 1 for row in self.signs for s in row):
            return 1
        sign = 1
        for i, a in enumerate(mu):
            for j, b in enumerate(nu):
                if self.signs[i][j] == -1:
                    e = a * b
                    if e.denominator != 1:
                        raise ValueError(
                            "nontrivial cocycle needs integral coordinates")
                    if e % 2:
                        sign = -sign
        return sign

    def show_vec(self, mu) -> str:
        bits = []
        for g, c in zip(self.gens, mu):
            if c == 0:
                continue
            if c == 1:
                bits.append(g)
            elif c == -1:
                bits.append(f"-{g}")
            else:
                bits.append(f"{c}*{g}")
        if not bits:
            return "0"
        out = bits[0]
        for b in bits[1:]:
            out += ("" if b.startswith("-") else "+") + b
        return out


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a: Vec) -> Vec:
    c = rat(c)
    return tuple(c * x for x in a)


def diag_gram(*entries) -> tuple:
    es = [rat(e) for e in entries]
    n = len(es)
    return tuple(tuple(es[i] if i == j else Fraction(0) for j in range(n))
                 for i in range(n))


def space(name: str, p: int) -> Space:
    """Space catalog.

    uva  : lattice-plus-boson stage {u, v, a}, diag(1, -1, 2/p); `a` is the
           weight boson rescaled so that the long lattice vector is p*a
    uv   : its {u, v} sub-stage, diag(1, -1)
    a    : the weight boson alone, (2/p)
    u1   : a single norm-1 boson
    xaad : odd boson x with rescaled weight pair, diag(1, 2/p, -2/p)
    xalal: odd boson with unscaled weight pair, diag(1, 2, -2)
    """
    if p < 1:
        raise ValueError("p must be a positive integer")
    P = Fraction(p)
    catalog = {
        "uva": (("u", "v", "a"), diag_gram(1, -1, Fraction(2, 1) / P)),
        "uv": (("u", "v"), diag_gram(1, -1)),
        "a": (("a",), diag_gram(Fraction(2, 1) / P)),
        "u1": (("u",), diag_gram(1)),
        "xaad": (("x", "a", "ad"),
                 diag_gram(1, Fraction(2, 1) / P, -Fraction(2, 1) / P)),
        "xalal": (("x", "alpha", "alphad"), diag_gram(1, 2, -2)),
    }
    if name not in catalog:
        raise KeyError(f"unknown space {name!r}; have {sorted(catalog)}")
    gens, gram = catalog[name]
    return Space(name=name, gens=gens, gram=gram, p=p)
