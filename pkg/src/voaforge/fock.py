"""Fock-module engine: exact n-th products of free-field states.

States are rational linear combinations of terms (creation modes applied to
a momentum vector). Lattice vertex operators are evaluated through the
standard factorization: cocycle sign, momentum translation, z^{pairing},
then the two exponential factors; the annihilation half turns each creation
mode into a binomial factor and the creation half enters through recursively
computed Schur operators. n-th products of composite states reduce along
the first creation mode with binomial coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .exact import binomial, rat, rat_str
from .lattice import Space, Vec, vec_add, vec_scale

Mode = tuple[int, int]            # (n, gen_index), n < 0 for creation
TermKey = tuple[tuple[Mode, ...], Vec]


class FockState:
    """Q-linear combination of Fock terms in one space."""

    __slots__ = ("space", "terms")

    def __init__(self, space: Space, terms: dict[TermKey, Fraction]):
        self.space = space
        self.terms = {k: v for k, v in terms.items() if v != 0}

    # -- constructors
    @classmethod
    def zero(cls, space: Space) -> "FockState":
        return cls(space, {})

    @classmethod
    def momentum(cls, space: Space, mu) -> "FockState":
        mu = tuple(rat(c) for c in mu)
        return cls(space, {((), mu): Fraction(1)})

    @classmethod
    def vacuum(cls, space: Space) -> "FockState":
        return cls.momentum(space, space.zero_vec())

    # -- linear structure
    def __add__(self, other: "FockState") -> "FockState":
        self._chk(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return FockState(self.space, terms)

    def __sub__(self, other: "FockState") -> "FockState":
        return self + other.scale(-1)

    def __neg__(self) -> "FockState":
        return self.scale(-1)

    def scale(self, c) -> "FockState":
        c = rat(c)
        return FockState(self.space, {k: c * v for k, v in self.terms.items()})

    def _chk(self, other: "FockState"):
        if self.space.name != other.space.name or self.space.p != other.space.p:
            raise ValueError("states live in different spaces")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockState):
            return NotImplemented
        return (self.space.name == other.space.name
                and self.space.p == other.space.p
                and self.terms == other.terms)

    def __hash__(self):
        return id(self)

    # -- structure inspection
    def momenta(self) -> set[Vec]:
        return {mu for (_, mu) in self.terms}

    def single_coeff(self) -> Fraction:
        """Coefficient if the state is a scalar multiple of one term."""
        if len(self.terms) != 1:
            raise ValueError("state is not a single term")
        return next(iter(self.terms.values()))

    def proportionality(self, other: "FockState") -> Optional[Fraction]:
        """c with self == c*other, or None. other must be nonzero."""
        if other.is_zero():
            raise ValueError("proportionality against zero state")
        k0, v0 = next(iter(other.terms.items()))
        c = self.terms.get(k0, Fraction(0)) / v0
        return c if self == other.scale(c) else None

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (modes, mu), c in sorted(self.terms.items())[:8]:
            ms = "".join(f"{self.space.gens[g]}[{n}]" for (n, g) in modes)
            core = (ms + f"e^({self.space.show_vec(mu)})") if any(mu) \
                else (ms + "|0>" if ms else "|0>")
            bits.append(f"({c})*{core}")
        extra = "" if len(self.terms) <= 8 else f" +{len(self.terms)-8} terms"
        return " + ".join(bits) + extra

    # -- serialization
    def to_json(self):
        out = {"space": self.space.name, "p": self.space.p, "terms": []}
        for (modes, mu), c in sorted(self.terms.items()):
            out["terms"].append({
                "coeff": rat_str(c),
                "modes": [[self.space.gens[g], n] for (n, g) in modes],
                "momentum": [rat_str(x) for x in mu],
            })
        return out

    @classmethod
    def from_json(cls, d, space_fn) -> "FockState":
        sp = space_fn(d["space"], d["p"])
        terms: dict[TermKey, Fraction] = {}
        for t in d["terms"]:
            modes = tuple(sorted((int(n), sp.gen_index(g))
                                 for g, n in t["modes"]))
            mu = tuple(rat(x) for x in t["momentum"])
            key = (modes, mu)
            terms[key] = terms.get(key, Fraction(0)) + rat(t["coeff"])
        return cls(sp, terms)


def term_degree(modes: tuple[Mode, ...]) -> int:
    return sum(-n for (n, _) in modes)


def _half_norm(space: Space, mu: Vec) -> Fraction:
    return space.norm(mu) / 2


def state_weight_bound(state: FockState) -> Fraction:
    """Max over terms of (oscillator degree + (mu,mu)/2)."""
    best = None
    for (modes, mu) in state.terms:
        w = term_degree(modes) + _half_norm(state.space, mu)
        best = w if best is None else max(best, w)
    if best is None:
        raise ValueError("zero state has no weight bound")
    return best


# ---------------------------------------------------------------------------
# mode action

def mode_act(state: FockState, gen, n: int) -> FockState:
    """Apply the Heisenberg mode gen_n to the state."""
    sp = state.space
    g = sp.gen_index(gen) if isinstance(gen, str) else gen
    out: dict[TermKey, Fraction] = {}

    def put(key, c):
        if c:
            out[key] = out.get(key, Fraction(0)) + c

    gvec = tuple(Fraction(1) if j == g else Fraction(0)
                 for j in range(sp.rank))
    for (modes, mu), c in state.terms.items():
        if n < 0:
            new = tuple(sorted(modes + ((n, g),)))
            put((new, mu), c)
        elif n == 0:
            put((modes, mu), c * sp.pair(gvec, mu))
        else:
            # [g_n, h_-m] = n (g,h) delta_{n,m}
            for i, (m_i, h_i) in enumerate(modes):
                if -m_i == n:
                    pairing = sp.gram[g][h_i]
                    if pairing:
                        rest = modes[:i] + modes[i + 1:]
                        put((rest, mu), c * n * pairing)
    return FockState(sp, out)


def current_mode_act(state: FockState, x: Vec, n: int) -> FockState:
    """Mode of the current attached to the momentum vector x (coordinates)."""
    out = FockState.zero(state.space)
    for g, cg in enumerate(x):
        if cg:
            out = out + mode_act(state, g, n).scale(cg)
    return out


def translate(state: FockState) -> FockState:
    """Translation operator T (the canonical derivation)."""
    sp = state.space
    out: dict[TermKey, Fraction] = {}

    def put(key, c):
        if c:
            out[key] = out.get(key, Fraction(0)) + c

    for (modes, mu), c in state.terms.items():
        # T through each creation mode: [T, g_{-m}] = m g_{-m-1}
        for i, (n_i, g_i) in enumerate(modes):
            m = -n_i
            new = tuple(sorted(modes[:i] + ((n_i - 1, g_i),) + modes[i + 1:]))
            put((new, mu), c * m)
        # T on the momentum state: sum mu_i g_i[-1]
        for g, cg in enumerate(mu):
            if cg:
                new = tuple(sorted(modes + ((-1, g),)))
                put((new, mu), c * cg)
    return FockState(sp, out)


# ---------------------------------------------------------------------------
# lattice vertex operators

_SCHUR_CACHE: dict = {}


def _schur_ops(space: Space, x: Vec, jmax: int) -> list[dict]:
    """Schur operators [S_0, ..., S_jmax] of the creation-half exponential
    of the x-current, as mode-monomial dicts: j*S_j = sum x_{-n} S_{j-n}.

    Creation modes commute, so multiplying by x_{-n} is a sorted merge."""
    key = (space.name, space.p, space.gram, x)
    tower = _SCHUR_CACHE.setdefault(key, [{(): Fraction(1)}])
    for j in range(len(tower), jmax + 1):
        acc: dict = {}
        for n in range(1, j + 1):
            for g, cg in enumerate(x):
                if not cg:
                    continue
                for modes, c in tower[j - n].items():
                    k = tuple(sorted(modes + ((-n, g),)))
                    acc[k] = acc.get(k, Fraction(0)) + c * cg
        tower.append({k: c / j for k, c in acc.items() if c})
    return tower


def lattice_op_coeff(x: Vec, state: FockState, zpow: Fraction) -> FockState:
    """Coefficient of z^zpow in Y(e^x, z) applied to the state.

    Defined per momentum sector: zpow must lie in (x, mu) + Z for every
    momentum mu occurring in the state.
    """
    sp = state.space
    zpow = rat(zpow)
    out = FockState.zero(sp)
    for (modes, mu), c in state.terms.items():
        base = zpow - sp.pair(x, mu)
        if base.denominator != 1:
            raise ValueError(
                f"z-power {zpow} not in the exponent lattice of the sector "
                f"(x,mu)={sp.pair(x, mu)} + Z; operator undefined here")
        eps = sp.epsilon(x, mu)
        nmodes = len(modes)
        new_mu = vec_add(mu, x)
        # subset S of modes eaten by the annihilation half:
        # each contributes -(x, g_i) z^{-m_i}
        for mask in range(1 << nmodes):
            coef = Fraction(c * eps)
            deg_eaten = 0
            kept: list[Mode] = []
            ok = True
            for i in range(nmodes):
                n_i, g_i = modes[i]
                if mask >> i & 1:
                    pg = sp.pair(x, tuple(Fraction(1) if j == g_i else
                                          Fraction(0) for j in range(sp.rank)))
                    if pg == 0:
                        ok = False
                        break
                    coef *= -pg
                    deg_eaten += -n_i
                else:
                    kept.append(modes[i])
            if not ok:
                continue
            j = base + deg_eaten
            if j < 0:
                continue
            ops = _schur_ops(sp, x, int(j))[int(j)]
            kept_t = tuple(kept)
            acc: dict[TermKey, Fraction] = {}
            for opmodes, oc in ops.items():
                k = (tuple(sorted(kept_t + opmodes)), new_mu)
                acc[k] = acc.get(k, Fraction(0)) + coef * oc
            out = out + FockState(sp, acc)
    return FockState(sp, out.terms)


# ---------------------------------------------------------------------------
# n-th products

def nth_product(a: FockState, n: int, b: FockState) -> FockState:
    """a_(n) b for states in one space."""
    a._chk(b)
    sp = a.space
    out = FockState.zero(sp)
    for (modes, mu), c in a.terms.items():
        out = out + _term_product(sp, modes, mu, n, b).scale(c)
    return out


def _term_product(sp: Space, modes: tuple[Mode, ...], mu: Vec, n: int,
                  b: FockState) -> FockState:
    if b.is_zero():
        return b
    if not modes:
        if not any(mu):
            # vacuum: identity field
            return b if n == -1 else FockState.zero(sp)
        return lattice_op_coeff(mu, b, Fraction(-n - 1))
    (neg_m, g) = modes[0]
    m = -neg_m
    rest = modes[1:]
    rest_wt = term_degree(rest) + _half_norm(sp, mu)
    out = FockState.zero(sp)

    # annihilation side: k >= 0 picks up g_k b (finite: modes of b + zero mode)
    ks = {0}
    for (bmodes, _bmu) in b.terms:
        for (bn, _bg) in bmodes:
            ks.add(-bn)
    for k in sorted(ks):
        gb = mode_act(b, g, k)
        if gb.is_zero():
            continue
        c_k = Fraction(binomial(k + m - 1, m - 1) * (-1) ** (m - 1))
        if c_k:
            out = out + _term_product(sp, rest, mu, n - k - m, gb).scale(c_k)

    # creation side: k <= -1; inner index n-k-m stays below the weight bound
    try:
        b_wt = state_weight_bound(b)
    except ValueError:
        return out
    total_mu_half = None
    k = -1
    while True:
        inner = n - k - m
        # rest_(inner) b vanishes once inner > rest_wt + b_wt - 1 - min half-norm
        min_half = min(_half_norm(sp, vec_add(mu, bmu)) for bmu in b.momenta())
        if inner > rest_wt + b_wt - 1 - min_half:
            break
        c_k = Fraction(binomial(k + m - 1, m - 1) * (-1) ** (m - 1))
        if c_k:
            sub = _term_product(sp, rest, mu, inner, b)
            if not sub.is_zero():
                out = out + mode_act(sub, g, k).scale(c_k)
        k -= 1
    return out


def nprod(a: FockState, b: FockState) -> FockState:
    """Normal-ordered product a_(-1) b."""
    return nth_product(a, -1, b)


def ope_singular(a: FockState, b: FockState) -> dict[int, FockState]:
    """Singular OPE part: pole j holds a_(j-1) b, for j >= 1, nonzero only."""
    a._chk(b)
    out: dict[int, FockState] = {}
    jmax = _pole_bound(a, b)
    for j in range(1, jmax + 1):
        st = nth_product(a, j - 1, b)
        if not st.is_zero():
            out[j] = st
    return out


def _pole_bound(a: FockState, b: FockState) -> int:
    """j with a_(j-1) b = 0 for larger j, from the weight bound."""
    best = 0
    for (am, amu) in a.terms:
        for (bm, bmu) in b.terms:
            wt = (term_degree(am) + _half_norm(a.space, amu)
                  + term_degree(bm) + _half_norm(a.space, bmu)
                  - _half_norm(a.space, vec_add(amu, bmu)))
            # a_(j-1)b has weight wt_a + wt_b - j
            from math import floor
            best = max(best, int(floor(wt)))
    return best


# ---------------------------------------------------------------------------
# conformal structure

def conf_weight(L: FockState, state: FockState) -> Fraction:
    """Eigenvalue of L_(1) (the Virasoro zero mode) on an eigenstate."""
    got = nth_product(L, 1, state)
    c = got.proportionality(state) if not state.is_zero() else None
    if state.is_zero():
        raise ValueError("weight of the zero state")
    if c is None:
        raise ValueError("state is not an L_0 eigenvector")
    return c


def central_charge(L: FockState) -> Fraction:
    """2 * coefficient of the vacuum in L_(3) L."""
    top = nth_product(L, 3, L)
    if top.is_zero():
        return Fraction(0)
    vac = ((), L.space.zero_vec())
    extra = {k: v for k, v in top.terms.items() if k != vac}
    if extra:
        raise ValueError("L_(3) L is not a vacuum multiple; not a conformal "
                         "vector?")
    return 2 * top.terms.get(vac, Fraction(0))


def is_virasoro(L: FockState) -> tuple[bool, Fraction, list[str]]:
    """Check the full singular OPE of L with itself. Returns (ok, c, notes)."""
    notes = []
    sp = L.space
    c = central_charge(L)
    poles = ope_singular(L, L)
    ok = True
    vac_mult = FockState.vacuum(sp).scale(c / 2)
    if poles.get(4, FockState.zero(sp)) != vac_mult:
        ok = False
        notes.append("pole 4 != c/2 |0>")
    if 3 in poles:
        ok = False
        notes.append("pole 3 nonzero")
    if poles.get(2, FockState.zero(sp)) != L.scale(2):
        ok = False
        notes.append("pole 2 != 2L")
    if poles.get(1, FockState.zero(sp)) != translate(L):
        ok = False
        notes.append("pole 1 != TL")
    for j in poles:
        if j > 4:
            ok = False
            notes.append(f"pole {j} nonzero")
    return ok, c, notes


def screen_apply(x: Vec, state: FockState) -> FockState:
    """Residue int Y(e^x, z) dz applied to the state."""
    return lattice_op_coeff(x, state, Fraction(-1))
