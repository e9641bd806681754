"""Text grammar for Fock states and momentum vectors.

    state  := term (('+'|'-') term)*
    term   := rat? factor*
    factor := gen '[' int ']' | 'e^{' vector '}' | '(' state ')' | 'T' '(' state ')'

Factors compose right to left: modes act on the state built so far,
state-valued factors attach by the normal-ordered product, and a bare
term defaults to the vacuum. Printing is canonical (terms sorted by
momentum then modes) and round-trips through parse_state.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .fock import FockState, mode_act, nprod, translate
from .lattice import Space


class ParseError(ValueError):
    """Syntax error with position and offending token."""

    def __init__(self, msg: str, text: str, pos: int, token: str = ""):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.col, self.token = line, col, token
        detail = f" near {token!r}" if token else ""
        super().__init__(f"{msg} (line {line}, column {col}{detail})")


_RAT = re.compile(r"-?\d+(/\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _vector_aliases(space: Space) -> dict:
    """Spelled-out forms for the rescaled long-root generator."""
    out = {}
    if "a" in space.gens:
        pa = space.vec({"a": Fraction(space.p)})
        out["sqrtp*alpha"] = pa
        out["sqrtp_alpha"] = pa
        out["alpha_over_sqrtp"] = space.basis_vec("a")
    return out


def parse_vec(text: str, space: Space, base_pos: int = 0, src: str = None):
    """Rational combination of generator names, e.g. `u+v`, `-1/2*alpha`."""
    src = text if src is None else src
    vec = list(space.zero_vec())
    body = text.strip()
    if body in ("", "0"):
        return tuple(vec)
    aliases = _vector_aliases(space)
    # split into signed terms at top level (no nesting inside a vector)
    terms = re.findall(r"[+-]?[^+-]+", body.replace(" ", ""))
    for raw in terms:
        sign = Fraction(1)
        t = raw
        if t[0] in "+-":
            sign = Fraction(-1) if t[0] == "-" else Fraction(1)
            t = t[1:]
        if not t:
            raise ParseError("empty vector term", src, base_pos, raw)
        if t == "0":
            continue
        coeff = Fraction(1)
        name = t
        if t in aliases:
            target = aliases[t]
        else:
            if "*" in t:
                left, _, name = t.rpartition("*")
                m = _RAT.fullmatch(left)
                if not m:
                    raise ParseError("expected a rational coefficient",
                                     src, base_pos, left)
                coeff = Fraction(left)
            elif _RAT.fullmatch(t):
                raise ParseError("vector term lacks a generator name",
                                 src, base_pos, t)
            if name not in space.gens:
                raise ParseError(f"unknown generator {name}", src,
                                 base_pos, name)
            target = space.basis_vec(name)
        for i, c in enumerate(target):
            vec[i] += sign * coeff * c
    return tuple(vec)


class _Parser:
    def __init__(self, text: str, space: Space):
        self.text = text
        self.space = space
        self.pos = 0

    def _ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n":
            self.pos += 1

    def _peek(self) -> str:
        self._ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _fail(self, msg: str, token: str = ""):
        raise ParseError(msg, self.text, self.pos, token)

    def _match(self, pattern: re.Pattern):
        self._ws()
        m = pattern.match(self.text, self.pos)
        if m:
            self.pos = m.end()
        return m

    def _expect(self, lit: str):
        self._ws()
        if not self.text.startswith(lit, self.pos):
            self._fail(f"expected {lit!r}",
                       self.text[self.pos:self.pos + 8])
        self.pos += len(lit)

    def state(self) -> FockState:
        lead = self._peek()
        neg = False
        if lead in "+-":
            self.pos += 1
            neg = lead == "-"
        out = self.term()
        if neg:
            out = -out
        while True:
            ch = self._peek()
            if ch == "+":
                self.pos += 1
                out = out + self.term()
            elif ch == "-":
                self.pos += 1
                out = out - self.term()
            else:
                return out

    def term(self) -> FockState:
        coeff = None
        m = self._match(re.compile(r"\d+(/\d+)?"))
        if m:
            coeff = Fraction(m.group(0))
        factors = []
        while True:
            f = self.factor()
            if f is None:
                break
            factors.append(f)
        if coeff is None:
            if not factors:
                self._fail("empty term", self.text[self.pos:self.pos + 8])
            coeff = Fraction(1)
        current = None
        for kind, val in reversed(factors):
            if kind == "mode":
                gen, n = val
                if current is None:
                    current = FockState.vacuum(self.space)
                current = mode_act(current, gen, n)
            else:
                current = val if current is None else nprod(val, current)
        if current is None:
            current = FockState.vacuum(self.space)
        return current.scale(coeff)

    def factor(self):
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            inner = self.state()
            self._expect(")")
            return ("state", inner)
        if self.text.startswith("e^{", self.pos):
            self.pos += 3
            end = self.text.find("}", self.pos)
            if end < 0:
                self._fail("unterminated momentum vector")
            vec = parse_vec(self.text[self.pos:end], self.space,
                            self.pos, self.text)
            self.pos = end + 1
            return ("state", FockState.momentum(self.space, vec))
        m = self._match(_NAME)
        if not m:
            return None
        name = m.group(0)
        if name == "T" and self._peek() == "(":
            self.pos += 1
            inner = self.state()
            self._expect(")")
            return ("state", translate(inner))
        if name not in self.space.gens:
            self.pos -= len(name)
            self._fail(f"unknown generator {name}", name)
        self._expect("[")
        m = self._match(_RAT)
        if not m:
            self._fail("expected a mode index")
        n = int(m.group(0))
        self._expect("]")
        return ("mode", (name, n))


def parse_state(text: str, space: Space) -> FockState:
    p = _Parser(text, space)
    out = p.state()
    p._ws()
    if p.pos != len(text):
        p._fail("trailing input", text[p.pos:p.pos + 8])
    return out


# ---------------------------------------------------------------------------
# canonical printing

def _show_rat(c: Fraction) -> str:
    return str(c)


def print_vec(mu, space: Space) -> str:
    bits = []
    for g, c in zip(space.gens, mu):
        if c == 0:
            continue
        if c == 1:
            piece = g
        elif c == -1:
            piece = f"-{g}"
        else:
            piece = f"{_show_rat(c)}*{g}"
        if bits and not piece.startswith("-"):
            bits.append("+" + piece)
        else:
            bits.append(piece)
    return "".join(bits) if bits else "0"


def print_state(state: FockState, space: Space = None) -> str:
    """Canonical text: terms sorted by (momentum, modes)."""
    sp = space or state.space
    if not state.terms:
        return "0"
    keys = sorted(state.terms, key=lambda k: (k[1], k[0]))
    bits = []
    for modes, mu in keys:
        c = state.terms[(modes, mu)]
        mags = abs(c)
        factors = [f"{sp.gens[g]}[{n}]" for n, g in modes]
        factors.append(f"e^{{{print_vec(mu, sp)}}}")
        body = " ".join(factors)
        if mags != 1:
            body = f"{_show_rat(mags)} {body}"
        if not bits:
            bits.append(body if c > 0 else f"- {body}")
        else:
            bits.append(("+ " if c > 0 else "- ") + body)
    return " ".join(bits)
