"""Ring description strings such as ``Z6``, ``Z2 x Z4`` or ``Z4[x]/(x^2-2, 2x)``.

Grammar (case- and whitespace-insensitive)::

    spec := term ('x' term)*
    term := 'Z' int | 'Z' int '[x]/(' rel (',' rel)* ')'
    rel  := polynomial in x with integer coefficients

Quotients must normalize to one monic relation x^d = g(x) (deg g < d) plus
coefficient relations c*x^j = 0 with 1 <= j < d.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Union

import numpy as np

from .errors import RingSyntaxError, UnsupportedPresentationError
from .ring import Factor, FiniteRing, format_poly, make_presented, make_product, make_zn


@dataclass(frozen=True)
class Zn:
    n: int


@dataclass(frozen=True)
class Product:
    factors: tuple["RingSpec", ...]


@dataclass(frozen=True)
class Quotient:
    """Z_n[x]/(x^d - g(x), c_1 x^{j_1}, ...).

    ``tail`` holds g's coefficients g_0..g_{d-1}, reduced mod n.
    ``kills`` holds (c, j) pairs.
    """

    n: int
    degree: int
    tail: tuple[int, ...]
    kills: tuple[tuple[int, int], ...] = ()


RingSpec = Union[Zn, Product, Quotient]


# ---------------------------------------------------------------------------
# Parsing


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, expected: list[str], pos: int | None = None):
        raise RingSyntaxError(self.pos if pos is None else pos, expected, self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos].lower() if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str) -> None:
        if not self.take(ch):
            self.error([repr(ch)])

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error(["integer"])
        return int(self.text[start : self.pos])

    def spec(self) -> RingSpec:
        terms = [self.term()]
        while self.take("x"):
            terms.append(self.term())
        if self.peek():
            self.error(["'x'", "end of input"])
        return terms[0] if len(terms) == 1 else Product(tuple(terms))

    def term(self) -> RingSpec:
        self.skip()
        if not self.take("z"):
            self.error(["'Z'"])
        start = self.pos
        n = self.integer()
        if n < 2:
            self.error(["modulus >= 2"], start)
        if self.peek() != "[":
            return Zn(n)
        self.skip()
        opener = self.pos
        for ch in "[x]/(":
            if not self.take(ch):
                self.error(["'[x]/('"], opener)
        rels = [self.poly()]
        while self.take(","):
            rels.append(self.poly())
        self.expect(")")
        return _normalize_quotient(n, rels)

    def poly(self) -> dict[int, int]:
        out: dict[int, int] = {}
        sign = 1
        if self.take("-"):
            sign = -1
        else:
            self.take("+")
        while True:
            coeff, deg = self.monomial()
            out[deg] = out.get(deg, 0) + sign * coeff
            if self.take("+"):
                sign = 1
            elif self.take("-"):
                sign = -1
            else:
                return out

    def monomial(self) -> tuple[int, int]:
        ch = self.peek()
        if ch.isdigit():
            coeff = self.integer()
            self.take("*")
            if self.peek() != "x":
                return coeff, 0
        elif ch == "x":
            coeff = 1
        else:
            self.error(["integer", "'x'"])
        self.expect("x")
        if self.take("^"):
            return coeff, self.integer()
        return coeff, 1


def _normalize_quotient(n: int, rels: list[dict[int, int]]) -> Quotient:
    reduced = []
    for rel in rels:
        r = {d: c % n for d, c in rel.items() if c % n}
        if not r:
            raise UnsupportedPresentationError("relation reduces to 0")
        reduced.append(r)
    top = max(max(r) for r in reduced)
    if top < 1:
        raise UnsupportedPresentationError("relations need a monic relation of positive degree")
    leading = [r for r in reduced if max(r) == top]
    if len(leading) != 1 or leading[0][top] != 1:
        raise UnsupportedPresentationError(
            f"expected exactly one monic relation of degree {top} in Z{n}[x]"
        )
    lead = leading[0]
    tail = tuple((-lead.get(j, 0)) % n for j in range(top))
    kills = []
    for r in reduced:
        if r is lead:
            continue
        if len(r) != 1:
            raise UnsupportedPresentationError(f"relation {format_poly(r)} is neither monic-leading nor c*x^j")
        ((j, c),) = r.items()
        if not 1 <= j < top:
            raise UnsupportedPresentationError(f"coefficient relation {format_poly(r)} needs 1 <= j < {top}")
        kills.append((c, j))
    return Quotient(n, top, tail, tuple(kills))


def parse(text: str) -> RingSpec:
    return _Parser(text).spec()


# ---------------------------------------------------------------------------
# Formatting


def _leading_poly(q: Quotient) -> dict[int, int]:
    p = {j: (-c) % q.n for j, c in enumerate(q.tail) if c % q.n}
    p[q.degree] = 1
    return p


def format_spec(spec: RingSpec) -> str:
    if isinstance(spec, Zn):
        return f"Z{spec.n}"
    if isinstance(spec, Product):
        return " x ".join(format_spec(f) for f in spec.factors)
    rels = [format_poly(_leading_poly(spec))]
    rels += [format_poly({j: c}) for c, j in spec.kills]
    return f"Z{spec.n}[x]/(" + ", ".join(rels) + ")"


def canonical(text: str) -> str:
    return format_spec(parse(text))


# ---------------------------------------------------------------------------
# Compilation


def compile_spec(spec: RingSpec | str) -> FiniteRing:
    if isinstance(spec, str):
        spec = parse(spec)
    if isinstance(spec, Zn):
        return make_zn(spec.n)
    if isinstance(spec, Product):
        ring = compile_spec(spec.factors[0])
        for f in spec.factors[1:]:
            ring = make_product(ring, compile_spec(f))
        return ring
    return _compile_quotient(spec)


def _compile_quotient(q: Quotient) -> FiniteRing:
    n, d = q.n, q.degree
    moduli = [n] * d
    for c, j in q.kills:
        if n % c:
            raise UnsupportedPresentationError(f"coefficient relation {c}x^{j} needs {c} | {n}")
        # c*x^j = 0 forces c*x^i = 0 for every i >= j
        for i in range(j, d):
            moduli[i] = gcd(moduli[i], c)

    # x^k for k < 2d-1 expressed in the basis 1..x^{d-1}
    powers = []
    for k in range(2 * d - 1):
        if k < d:
            v = [0] * d
            v[k] = 1
        else:
            prev = powers[k - 1]
            v = [0] + prev[:-1]
            v = [(a + prev[-1] * g) for a, g in zip(v, q.tail)]
        powers.append([a % n for a in v])
    sc = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            sc[i, j] = powers[i + j]
    one = int(np.prod(moduli[1:]))  # basis element e_0 = 1
    return make_presented(moduli, sc, one, label=format_spec(q), factors=[Factor(d, "poly")])
