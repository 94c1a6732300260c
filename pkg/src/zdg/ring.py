"""Finite commutative rings given by an additive basis and structure constants.

A ring is stored as the abelian group Z_{m_0} e_0 + ... + Z_{m_{k-1}} e_{k-1}
together with the products e_i * e_j expressed in that basis.  Elements are
plain integers: the mixed-radix index of the coefficient tuple (c_0, ..., c_{k-1}),
with c_0 the most significant digit, so index order agrees with the
lexicographic order of coefficient tuples.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    InvalidElementError,
    InvalidParameterError,
    PresentationError,
    PresentationFormatError,
)

TABLE_THRESHOLD = 1 << 12
VALIDATE_CAP = 4096


@dataclass(frozen=True)
class Factor:
    """Labelling hint for a contiguous run of basis elements.

    ``style`` is ``"int"`` (Z_n, one basis element), ``"poly"`` (basis 1, x, x^2, ...)
    or ``"basis"`` (generic e_i presentation).
    """

    width: int
    style: str


@dataclass(frozen=True)
class ElementSet:
    """Subset of a ring's elements stored as a membership bit vector."""

    order: int
    bits: int = 0

    @classmethod
    def from_indices(cls, order: int, indices: Iterable[int]) -> "ElementSet":
        bits = 0
        for i in indices:
            bits |= 1 << int(i)
        return cls(order, bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, a: object) -> bool:
        return isinstance(a, (int, np.integer)) and 0 <= a < self.order and bool(self.bits >> int(a) & 1)

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.order, self.bits | other.bits)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.order, self.bits & other.bits)

    def to_list(self) -> list[int]:
        return list(self)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]
    message: str


class FiniteRing:
    """A finite commutative ring with identity.

    Construct through :func:`make_zn`, :func:`make_product` or
    :func:`make_presented`; the raw constructor performs no axiom checks.
    """

    def __init__(
        self,
        moduli: Sequence[int],
        structure_constants: np.ndarray,
        one_index: int,
        label: str,
        factors: Sequence[Factor] | None = None,
        table_threshold: int = TABLE_THRESHOLD,
    ):
        moduli = [int(m) for m in moduli]
        if not moduli or any(m < 1 for m in moduli):
            raise InvalidParameterError(f"moduli must be positive, got {moduli}")
        k = len(moduli)
        sc = np.asarray(structure_constants, dtype=np.int64)
        if sc.shape != (k, k, k):
            raise InvalidParameterError(f"structure constants must have shape {(k, k, k)}, got {sc.shape}")
        self.moduli = tuple(moduli)
        self.structure_constants = sc % np.array(moduli, dtype=np.int64)
        self.structure_constants.setflags(write=False)
        self.order = math.prod(moduli)
        if not 0 <= one_index < self.order:
            raise InvalidElementError(f"identity index {one_index} out of range for order {self.order}")
        self.one_index = int(one_index)
        self.label = label
        self.factors = tuple(factors) if factors is not None else (Factor(k, "basis"),)
        if sum(f.width for f in self.factors) != k:
            raise InvalidParameterError("factor widths do not cover the basis")

        self._mod = np.array(moduli, dtype=np.int64)
        strides = [1] * k
        for i in range(k - 2, -1, -1):
            strides[i] = strides[i + 1] * moduli[i + 1]
        self._strides = np.array(strides, dtype=np.int64)
        grid = np.indices(self.moduli).reshape(k, -1).T
        self._coeffs = np.ascontiguousarray(grid, dtype=np.int64)
        self._coeffs.setflags(write=False)
        self._table = self._build_table() if self.order <= table_threshold else None

    def __repr__(self) -> str:
        return f"FiniteRing({self.label!r}, order={self.order})"

    @property
    def rank(self) -> int:
        return len(self.moduli)

    # -- encoding -------------------------------------------------------

    def _check(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.order:
            raise InvalidElementError(f"element {a!r} is not an index in [0, {self.order})")
        return int(a)

    def coefficients(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self._coeffs[self._check(a)])

    def element(self, coefficients: Sequence[int]) -> int:
        if len(coefficients) != self.rank:
            raise InvalidElementError(f"expected {self.rank} coefficients, got {len(coefficients)}")
        c = np.asarray(coefficients, dtype=np.int64) % self._mod
        return int(c @ self._strides)

    def basis(self, i: int) -> int:
        """Index of the basis element e_i."""
        return int(self._strides[i])

    def _encode(self, coeffs: np.ndarray) -> np.ndarray:
        return (coeffs % self._mod) @ self._strides

    # -- arithmetic -----------------------------------------------------

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self.one_index

    def add(self, a: int, b: int) -> int:
        return int(self._encode(self._coeffs[self._check(a)] + self._coeffs[self._check(b)]))

    def neg(self, a: int) -> int:
        return int(self._encode(-self._coeffs[self._check(a)]))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        a, b = self._check(a), self._check(b)
        if self._table is not None:
            return int(self._table[a, b])
        ca, cb = self._coeffs[a], self._coeffs[b]
        prod = np.einsum("i,j,ijk->k", ca, cb, self.structure_constants)
        return int(self._encode(prod))

    def mul_row(self, a: int) -> np.ndarray:
        """Products a*x for every element x, indexed by x."""
        a = self._check(a)
        if self._table is not None:
            return self._table[a]
        m = np.einsum("i,ijk->jk", self._coeffs[a], self.structure_constants)
        return self._encode(self._coeffs @ m)

    def _build_table(self) -> np.ndarray:
        c = self._coeffs
        idx = np.zeros((self.order, self.order), dtype=np.int64)
        for t in range(self.rank):
            part = (c @ self.structure_constants[:, :, t] @ c.T) % self._mod[t]
            idx += part * self._strides[t]
        dtype = np.int32 if self.order < 2**31 else np.int64
        table = idx.astype(dtype)
        table.setflags(write=False)
        return table

    @property
    def table(self) -> np.ndarray | None:
        return self._table

    # -- display --------------------------------------------------------

    def element_label(self, a: int) -> str:
        coeffs = self.coefficients(a)
        parts = []
        pos = 0
        for f in self.factors:
            chunk = coeffs[pos : pos + f.width]
            pos += f.width
            parts.append(_format_chunk(chunk, f.style))
        if len(parts) == 1:
            return parts[0]
        return "(" + ",".join(parts) + ")"

    def element_from_label(self, text: str) -> int:
        for a in range(self.order):
            if self.element_label(a) == text:
                return a
        raise InvalidElementError(f"no element labelled {text!r} in {self.label}")


def _format_chunk(chunk: Sequence[int], style: str) -> str:
    if style == "int":
        return str(chunk[0])
    if style == "poly":
        return format_poly({j: c for j, c in enumerate(chunk)})
    terms = [(f"e{i}" if c == 1 else f"{c}e{i}") for i, c in enumerate(chunk) if c]
    return "+".join(terms) if terms else "0"


def format_poly(coeffs: Mapping[int, int], var: str = "x") -> str:
    """Render {degree: coefficient} with descending degrees, e.g. ``x^2+2``."""
    out = []
    for d in sorted((d for d, c in coeffs.items() if c), reverse=True):
        c = coeffs[d]
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + (var if d == 1 else f"{var}^{d}")
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("-" if c < 0 else "+") + body)
    return "".join(out) if out else "0"


# ---------------------------------------------------------------------------
# Constructors


def make_zn(n: int) -> FiniteRing:
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidParameterError(f"Z_n requires n >= 2, got {n!r}")
    sc = np.ones((1, 1, 1), dtype=np.int64)
    return FiniteRing([n], sc, 1 % n, f"Z{n}", [Factor(1, "int")])


def make_product(r: FiniteRing, s: FiniteRing, label: str | None = None) -> FiniteRing:
    kr, ks = r.rank, s.rank
    k = kr + ks
    sc = np.zeros((k, k, k), dtype=np.int64)
    sc[:kr, :kr, :kr] = r.structure_constants
    sc[kr:, kr:, kr:] = s.structure_constants
    one = r.one_index * s.order + s.one_index
    return FiniteRing(
        r.moduli + s.moduli,
        sc,
        one,
        label if label is not None else f"{r.label} x {s.label}",
        r.factors + s.factors,
    )


def make_presented(
    moduli: Sequence[int],
    structure_constants: Mapping[tuple[int, int], Sequence[int]] | Sequence,
    one_index: int,
    label: str | None = None,
    factors: Sequence[Factor] | None = None,
    cap: int = VALIDATE_CAP,
) -> FiniteRing:
    """Build a ring from structure constants and validate it.

    ``structure_constants`` is either a full k*k*k nested sequence or a mapping
    ``{(i, j): coefficients}``; a mapping only needs one of (i, j), (j, i) and
    missing products are zero.

    Raises PresentationError naming the failed axiom and a witness.
    """
    k = len(moduli)
    if isinstance(structure_constants, Mapping):
        sc = np.zeros((k, k, k), dtype=np.int64)
        for (i, j), vec in structure_constants.items():
            if not (0 <= i < k and 0 <= j < k) or len(vec) != k:
                raise InvalidParameterError(f"bad structure-constant entry {(i, j)}: {vec}")
            sc[i, j] = vec
            if (j, i) not in structure_constants:
                sc[j, i] = vec
    else:
        sc = np.asarray(structure_constants, dtype=np.int64)
    if label is None:
        label = "R<" + " ".join(str(m) for m in moduli) + ">"
    ring = FiniteRing(moduli, sc, one_index, label, factors)
    bad = validate(ring, cap=cap)
    if bad is not None:
        raise PresentationError(bad.axiom, bad.witness, bad.message)
    return ring


# ---------------------------------------------------------------------------
# Axiom checks


def validate(ring: FiniteRing, cap: int = VALIDATE_CAP, samples: int = 20000, seed: int = 0) -> Violation | None:
    """Return the first axiom violation found, or None for a valid ring.

    Basis-level checks run first: well-definedness against the additive
    orders, identity, commutativity and associativity on basis triples.
    Element-level checks follow, exhaustive over all pairs and (up to
    ``cap`` elements) all triples, sampled above the cap.
    """
    k = ring.rank
    sc = ring.structure_constants
    mod = ring._mod
    e = [ring.basis(i) for i in range(k)]
    lab = ring.element_label

    for i in range(k):
        for j in range(k):
            if np.any((ring.moduli[i] * sc[i, j]) % mod):
                return Violation(
                    "additive-order",
                    (e[i], e[j]),
                    f"{ring.moduli[i]}*({lab(e[i])}*{lab(e[j])}) != 0 although {ring.moduli[i]}*{lab(e[i])} = 0",
                )
    for i in range(k):
        if ring.mul(ring.one, e[i]) != e[i]:
            return Violation("identity", (ring.one, e[i]), f"1*{lab(e[i])} != {lab(e[i])}")
    for i in range(k):
        for j in range(i + 1, k):
            if np.any((sc[i, j] - sc[j, i]) % mod):
                return Violation("commutativity", (e[i], e[j]), f"{lab(e[i])}*{lab(e[j])} != {lab(e[j])}*{lab(e[i])}")
    for i in range(k):
        for j in range(k):
            for t in range(k):
                left = ring.mul(ring.mul(e[i], e[j]), e[t])
                right = ring.mul(e[i], ring.mul(e[j], e[t]))
                if left != right:
                    return Violation(
                        "associativity",
                        (e[i], e[j], e[t]),
                        f"({lab(e[i])}*{lab(e[j])})*{lab(e[t])} = {lab(left)} != {lab(right)} = "
                        f"{lab(e[i])}*({lab(e[j])}*{lab(e[t])})",
                    )

    n = ring.order
    rows = ring.table if ring.table is not None else np.array([ring.mul_row(a) for a in range(n)])
    asym = np.argwhere(rows != rows.T)
    if asym.size:
        a, b = (int(v) for v in asym[0])
        return Violation("commutativity", (a, b), f"{lab(a)}*{lab(b)} != {lab(b)}*{lab(a)}")
    ident = np.flatnonzero(rows[ring.one] != np.arange(n))
    if ident.size:
        a = int(ident[0])
        return Violation("identity", (ring.one, a), f"1*{lab(a)} != {lab(a)}")
    if n <= cap:
        for a in range(n):
            left = rows[rows[a]]  # (ab)c at [b, c]
            right = rows[a][rows]  # a(bc) at [b, c]
            diff = np.argwhere(left != right)
            if diff.size:
                b, c = (int(v) for v in diff[0])
                return Violation("associativity", (a, b, c), f"associativity fails on ({lab(a)}, {lab(b)}, {lab(c)})")
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if rows[rows[a, b], c] != rows[a, rows[b, c]]:
                return Violation("associativity", (a, b, c), f"associativity fails on ({lab(a)}, {lab(b)}, {lab(c)})")
    return None


# ---------------------------------------------------------------------------
# Structure queries


def annihilator(ring: FiniteRing, a: int) -> ElementSet:
    return ElementSet.from_indices(ring.order, np.flatnonzero(ring.mul_row(a) == 0))


def principal_ideal(ring: FiniteRing, a: int) -> ElementSet:
    """The set aR."""
    return ElementSet.from_indices(ring.order, np.unique(ring.mul_row(a)))


def zero_divisor_set(ring: FiniteRing) -> ElementSet:
    """Nonzero zero-divisors Z(R)*."""
    if ring.table is not None:
        counts = np.count_nonzero(ring.table == 0, axis=1)
        members = np.flatnonzero(counts > 1)
    else:
        members = [a for a in range(1, ring.order) if np.count_nonzero(ring.mul_row(a) == 0) > 1]
    return ElementSet.from_indices(ring.order, (a for a in members if a != 0))


def is_domain(ring: FiniteRing) -> bool:
    return len(zero_divisor_set(ring)) == 0


def idempotents(ring: FiniteRing) -> ElementSet:
    return ElementSet.from_indices(ring.order, (a for a in range(ring.order) if ring.mul(a, a) == a))


def _has_zero_divisors_within(ring: FiniteRing, subset: ElementSet) -> bool:
    members = np.array([s for s in subset if s != 0], dtype=np.int64)
    for s in members:
        if np.any(ring.mul_row(int(s))[members] == 0):
            return True
    return False


def peirce_split(ring: FiniteRing, order_first: int) -> Iterator[tuple[int, ElementSet, ElementSet]]:
    """Yield (e, eR, (1-e)R) for nontrivial idempotents e with |eR| == order_first."""
    for e in idempotents(ring):
        if e in (0, ring.one):
            continue
        first = principal_ideal(ring, e)
        if len(first) != order_first:
            continue
        yield e, first, principal_ideal(ring, ring.sub(ring.one, e))


def is_z2_times_domain(ring: FiniteRing) -> int | None:
    """Least idempotent e with eR of order 2 and (1-e)R a domain, else None."""
    for e, _, rest in peirce_split(ring, 2):
        if not _has_zero_divisors_within(ring, rest):
            return e
    return None


def annihilator_ideal_witness(ring: FiniteRing) -> int | None:
    """Least a in Z(R)* with ann(a) = Z(R)* + {0}, else None."""
    zs = zero_divisor_set(ring)
    target = zs.bits | 1
    for a in zs:
        if annihilator(ring, a).bits == target:
            return a
    return None


def is_unit(ring: FiniteRing, a: int) -> bool:
    return bool(np.any(ring.mul_row(a) == ring.one))


# ---------------------------------------------------------------------------
# Plain-text presentation format


def load_presentation(text: str, label: str | None = None) -> FiniteRing:
    """Parse the ``moduli:`` / ``one:`` / ``e<i>*e<j> = ...`` format and validate."""
    lines = [(no, ln.split("#", 1)[0].strip()) for no, ln in enumerate(text.splitlines(), start=1)]
    lines = [(no, ln) for no, ln in lines if ln]
    if not lines:
        raise PresentationFormatError(1, "expected 'moduli: m0 m1 ...'")
    no, head = lines[0]
    if not head.lower().startswith("moduli:"):
        raise PresentationFormatError(no, "expected 'moduli: m0 m1 ...'")
    if len(lines) < 2:
        raise PresentationFormatError(no + 1, "expected 'one: <index>'")
    try:
        moduli = [int(tok) for tok in head.split(":", 1)[1].split()]
    except ValueError:
        raise PresentationFormatError(no, "moduli must be integers") from None
    if not moduli or any(m < 1 for m in moduli):
        raise PresentationFormatError(no, "moduli must be positive integers")
    no, head = lines[1]
    if not head.lower().startswith("one:"):
        raise PresentationFormatError(no, "expected 'one: <index>'")
    try:
        one = int(head.split(":", 1)[1])
    except ValueError:
        raise PresentationFormatError(no, "identity index must be an integer") from None
    k = len(moduli)
    table: dict[tuple[int, int], list[int]] = {}
    for no, ln in lines[2:]:
        lhs, sep, rhs = ln.partition("=")
        names = [p.strip() for p in lhs.split("*")]
        if not sep or len(names) != 2 or not all(p.startswith("e") and p[1:].isdigit() for p in names):
            raise PresentationFormatError(no, "expected 'e<i>*e<j> = c0 c1 ...'")
        i, j = int(names[0][1:]), int(names[1][1:])
        if not (0 <= i <= j < k):
            raise PresentationFormatError(no, f"basis pair ({i},{j}) must satisfy 0 <= i <= j < {k}")
        try:
            vec = [int(tok) for tok in rhs.split()]
        except ValueError:
            raise PresentationFormatError(no, "coefficients must be integers") from None
        if len(vec) != k:
            raise PresentationFormatError(no, f"expected {k} coefficients, got {len(vec)}")
        table[(i, j)] = vec
    return make_presented(moduli, table, one, label=label)


def dump_presentation(ring: FiniteRing) -> str:
    out = ["moduli: " + " ".join(map(str, ring.moduli)), f"one: {ring.one}"]
    for i in range(ring.rank):
        for j in range(i, ring.rank):
            vec = " ".join(str(int(c)) for c in ring.structure_constants[i, j])
            out.append(f"e{i}*e{j} = {vec}")
    return "\n".join(out) + "\n"
