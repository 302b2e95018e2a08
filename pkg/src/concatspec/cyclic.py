"""Outer-code construction: GF(2) polynomials, CRC codes, BCH codes, shortening.

Coordinate-to-power convention: coordinate j of a length-N word is the
coefficient of x^(N-1-j), i.e. the leftmost coordinate carries the highest
power. Systematic codewords are laid out as (message | parity).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .codes import LinearCode
from .gf2 import BitMatrix, BitVector

# conventional primitive polynomial for GF(2^8): x^8+x^4+x^3+x^2+1
DEFAULT_PRIMITIVE_POLY_M8 = 0x11D

CRC8_POLY_TEXT = "x^8+x^2+x+1"
CRC16_CCITT_POLY_TEXT = "x^16+x^12+x^5+1"


class Gf2Poly:
    """Polynomial over GF(2), packed into an int (bit d = coefficient of x^d)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: int):
        if coeffs < 0:
            raise ValueError("negative coefficient word")
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.coeffs.bit_length() - 1

    @classmethod
    def from_string(cls, text: str) -> "Gf2Poly":
        """Parse 'x^8+x^2+1' style strings, or '0x..' coefficient hex."""
        text = text.strip().replace(" ", "")
        if text.lower().startswith("0x"):
            return cls(int(text, 16))
        coeffs = 0
        for term in text.split("+"):
            if term == "1":
                coeffs ^= 1
            elif term == "x":
                coeffs ^= 2
            elif term.startswith("x^"):
                coeffs ^= 1 << int(term[2:])
            else:
                raise ValueError(f"unparseable polynomial term: {term!r}")
        return cls(coeffs)

    def to_string(self) -> str:
        if self.coeffs == 0:
            return "0"
        terms = []
        for d in range(self.degree, -1, -1):
            if (self.coeffs >> d) & 1:
                terms.append("1" if d == 0 else "x" if d == 1 else f"x^{d}")
        return "+".join(terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Gf2Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Gf2Poly({self.to_string()})"


def poly_mul(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    out = 0
    aa = a.coeffs
    d = 0
    while aa:
        if aa & 1:
            out ^= b.coeffs << d
        aa >>= 1
        d += 1
    return Gf2Poly(out)


def poly_divmod(a: Gf2Poly, g: Gf2Poly):
    if g.coeffs == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    r = a.coeffs
    q = 0
    dg = g.degree
    while r and r.bit_length() - 1 >= dg:
        shift = r.bit_length() - 1 - dg
        r ^= g.coeffs << shift
        q |= 1 << shift
    return Gf2Poly(q), Gf2Poly(r)


def poly_mod(a: Gf2Poly, g: Gf2Poly) -> Gf2Poly:
    return poly_divmod(a, g)[1]


class Gf2mField:
    """GF(2^m) via log/antilog tables over a primitive polynomial."""

    def __init__(self, m: int, primitive_poly: Gf2Poly):
        if primitive_poly.degree != m:
            raise ValueError("primitive polynomial degree != m")
        self.m = m
        self.order = (1 << m) - 1
        self.primitive_poly = primitive_poly
        antilog = [0] * self.order
        x = 1
        for i in range(self.order):
            antilog[i] = x
            x <<= 1
            if x >> m:
                x ^= primitive_poly.coeffs
        if x != 1:
            raise ValueError("polynomial is not primitive")
        log = [0] * (self.order + 1)
        seen = set()
        for i, v in enumerate(antilog):
            if v in seen:
                raise ValueError("polynomial is not primitive")
            seen.add(v)
            log[v] = i
        self.antilog = antilog
        self.log = log

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.antilog[(self.log[a] + self.log[b]) % self.order]

    def alpha_pow(self, e: int) -> int:
        return self.antilog[e % self.order]


def conjugacy_class(field: Gf2mField, i: int) -> tuple:
    """Exponent orbit {i * 2^j mod 2^m-1} of alpha^i under Frobenius."""
    cls = []
    j = i % field.order
    while j not in cls:
        cls.append(j)
        j = (j * 2) % field.order
    return tuple(sorted(cls))


def minimal_polynomial(field: Gf2mField, i: int) -> Gf2Poly:
    """Minimal polynomial of alpha^i over GF(2): prod over the conjugacy class."""
    # coefficients live in GF(2^m) during the product and collapse to GF(2)
    coeffs = [1]
    for e in conjugacy_class(field, i):
        root = field.alpha_pow(e)
        nxt = [0] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            nxt[d + 1] ^= c
            nxt[d] ^= field.mul(c, root)
        coeffs = nxt
    if any(c not in (0, 1) for c in coeffs):
        raise AssertionError("minimal polynomial has non-binary coefficients")
    return Gf2Poly(sum(c << d for d, c in enumerate(coeffs)))


def bch_generator_poly(field: Gf2mField, t: int) -> Gf2Poly:
    """Generator polynomial: lcm of the minimal polynomials of alpha^1..alpha^2t."""
    if not 1 <= 2 * t < (1 << field.m) - 1:
        raise ValueError("error-correction capability out of range")
    classes = []
    seen = set()
    for i in range(1, 2 * t + 1):
        cls = conjugacy_class(field, i)
        if cls not in seen:
            seen.add(cls)
            classes.append(cls)
    g = Gf2Poly(1)
    for cls in classes:
        g = poly_mul(g, minimal_polynomial(field, cls[0]))
    return g


@lru_cache(maxsize=None)
def default_field_m8() -> Gf2mField:
    return Gf2mField(8, Gf2Poly(DEFAULT_PRIMITIVE_POLY_M8))


@dataclass(frozen=True)
class OuterCodeSpec:
    """Descriptor of a CRC or BCH outer code (metadata for outputs)."""

    kind: str  # "crc" | "bch"
    n: int
    k: int
    g: Gf2Poly
    shortening: int = 0

    def __post_init__(self):
        if self.n - self.k != self.g.degree:
            raise ValueError("redundancy != generator degree")
        if self.k < 1:
            raise ValueError("dimension must be >= 1")

    def to_json(self) -> str:
        doc = {"kind": self.kind, "g": self.g.to_string(), "N": self.n,
               "K": self.k, "shortening": self.shortening}
        return json.dumps(doc, indent=2)


def crc_code(g: Gf2Poly, n: int) -> LinearCode:
    """Systematic (n, n-deg g) code of the polynomial multiples of g.

    Message m(x) of degree < K maps to (m | parity) with
    parity(x) = x^r m(x) mod g(x); every codeword polynomial is divisible
    by g under the coordinate-to-power convention of this module.
    """
    r = g.degree
    if r < 1:
        raise ValueError("generator polynomial must have degree >= 1")
    if n <= r:
        raise ValueError(f"length {n} must exceed generator degree {r}")
    k = n - r
    rows = []
    for j in range(k):
        # unit message at coordinate j is the monomial x^(K-1-j)
        shifted = Gf2Poly(1 << (r + k - 1 - j))
        cpoly = shifted.coeffs ^ poly_mod(shifted, g).coeffs
        word = 0
        for d in range(n):
            if (cpoly >> d) & 1:
                word |= 1 << (n - 1 - d)
        rows.append(word)
    return LinearCode(BitMatrix(k, n, rows), tuple(range(k)))


def shortened_bch_code(field: Gf2mField, t: int, n: int) -> LinearCode:
    """Shortened BCH code of length n (natural length 2^m - 1).

    Shortening fixes the highest-power information positions to zero and
    deletes them, which leaves exactly the systematic cyclic encoding of
    `crc_code` at the reduced length.
    """
    natural = (1 << field.m) - 1
    if n > natural:
        raise ValueError(f"length {n} exceeds natural length {natural}")
    g = bch_generator_poly(field, t)
    return crc_code(g, n)


def codeword_polynomial(c: BitVector) -> Gf2Poly:
    """Read a codeword as a polynomial (coordinate j -> x^(n-1-j))."""
    coeffs = 0
    for j in range(c.n):
        if c.get(j):
            coeffs |= 1 << (c.n - 1 - j)
    return Gf2Poly(coeffs)
