"""Exact linear algebra over GF(2).

Vectors and matrix rows are bit-packed into Python integers (coordinate j is
bit j), so XOR and popcount run word-parallel; this is what makes the large
codeword enumerations in `spectrum` affordable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rng import SplitMix64


class BitVector:
    """Fixed-length binary vector; bits beyond `n` are kept at zero."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if n < 0:
            raise ValueError("negative length")
        self.n = n
        self.bits = bits & ((1 << n) - 1)

    @classmethod
    def from_ints(cls, values) -> "BitVector":
        values = list(values)
        bits = 0
        for j, v in enumerate(values):
            if v & 1:
                bits |= 1 << j
        return cls(len(values), bits)

    def get(self, j: int) -> int:
        return (self.bits >> j) & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_ints(self) -> list:
        return [(self.bits >> j) & 1 for j in range(self.n)]

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} != {other.n}")
        return BitVector(self.n, self.bits ^ other.bits)

    def __and__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} != {other.n}")
        return BitVector(self.n, self.bits & other.bits)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVector)
            and self.n == other.n
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.n, self.bits))

    def __repr__(self):
        return f"BitVector({''.join(str(b) for b in self.to_ints())})"


class BitMatrix:
    """Dense GF(2) matrix, row-major; each row is an int with bit j = column j."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: list):
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        mask = (1 << ncols) - 1
        self.nrows = nrows
        self.ncols = ncols
        self.rows = [r & mask for r in rows]

    @classmethod
    def from_rows(cls, rows, ncols: int | None = None) -> "BitMatrix":
        """Build from an iterable of BitVector or of 0/1 lists."""
        packed = []
        width = ncols
        for r in rows:
            if isinstance(r, BitVector):
                packed.append(r.bits)
                w = r.n
            else:
                v = BitVector.from_ints(r)
                packed.append(v.bits)
                w = v.n
            if width is None:
                width = w
            elif width != w:
                raise ValueError("rows of unequal length")
        if width is None:
            raise ValueError("cannot infer column count of an empty matrix")
        return cls(len(packed), width, packed)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        out = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                j = (r & -r).bit_length() - 1
                out[j] |= 1 << i
                r &= r - 1
        return BitMatrix(self.ncols, self.nrows, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(self.rows)))

    def __repr__(self):
        lines = [
            "".join(str(self.entry(i, j)) for j in range(self.ncols))
            for i in range(self.nrows)
        ]
        return f"BitMatrix({self.nrows}x{self.ncols}: {lines})"

    # -- text import/export: first line "rows cols", then one '0'/'1' line per row
    def to_text(self) -> str:
        lines = [f"{self.nrows} {self.ncols}"]
        for i in range(self.nrows):
            lines.append("".join(str(self.entry(i, j)) for j in range(self.ncols)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        nrows, ncols = (int(t) for t in lines[0].split())
        if len(lines) - 1 != nrows:
            raise ValueError("matrix text: row count does not match header")
        rows = []
        for ln in lines[1:]:
            ln = ln.strip()
            if len(ln) != ncols or set(ln) - {"0", "1"}:
                raise ValueError("matrix text: malformed row")
            rows.append(int(ln[::-1], 2))
        return cls(nrows, ncols, rows)


@dataclass(frozen=True)
class Permutation:
    """Bijection on {0..n-1}; `mapping[j]` is the image of position j."""

    mapping: tuple

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError("mapping is not a bijection")

    @property
    def n(self) -> int:
        return len(self.mapping)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for j, img in enumerate(self.mapping):
            inv[img] = j
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))[j] = self[other[j]]."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.mapping[other.mapping[j]] for j in range(self.n)))

    def apply(self, v: BitVector) -> BitVector:
        """Reorder coordinates: output[mapping[j]] = v[j]."""
        if v.n != self.n:
            raise ValueError("size mismatch")
        bits = 0
        r = v.bits
        while r:
            j = (r & -r).bit_length() - 1
            bits |= 1 << self.mapping[j]
            r &= r - 1
        return BitVector(self.n, bits)


def rref(m: BitMatrix):
    """Reduced row-echelon form over GF(2).

    Returns (reduced, pivot_cols, rank); pivot columns are strictly increasing.
    """
    rows = list(m.rows)
    pivots = []
    r = 0
    for c in range(m.ncols):
        pivot = None
        for i in range(r, len(rows)):
            if (rows[i] >> c) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and (rows[i] >> c) & 1:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    # move zero rows to the bottom (they are already there by construction)
    return BitMatrix(m.nrows, m.ncols, rows), tuple(pivots), r


def rank(m: BitMatrix) -> int:
    return rref(m)[2]


def nullspace_basis(g: BitMatrix) -> BitMatrix:
    """Basis of the right null space of `g`, as rows of a (ncols-rank) x ncols
    matrix H with g . H^T = 0."""
    red, pivots, rk = rref(g)
    pivot_set = set(pivots)
    free = [c for c in range(g.ncols) if c not in pivot_set]
    rows = []
    for f in free:
        h = 1 << f
        for i, p in enumerate(pivots):
            if (red.rows[i] >> f) & 1:
                h |= 1 << p
        rows.append(h)
    return BitMatrix(len(rows), g.ncols, rows)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """GF(2) matrix product; entry (i,j) = <row i of a, column j of b>."""
    if a.ncols != b.nrows:
        raise ValueError(f"incompatible shapes: {a.nrows}x{a.ncols} . {b.nrows}x{b.ncols}")
    out = []
    for r in a.rows:
        acc = 0
        rr = r
        while rr:
            t = (rr & -rr).bit_length() - 1
            acc ^= b.rows[t]
            rr &= rr - 1
        out.append(acc)
    return BitMatrix(a.nrows, b.ncols, out)


def mat_vec(a: BitMatrix, v: BitVector) -> BitVector:
    """Row vector times matrix: returns v . a (length = a.ncols)."""
    if v.n != a.nrows:
        raise ValueError("length mismatch")
    acc = 0
    r = v.bits
    while r:
        t = (r & -r).bit_length() - 1
        acc ^= a.rows[t]
        r &= r - 1
    return BitVector(a.ncols, acc)


def permutation_matrix(p: Permutation) -> BitMatrix:
    """N x N matrix P with P[j, mapping[j]] = 1, so (v . P) reorders per `mapping`."""
    return BitMatrix(p.n, p.n, [1 << p.mapping[j] for j in range(p.n)])


def random_permutation(n: int, seed: int) -> Permutation:
    """Uniform permutation from the pinned SplitMix64 Fisher-Yates shuffle."""
    if n < 1:
        raise ValueError("n must be >= 1")
    items = list(range(n))
    SplitMix64(seed).shuffle(items)
    return Permutation(tuple(items))
