"""BEC polar code design (exact rational polarization) and systematic encoding.

Design is done entirely in exact rational arithmetic so that information-set
selection has no floating-point ties and is identical on every platform.
The Kronecker power of the kernel [[1,0],[1,1]] is used in natural (Plotkin)
order; no bit-reversal permutation is applied. Users comparing frozen sets
with bit-reversed tools should relabel indices accordingly - weight spectra
are unaffected by the consistent relabeling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .codes import LinearCode
from .gf2 import BitMatrix


@dataclass(frozen=True)
class PolarDesign:
    """Outcome of the BEC design: per-channel erasure rates and the info set."""

    m: int
    k: int
    eps_design: Fraction
    channel_erasure: tuple
    info_set: tuple
    frozen_set: tuple

    @property
    def n(self) -> int:
        return 1 << self.m

    def to_json(self) -> str:
        doc = {
            "n": self.n,
            "k": self.k,
            "eps": f"{self.eps_design.numerator}/{self.eps_design.denominator}",
            "info_set": list(self.info_set),
            "frozen_set": list(self.frozen_set),
        }
        return json.dumps(doc, indent=2)


def parse_eps(text: str) -> Fraction:
    """Exact conversion of a decimal or fraction string ('0.3', '3/10')."""
    eps = Fraction(text)
    if not 0 <= eps <= 1:
        raise ValueError(f"erasure probability {text} outside [0, 1]")
    return eps


def bec_polarize(eps: Fraction, m: int) -> list:
    """Exact erasure probabilities of the 2^m synthesized channels.

    One recursion level maps v[j] to (2v[j] - v[j]^2, v[j]^2); the even output
    index is the degraded (minus) branch, the odd one the upgraded (plus)
    branch.
    """
    eps = Fraction(eps)
    if not 0 <= eps <= 1:
        raise ValueError("erasure probability outside [0, 1]")
    if m < 0:
        raise ValueError("m must be >= 0")
    v = [eps]
    for _ in range(m):
        nxt = []
        for z in v:
            nxt.append(2 * z - z * z)
            nxt.append(z * z)
        v = nxt
    return v


def select_info_set(channel_erasure, k: int) -> tuple:
    """Indices of the k most reliable channels, ties broken toward lower index."""
    n = len(channel_erasure)
    if k > n:
        raise ValueError(f"k={k} exceeds number of channels {n}")
    order = sorted(range(n), key=lambda i: (channel_erasure[i], i))
    return tuple(sorted(order[:k]))


def design_polar(n: int, k: int, eps: Fraction) -> PolarDesign:
    m = n.bit_length() - 1
    if 1 << m != n:
        raise ValueError(f"block length {n} is not a power of two")
    if not 1 <= k <= n:
        raise ValueError(f"dimension {k} outside [1, {n}]")
    z = bec_polarize(eps, m)
    info = select_info_set(z, k)
    frozen = tuple(i for i in range(n) if i not in set(info))
    return PolarDesign(m, k, Fraction(eps), tuple(z), info, frozen)


@lru_cache(maxsize=None)
def kernel_power_rows(m: int) -> tuple:
    """Rows of F^(x)m for F = [[1,0],[1,1]], packed (bit j = column j).

    Row i has a one in column j iff the binary support of j is contained in
    that of i.
    """
    n = 1 << m
    rows = [1]
    for _ in range(m):
        width = len(rows)  # current block width in bits
        # [[R, 0], [R, R]] -- Plotkin (u, u+v) structure
        rows = rows + [r | (r << width) for r in rows]
    assert len(rows) == n
    return tuple(rows)


def systematic_polar_code(n: int, k: int, eps: Fraction) -> LinearCode:
    """Systematic polar code: G_sys = (G'_A)^-1 . G' with A the info set.

    Every codeword restricted to A equals the message. The k x k submatrix of
    G' on columns A is invertible for polar information sets; a singular
    submatrix indicates an internal inconsistency and aborts.
    """
    design = design_polar(n, k, eps)
    rows = kernel_power_rows(design.m)
    g = [rows[i] for i in design.info_set]
    # eliminate so that the columns of the info set become the identity
    work = list(g)
    for r, c in enumerate(design.info_set):
        pivot = None
        for i in range(r, k):
            if (work[i] >> c) & 1:
                pivot = i
                break
        if pivot is None:
            raise AssertionError(
                "info-set submatrix of the kernel power is singular; "
                "polar construction is inconsistent"
            )
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(k):
            if i != r and (work[i] >> c) & 1:
                work[i] ^= work[r]
    return LinearCode(BitMatrix(k, n, work), design.info_set)
