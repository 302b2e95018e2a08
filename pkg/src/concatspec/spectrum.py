"""Exact weight-enumerator computation.

Enumeration visits every word of a code's row space exactly once, packed into
64-bit machine words, in sub-cubes: a base table over the low generator rows
is built once by recursive doubling and each assignment of the high rows is
swept as an XOR offset over the whole table. Tallies from different sub-cubes
merge by addition, so the result is independent of the split. All counts are
exact arbitrary-precision integers, and the MacWilliams (Krawtchouk)
transforms enforce exact divisibility: a non-exact division means the input
spectrum is corrupted and raises IntegrityError.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .codes import LinearCode
from .errors import BudgetExceededError, IntegrityError
from .gf2 import nullspace_basis

DEFAULT_BUDGET_EXPONENT = 32

# log2 of the base-table size for the sub-cube split; 2^22 words of 8 bytes
# keeps the working set well under typical cache+RAM pressure while leaving
# few enough offsets to amortize setup
_BASE_BITS = 22


@dataclass(frozen=True)
class WeightSpectrum:
    """counts[i] = number of codewords of Hamming weight i."""

    n: int
    counts: tuple

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise ValueError("counts must have length n+1")

    def total(self) -> int:
        return sum(self.counts)

    def min_distance(self):
        for w in range(1, self.n + 1):
            if self.counts[w]:
                return w
        return None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["weight", "multiplicity"])
        for i, c in enumerate(self.counts):
            if c:
                w.writerow([i, c])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, n: int | None = None) -> "WeightSpectrum":
        rows = list(csv.reader(io.StringIO(text)))
        if rows[0] != ["weight", "multiplicity"]:
            raise ValueError("bad spectrum CSV header")
        entries = {int(w): int(c) for w, c in rows[1:]}
        if n is None:
            n = max(entries)
        counts = tuple(entries.get(i, 0) for i in range(n + 1))
        return cls(n, counts)


@dataclass(frozen=True)
class SplitSpectrum:
    """table[i][p] = number of words with weight i on the systematic
    coordinates and p on the parity coordinates (k + r = n)."""

    k: int
    r: int
    table: tuple  # (k+1) x (r+1) nested tuples

    def total(self) -> int:
        return sum(sum(row) for row in self.table)

    def wef(self) -> WeightSpectrum:
        n = self.k + self.r
        counts = [0] * (n + 1)
        for i in range(self.k + 1):
            for p in range(self.r + 1):
                counts[i + p] += self.table[i][p]
        return WeightSpectrum(n, tuple(counts))


@dataclass(frozen=True)
class IOSpectrum:
    """table[i][w] = number of codewords with input weight i, total weight w."""

    k: int
    n: int
    table: tuple  # (k+1) x (n+1) nested tuples

    def total(self) -> int:
        return sum(sum(row) for row in self.table)

    def wef(self) -> WeightSpectrum:
        counts = [0] * (self.n + 1)
        for row in self.table:
            for w, c in enumerate(row):
                counts[w] += c
        return WeightSpectrum(self.n, tuple(counts))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["input_weight", "total_weight", "multiplicity"])
        for i in range(self.k + 1):
            for t in range(self.n + 1):
                if self.table[i][t]:
                    w.writerow([i, t, self.table[i][t]])
        return buf.getvalue()


def _check_budget(dim: int, budget_exponent: int):
    if dim > budget_exponent:
        raise BudgetExceededError(dim, budget_exponent)


def _pack_rows(rows, ncols):
    """Rows as a (nrows, nwords) uint64 array, 64 coordinates per word."""
    nwords = max(1, (ncols + 63) // 64)
    out = np.zeros((len(rows), nwords), dtype=np.uint64)
    for i, r in enumerate(rows):
        for w in range(nwords):
            out[i, w] = (r >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def _mask_words(mask_int, nwords):
    return np.array(
        [(mask_int >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for w in range(nwords)],
        dtype=np.uint64,
    )


def _sweep(rows, ncols, tally):
    """Drive the sub-cube sweep; `tally(words)` consumes a (chunk, nwords)
    uint64 array of codewords and accumulates counts."""
    dim = len(rows)
    packed = _pack_rows(rows, ncols)
    nwords = packed.shape[1]
    base_bits = min(dim, _BASE_BITS)
    base = np.zeros((1 << base_bits, nwords), dtype=np.uint64)
    size = 1
    for g in packed[:base_bits]:
        base[size : 2 * size] = base[:size] ^ g
        size *= 2
    high = packed[base_bits:]
    nhigh = len(high)
    offset = np.zeros(nwords, dtype=np.uint64)
    # Gray-code walk over the high rows: one row XOR per sub-cube
    tally(base)
    for step in range(1, 1 << nhigh):
        flip = (step & -step).bit_length() - 1
        offset ^= high[flip]
        tally(base ^ offset)


def enumerate_wef(code_or_rows, ncols=None, budget_exponent=DEFAULT_BUDGET_EXPONENT):
    """Exact WEF of the row space by exhaustive enumeration."""
    if isinstance(code_or_rows, LinearCode):
        rows, ncols = code_or_rows.generator.rows, code_or_rows.n
    else:
        rows = list(code_or_rows)
        if ncols is None:
            raise ValueError("ncols required when passing raw rows")
    _check_budget(len(rows), budget_exponent)
    acc = np.zeros(ncols + 1, dtype=np.int64)

    def tally(words):
        w = np.bitwise_count(words[:, 0])
        for c in range(1, words.shape[1]):
            w = w + np.bitwise_count(words[:, c])
        np.add(acc, np.bincount(w, minlength=ncols + 1), out=acc)

    _sweep(rows, ncols, tally)
    return WeightSpectrum(ncols, tuple(int(x) for x in acc))


def enumerate_split(code: LinearCode, budget_exponent=DEFAULT_BUDGET_EXPONENT,
                    partition=None) -> SplitSpectrum:
    """Exact split (systematic, parity) weight tally of a code's row space.

    `partition` overrides the systematic coordinate set; by default the
    code's own systematic positions are used. The same partition can then be
    applied to the dual code, whose words are tallied over identical masks.
    """
    positions = partition if partition is not None else code.systematic_positions
    if positions is None:
        raise ValueError("code has no systematic positions and no partition given")
    return _enumerate_split_rows(
        code.generator.rows, code.n, positions, budget_exponent
    )


def _enumerate_split_rows(rows, ncols, positions, budget_exponent):
    _check_budget(len(rows), budget_exponent)
    k = len(positions)
    r = ncols - k
    mask_s = 0
    for a in positions:
        mask_s |= 1 << a
    mask_p = ((1 << ncols) - 1) ^ mask_s
    nwords = max(1, (ncols + 63) // 64)
    ms = _mask_words(mask_s, nwords)
    mp = _mask_words(mask_p, nwords)
    acc = np.zeros((k + 1) * (r + 1), dtype=np.int64)

    def tally(words):
        ws = np.bitwise_count(words[:, 0] & ms[0])
        wp = np.bitwise_count(words[:, 0] & mp[0])
        for c in range(1, words.shape[1]):
            ws = ws + np.bitwise_count(words[:, c] & ms[c])
            wp = wp + np.bitwise_count(words[:, c] & mp[c])
        idx = ws.astype(np.int64) * (r + 1) + wp
        np.add(acc, np.bincount(idx, minlength=(k + 1) * (r + 1)), out=acc)

    _sweep(rows, ncols, tally)
    table = tuple(
        tuple(int(acc[i * (r + 1) + p]) for p in range(r + 1)) for i in range(k + 1)
    )
    return SplitSpectrum(k, r, table)


@lru_cache(maxsize=None)
def krawtchouk_matrix(n: int) -> tuple:
    """K[j][i] = K_j(i; n) = sum_l (-1)^l C(i,l) C(n-i, j-l), exact integers."""
    mat = []
    for j in range(n + 1):
        row = []
        for i in range(n + 1):
            row.append(
                sum((-1) ** l * comb(i, l) * comb(n - i, j - l) for l in range(j + 1))
            )
        mat.append(tuple(row))
    return tuple(mat)


def macwilliams_wef(dual_wef: WeightSpectrum, dual_size: int) -> WeightSpectrum:
    """WEF of the primal code from the dual's WEF (Krawtchouk transform)."""
    n = dual_wef.n
    if dual_wef.total() != dual_size:
        raise IntegrityError(
            f"dual WEF sums to {dual_wef.total()}, expected {dual_size}"
        )
    kmat = krawtchouk_matrix(n)
    counts = []
    for j in range(n + 1):
        s = sum(c * kmat[j][i] for i, c in enumerate(dual_wef.counts) if c)
        q, rem = divmod(s, dual_size)
        if rem:
            raise IntegrityError(f"non-exact MacWilliams division at weight {j}")
        counts.append(q)
    return WeightSpectrum(n, tuple(counts))


def macwilliams_split(dual_split: SplitSpectrum, dual_size: int) -> SplitSpectrum:
    """Split enumerator of the primal code from the dual's, tallied over the
    same (systematic, parity) coordinate partition: a two-dimensional
    Krawtchouk transform with exact divisibility enforced."""
    k, r = dual_split.k, dual_split.r
    if dual_split.total() != dual_size:
        raise IntegrityError(
            f"dual split spectrum sums to {dual_split.total()}, expected {dual_size}"
        )
    ks = krawtchouk_matrix(k)
    kp = krawtchouk_matrix(r)
    # contract the parity axis first, then the systematic axis
    mid = [[0] * (r + 1) for _ in range(k + 1)]
    for i2 in range(k + 1):
        row = dual_split.table[i2]
        for p in range(r + 1):
            mid[i2][p] = sum(row[p2] * kp[p][p2] for p2 in range(r + 1) if row[p2])
    table = []
    for i in range(k + 1):
        out_row = []
        for p in range(r + 1):
            s = sum(mid[i2][p] * ks[i][i2] for i2 in range(k + 1) if mid[i2][p])
            q, rem = divmod(s, dual_size)
            if rem:
                raise IntegrityError(f"non-exact MacWilliams division at ({i},{p})")
            out_row.append(q)
        table.append(tuple(out_row))
    return SplitSpectrum(k, r, tuple(table))


def split_to_iowef(s: SplitSpectrum) -> IOSpectrum:
    """IOWEF from the split enumerator: A_IO[i][w] = A_IR[i][w-i]."""
    n = s.k + s.r
    table = []
    for i in range(s.k + 1):
        row = [0] * (n + 1)
        for p in range(s.r + 1):
            row[i + p] = s.table[i][p]
        table.append(tuple(row))
    return IOSpectrum(s.k, n, tuple(table))


# cache of heavy spectra keyed by the generator rows; census and figure
# reproduction revisit the same codes
_split_cache: dict = {}
_wef_cache: dict = {}


def clear_cache():
    _split_cache.clear()
    _wef_cache.clear()


def _require_full_rank(code: LinearCode):
    # dependent generator rows would make the sweep visit codewords multiple
    # times; catching it here is cheap relative to any enumeration
    if not code.check_full_rank():
        raise IntegrityError("generator matrix does not have full row rank")


def code_spectra(code: LinearCode, budget_exponent=DEFAULT_BUDGET_EXPONENT):
    """(WEF, IOWEF) of a systematic code, enumerating whichever of the code
    and its dual has fewer words."""
    if code.systematic_positions is None:
        raise ValueError("code_spectra needs systematic positions")
    _require_full_rank(code)
    # budget is checked before the cache so refusal does not depend on what
    # happened to be computed earlier in the process
    if min(code.k, code.n - code.k) > budget_exponent:
        raise BudgetExceededError(min(code.k, code.n - code.k), budget_exponent)
    key = (tuple(code.generator.rows), code.n, code.systematic_positions)
    if key in _split_cache:
        split = _split_cache[key]
    else:
        k, n = code.k, code.n
        if k <= n - k:
            split = enumerate_split(code, budget_exponent)
        else:
            h = nullspace_basis(code.generator)
            dual_split = _enumerate_split_rows(
                h.rows, n, code.systematic_positions, budget_exponent
            )
            split = macwilliams_split(dual_split, 1 << h.nrows)
        _split_cache[key] = split
    io_spec = split_to_iowef(split)
    return split.wef(), io_spec


def code_wef(code: LinearCode, budget_exponent=DEFAULT_BUDGET_EXPONENT) -> WeightSpectrum:
    """Exact WEF via whichever of code/dual is cheaper to enumerate."""
    k, n = code.k, code.n
    if min(k, n - k) > budget_exponent:
        raise BudgetExceededError(min(k, n - k), budget_exponent)
    key = (tuple(code.generator.rows), code.n)
    if key in _wef_cache:
        return _wef_cache[key]
    _require_full_rank(code)
    if k <= n - k:
        wef = enumerate_wef(code, budget_exponent=budget_exponent)
    else:
        h = nullspace_basis(code.generator)
        dual_wef = enumerate_wef(h.rows, n, budget_exponent=budget_exponent)
        wef = macwilliams_wef(dual_wef, 1 << h.nrows)
    _wef_cache[key] = wef
    return wef


def min_distance(code: LinearCode, budget_exponent=DEFAULT_BUDGET_EXPONENT) -> int:
    """Smallest nonzero codeword weight, from a complete sweep."""
    d = code_wef(code, budget_exponent).min_distance()
    if d is None:
        raise ValueError("zero-dimensional code has no minimum distance")
    return d
