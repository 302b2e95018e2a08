"""Tests for the GF(2) linear algebra core.

The naive oracles below work on plain 0/1 nested lists with explicit loops,
independent of the bit-packed representations under test.
"""

import pytest

from concatspec import gf2
from concatspec.gf2 import BitMatrix, BitVector, Permutation
from conftest import random_bit_matrix


# --------------------------------------------------------------- oracles

def to_lists(m: BitMatrix):
    return [[m.entry(i, j) for j in range(m.ncols)] for i in range(m.nrows)]


def naive_rank(rows):
    """Textbook O(n^3) elimination on 0/1 nested lists."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def naive_mat_mul(a, b):
    return [
        [sum(a[i][t] * b[t][j] for t in range(len(b))) % 2 for j in range(len(b[0]))]
        for i in range(len(a))
    ]


# ------------------------------------------------------------- BitVector

def test_bitvector_roundtrip_and_weight():
    v = BitVector.from_ints([1, 0, 1, 1, 0])
    assert v.n == 5
    assert v.to_ints() == [1, 0, 1, 1, 0]
    assert v.weight() == 3
    assert v.get(0) == 1 and v.get(1) == 0


def test_bitvector_xor_and():
    a = BitVector.from_ints([1, 1, 0])
    b = BitVector.from_ints([0, 1, 1])
    assert (a ^ b).to_ints() == [1, 0, 1]
    assert (a & b).to_ints() == [0, 1, 0]
    with pytest.raises(ValueError):
        a ^ BitVector(2)


def test_bitvector_truncates_extra_bits():
    assert BitVector(3, 0b11111).bits == 0b111


# ------------------------------------------------------------- BitMatrix

def test_matrix_text_roundtrip():
    m = random_bit_matrix(5, 9, seed=3)
    assert BitMatrix.from_text(m.to_text()) == m


def test_matrix_text_format():
    m = BitMatrix.from_rows([[1, 0, 0], [0, 1, 1]])
    assert m.to_text() == "2 3\n100\n011\n"


def test_matrix_text_rejects_malformed():
    with pytest.raises(ValueError):
        BitMatrix.from_text("2 3\n100\n01")  # short row
    with pytest.raises(ValueError):
        BitMatrix.from_text("2 3\n100\n012")  # bad character
    with pytest.raises(ValueError):
        BitMatrix.from_text("3 3\n100\n010")  # row count mismatch


def test_transpose_involution():
    m = random_bit_matrix(7, 13, seed=4)
    assert m.transpose().transpose() == m
    t = m.transpose()
    for i in range(m.nrows):
        for j in range(m.ncols):
            assert m.entry(i, j) == t.entry(j, i)


# ------------------------------------------------------------------ rref

def test_rref_identity():
    red, pivots, rank = gf2.rref(BitMatrix.identity(3))
    assert rank == 3
    assert pivots == (0, 1, 2)
    assert red == BitMatrix.identity(3)


def test_rref_dependent_rows():
    m = BitMatrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    _, _, rank = gf2.rref(m)
    assert rank == 2


def test_rref_matches_naive_oracle():
    for seed in range(20):
        m = random_bit_matrix(20, 32, seed=100 + seed)
        assert gf2.rank(m) == naive_rank(to_lists(m))


def test_rref_idempotent():
    for seed in range(5):
        m = random_bit_matrix(10, 16, seed=200 + seed)
        red, _, _ = gf2.rref(m)
        red2, _, _ = gf2.rref(red)
        assert red2 == red


def test_rref_pivots_strictly_increasing():
    for seed in range(5):
        m = random_bit_matrix(8, 12, seed=300 + seed)
        _, pivots, rank = gf2.rref(m)
        assert len(pivots) == rank
        assert list(pivots) == sorted(set(pivots))


def test_rref_empty_matrix():
    _, pivots, rank = gf2.rref(BitMatrix(0, 4, []))
    assert rank == 0 and pivots == ()


# ------------------------------------------------------------- nullspace

def test_nullspace_single_parity_check():
    g = BitMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
    h = gf2.nullspace_basis(g)
    assert h == BitMatrix.from_rows([[1, 1, 1]])


def test_nullspace_identity_is_empty():
    assert gf2.nullspace_basis(BitMatrix.identity(4)).nrows == 0


def test_nullspace_orthogonality_and_rank():
    for seed in range(10):
        g = random_bit_matrix(9, 16, seed=400 + seed)
        h = gf2.nullspace_basis(g)
        assert gf2.rank(g) + h.nrows == 16
        assert gf2.rank(h) == h.nrows
        # every H row orthogonal to every G row
        for gr in g.rows:
            for hr in h.rows:
                assert (gr & hr).bit_count() % 2 == 0


# --------------------------------------------------------------- mat_mul

def test_mat_mul_identity():
    m = random_bit_matrix(6, 6, seed=5)
    assert gf2.mat_mul(m, BitMatrix.identity(6)) == m


def test_mat_mul_repetition_into_spc():
    a = BitMatrix.from_rows([[1, 1, 1]])
    b = BitMatrix.from_rows([[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]])
    assert gf2.mat_mul(a, b) == BitMatrix.from_rows([[1, 1, 1, 1]])


def test_mat_mul_shape_mismatch():
    with pytest.raises(ValueError):
        gf2.mat_mul(BitMatrix.identity(3), BitMatrix.identity(4))


def test_mat_mul_matches_naive_oracle():
    for seed in range(5):
        a = random_bit_matrix(64, 64, seed=500 + seed)
        b = random_bit_matrix(64, 64, seed=600 + seed)
        assert to_lists(gf2.mat_mul(a, b)) == naive_mat_mul(to_lists(a), to_lists(b))


def test_mat_mul_associativity():
    for seed in range(5):
        a = random_bit_matrix(7, 9, seed=700 + seed)
        b = random_bit_matrix(9, 11, seed=800 + seed)
        c = random_bit_matrix(11, 6, seed=900 + seed)
        assert gf2.mat_mul(gf2.mat_mul(a, b), c) == gf2.mat_mul(a, gf2.mat_mul(b, c))


def test_mat_vec_matches_mat_mul():
    a = random_bit_matrix(8, 12, seed=42)
    v = BitVector(8, 0b10110101)
    row = BitMatrix(1, 8, [v.bits])
    assert gf2.mat_vec(a, v).bits == gf2.mat_mul(row, a).rows[0]


# ----------------------------------------------------------- permutations

def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 2))


def test_permutation_identity_matrix():
    p = Permutation.identity(4)
    assert gf2.permutation_matrix(p) == BitMatrix.identity(4)


def test_permutation_swap_matrix():
    p = Permutation((1, 0))
    assert gf2.permutation_matrix(p) == BitMatrix.from_rows([[0, 1], [1, 0]])


def test_permutation_inverse_composes_to_identity():
    p = gf2.random_permutation(10, seed=17)
    assert p.compose(p.inverse()) == Permutation.identity(10)
    assert p.inverse().compose(p) == Permutation.identity(10)
    pm = gf2.mat_mul(gf2.permutation_matrix(p), gf2.permutation_matrix(p.inverse()))
    assert pm == BitMatrix.identity(10)


def test_permutation_matrix_is_orthogonal():
    p = gf2.random_permutation(12, seed=23)
    pm = gf2.permutation_matrix(p)
    assert gf2.mat_mul(pm, pm.transpose()) == BitMatrix.identity(12)


def test_permutation_apply_matches_matrix():
    p = gf2.random_permutation(16, seed=31)
    v = BitVector(16, 0b1011001110001101)
    via_matrix = gf2.mat_vec(gf2.permutation_matrix(p), v)
    assert p.apply(v) == via_matrix
    # explicit semantics: output[mapping[j]] = v[j]
    out = p.apply(v)
    for j in range(16):
        assert out.get(p.mapping[j]) == v.get(j)


def test_random_permutation_determinism():
    assert gf2.random_permutation(48, 7) == gf2.random_permutation(48, 7)
    assert gf2.random_permutation(48, 7) != gf2.random_permutation(48, 8)


def test_random_permutation_n1():
    assert gf2.random_permutation(1, 99) == Permutation.identity(1)


def test_random_permutation_first_position_uniform():
    # 10^4 seeds at n=48: chi-square of the first-position histogram within
    # 4 sigma of its df=47 expectation
    n = 48
    trials = 10_000
    bins = [0] * n
    for seed in range(1, trials + 1):
        bins[gf2.random_permutation(n, seed).mapping[0]] += 1
    expected = trials / n
    chi2 = sum((b - expected) ** 2 / expected for b in bins)
    df = n - 1
    assert chi2 < df + 4 * (2 * df) ** 0.5
