"""Tests for concatenation, uniform-interleaver averages, expurgation, census."""

from fractions import Fraction
from itertools import permutations
from math import comb

import pytest

from concatspec import cyclic, ensemble, gf2, spectrum
from concatspec.codes import LinearCode
from concatspec.cyclic import Gf2Poly
from concatspec.ensemble import AvgSpectrum, concat_code, dmin_census, expurgate, uniform_awef
from concatspec.gf2 import BitMatrix, Permutation
from concatspec.polar import systematic_polar_code
from concatspec.spectrum import IOSpectrum, WeightSpectrum


REP31 = LinearCode(BitMatrix.from_rows([[1, 1, 1]]), (0,))
SPC43 = cyclic.crc_code(Gf2Poly.from_string("x+1"), 4)  # (4,3) single parity check


def polar6448():
    return systematic_polar_code(64, 48, Fraction(3, 10))


def crc8_outer():
    return cyclic.crc_code(Gf2Poly.from_string(cyclic.CRC8_POLY_TEXT), 48)


# ----------------------------------------------------------- concat_code

def test_concat_toy():
    code = concat_code(REP31, Permutation.identity(3), SPC43)
    assert code.generator == BitMatrix.from_rows([[1, 1, 1, 1]])
    assert spectrum.enumerate_wef(code).counts == (1, 0, 0, 0, 1)


def test_concat_dimension_mismatch():
    with pytest.raises(ValueError):
        concat_code(SPC43, Permutation.identity(4), SPC43)
    with pytest.raises(ValueError):
        concat_code(REP31, Permutation.identity(4), SPC43)


def test_concat_identity_equals_plain_product():
    outer, inner = crc8_outer(), polar6448()
    code = concat_code(outer, Permutation.identity(48), inner)
    assert code.generator == gf2.mat_mul(outer.generator, inner.generator)


def test_concat_crc8_polar_identity_dmin_6():
    code = concat_code(crc8_outer(), Permutation.identity(48), polar6448())
    assert spectrum.min_distance(code) == 6


def test_concat_p56_crc16_identity_dmin_4():
    outer = cyclic.crc_code(Gf2Poly.from_string(cyclic.CRC16_CCITT_POLY_TEXT), 56)
    inner = systematic_polar_code(64, 56, Fraction(3, 10))
    code = concat_code(outer, Permutation.identity(56), inner)
    assert spectrum.min_distance(code) == 4


def test_concat_systematic_bookkeeping():
    outer, inner = crc8_outer(), polar6448()
    perm = gf2.random_permutation(48, 5)
    code = concat_code(outer, perm, inner)
    from concatspec.gf2 import BitVector
    from concatspec.rng import SplitMix64

    rng = SplitMix64(1)
    for _ in range(50):
        u = BitVector(40, rng.next_u64())
        c = code.encode(u)
        for t, pos in enumerate(code.systematic_positions):
            assert c.get(pos) == u.get(t)


# ---------------------------------------------------------- uniform_awef

def test_awef_identity_inner_equals_outer_wef():
    outer = SPC43
    inner = LinearCode(BitMatrix.identity(4), tuple(range(4)))
    outer_wef = spectrum.enumerate_wef(outer)
    _, inner_io = spectrum.code_spectra(inner)
    avg = uniform_awef(outer_wef, inner_io)
    assert avg.values == tuple(Fraction(c) for c in outer_wef.counts)


def brute_force_awef(outer: LinearCode, inner: LinearCode):
    """Exact average WEF over every interleaver permutation."""
    n_perms = 0
    total = [Fraction(0)] * (inner.n + 1)
    for p in permutations(range(outer.n)):
        code = concat_code(outer, Permutation(p), inner)
        wef = spectrum.enumerate_wef(code)
        for w, c in enumerate(wef.counts):
            total[w] += c
        n_perms += 1
    return tuple(v / n_perms for v in total)


@pytest.mark.parametrize(
    "outer,inner",
    [
        (REP31, SPC43),
        (cyclic.crc_code(Gf2Poly.from_string("x+1"), 3), SPC43),
        (
            cyclic.crc_code(Gf2Poly.from_string("x+1"), 5),
            cyclic.crc_code(Gf2Poly.from_string("x^2+x+1"), 7),
        ),
    ],
)
def test_awef_equals_brute_force_average(outer, inner):
    outer_wef = spectrum.enumerate_wef(outer)
    _, inner_io = spectrum.code_spectra(inner)
    avg = uniform_awef(outer_wef, inner_io)
    assert avg.values == brute_force_awef(outer, inner)
    assert avg.total() == 1 << outer.k


def test_awef_rep31_spc43():
    outer_wef = spectrum.enumerate_wef(REP31)
    _, inner_io = spectrum.code_spectra(SPC43)
    avg = uniform_awef(outer_wef, inner_io)
    assert avg.values == (Fraction(1), 0, 0, 0, Fraction(1))


def test_awef_length_mismatch():
    with pytest.raises(ValueError):
        uniform_awef(WeightSpectrum(3, (1, 0, 0, 1)), IOSpectrum(4, 5, tuple(
            tuple(0 for _ in range(6)) for _ in range(5))))


def test_awef_bch32_polar_a6():
    outer = cyclic.shortened_bch_code(cyclic.default_field_m8(), 2, 48)
    outer_wef = spectrum.code_wef(outer)
    _, inner_io = spectrum.code_spectra(polar6448())
    avg = uniform_awef(outer_wef, inner_io)
    assert abs(float(avg.values[6]) - 0.0336) < 0.0005
    assert avg.total() == 1 << 32


def test_awef_csv_format():
    avg = AvgSpectrum(2, (Fraction(1), Fraction(0), Fraction(1, 3)))
    lines = avg.to_csv().splitlines()
    assert lines[0] == "weight,multiplicity,decimal"
    assert lines[1].startswith("0,1/1,")
    assert lines[2].startswith("2,1/3,")


# ------------------------------------------------------------ expurgation

def test_expurgate_removes_prefix_and_rescales():
    avg = AvgSpectrum(8, (Fraction(1), 0, 0, 0, Fraction(1, 5), 0,
                          Fraction(3, 2), 0, Fraction(40)))
    rep = expurgate(avg, Fraction(99, 100))
    assert rep.adoptable
    assert rep.removed_weights == (4,)
    assert rep.removed_mass == Fraction(1, 5)
    assert rep.good_spectrum.values[4] == 0
    assert rep.good_spectrum.values[6] == Fraction(3, 2) / Fraction(99, 100)
    assert rep.good_spectrum.values[8] == Fraction(40) / Fraction(99, 100)
    assert rep.good_spectrum.values[0] == Fraction(1)  # weight 0 untouched


def test_expurgate_not_adoptable_when_first_line_large():
    avg = AvgSpectrum(6, (Fraction(1), 0, 0, 0, Fraction(23, 10), 0, Fraction(7)))
    rep = expurgate(avg, Fraction(99, 100))
    assert not rep.adoptable
    assert rep.good_spectrum.values == avg.values


def test_expurgate_not_adoptable_when_mass_too_large():
    # two removable lines summing to >= 1: the Markov argument breaks down
    avg = AvgSpectrum(6, (Fraction(1), 0, Fraction(1, 2), 0, Fraction(3, 5), 0,
                          Fraction(7)))
    rep = expurgate(avg, Fraction(99, 100))
    assert not rep.adoptable


def test_expurgate_rejects_bad_xi():
    with pytest.raises(ValueError):
        expurgate(AvgSpectrum(1, (Fraction(1), Fraction(1))), Fraction(1))


def test_expurgated_dmins_match_schemes():
    from concatspec import recipes

    expect = {"fig3": 8, "fig4": 8, "fig5": 6}
    for name, want in expect.items():
        avg = recipes.scheme_awef(recipes.SCHEMES[name])
        rep = expurgate(avg)
        assert rep.adoptable, name
        assert rep.good_spectrum.min_distance() == want, name
    # CRC-8 case: first nonzero line already >= xi
    rep = expurgate(recipes.scheme_awef(recipes.SCHEMES["fig1"]))
    assert not rep.adoptable


# ----------------------------------------------------------------- census

def test_census_identity_seedless_consistency():
    # a census over one seed equals a direct min_distance of that instance
    outer, inner = crc8_outer(), polar6448()
    result = dmin_census(outer, inner, [3])
    perm = gf2.random_permutation(48, 3)
    direct = spectrum.min_distance(concat_code(outer, perm, inner))
    assert result.per_seed == ((3, direct),)
    assert result.histogram == {direct: 1}


def test_census_merges_histogram_and_csv():
    outer, inner = crc8_outer(), polar6448()
    result = dmin_census(outer, inner, [1, 2, 3, 4])
    assert sum(result.histogram.values()) == 4
    lines = result.to_csv().splitlines()
    assert lines[0] == "seed,dmin"
    assert len(lines) == 5


def test_census_worker_count_invariance():
    outer, inner = crc8_outer(), polar6448()
    a = dmin_census(outer, inner, [1, 2], workers=1)
    b = dmin_census(outer, inner, [1, 2], workers=2)
    assert a.per_seed == b.per_seed
