"""Concatenated-code assembly, uniform-interleaver averages, expurgation,
and interleaver minimum-distance censuses.

Expurgation rule: scanning nonzero spectral lines in ascending weight, every
line with average multiplicity below the good-fraction xi is removed, stopping
at the first line at or above xi; surviving lines are scaled by 1/xi. This is
the conservative upper bound on the good-subset spectrum implied by
avg = xi * good + (1 - xi) * bad. If already the first nonzero line is at or
above xi, expurgation is reported as not adoptable and the spectrum is kept
unchanged.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import gf2, spectrum
from .codes import LinearCode
from .gf2 import Permutation
from .spectrum import DEFAULT_BUDGET_EXPONENT, IOSpectrum, WeightSpectrum


@dataclass(frozen=True)
class AvgSpectrum:
    """Ensemble-average weight enumerator; values are exact rationals."""

    n: int
    values: tuple  # n+1 Fractions

    def __post_init__(self):
        if len(self.values) != self.n + 1:
            raise ValueError("values must have length n+1")

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def min_distance(self):
        for w in range(1, self.n + 1):
            if self.values[w]:
                return w
        return None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["weight", "multiplicity", "decimal"])
        for i, v in enumerate(self.values):
            if v:
                w.writerow([i, f"{v.numerator}/{v.denominator}", repr(float(v))])
        return buf.getvalue()

    def to_floats(self) -> list:
        return [float(v) for v in self.values]


@dataclass(frozen=True)
class ExpurgationReport:
    xi: Fraction
    adoptable: bool
    removed_weights: tuple
    removed_mass: Fraction
    good_spectrum: AvgSpectrum


def concat_code(outer: LinearCode, interleaver: Permutation, inner: LinearCode) -> LinearCode:
    """Serial concatenation G = G_outer . P(interleaver) . G_inner.

    The outer codeword, permuted by the interleaver, is the message fed to
    the inner encoder. Systematic positions of the result (bookkeeping only)
    are the images of the outer code's systematic support through the
    interleaver and the inner code's systematic map.
    """
    if outer.n != inner.k:
        raise ValueError(
            f"outer length {outer.n} must equal inner dimension {inner.k}"
        )
    if interleaver.n != outer.n:
        raise ValueError(f"interleaver size {interleaver.n} != outer length {outer.n}")
    g = gf2.mat_mul(
        gf2.mat_mul(outer.generator, gf2.permutation_matrix(interleaver)),
        inner.generator,
    )
    positions = None
    if outer.systematic_positions is not None and inner.systematic_positions is not None:
        positions = tuple(
            inner.systematic_positions[interleaver.mapping[j]]
            for j in outer.systematic_positions
        )
    return LinearCode(g, positions)


def uniform_awef(outer_wef: WeightSpectrum, inner_io: IOSpectrum) -> AvgSpectrum:
    """Uniform-interleaver average WEF of the concatenation, exact rationals:
    avg[w] = sum_i outer[i] * inner_io[i][w] / C(N, i)."""
    big_n = outer_wef.n
    if big_n != inner_io.k:
        raise ValueError(
            f"outer length {big_n} must equal inner input size {inner_io.k}"
        )
    values = []
    for w in range(inner_io.n + 1):
        s = Fraction(0)
        for i in range(big_n + 1):
            a_out = outer_wef.counts[i]
            if a_out and inner_io.table[i][w]:
                s += Fraction(a_out * inner_io.table[i][w], comb(big_n, i))
        values.append(s)
    return AvgSpectrum(inner_io.n, tuple(values))


def expurgate(avg: AvgSpectrum, xi: Fraction = Fraction(99, 100)) -> ExpurgationReport:
    """Remove low-weight lines attributable to the bad fraction (see module
    docstring for the exact rule)."""
    xi = Fraction(xi)
    if not 0 < xi < 1:
        raise ValueError("xi must lie strictly between 0 and 1")
    removed = []
    mass = Fraction(0)
    for w in range(1, avg.n + 1):
        v = avg.values[w]
        if not v:
            continue
        if v < xi:
            removed.append(w)
            mass += v
        else:
            break
    if not removed:
        return ExpurgationReport(xi, False, (), Fraction(0), avg)
    if mass >= 1:
        # removed mass no longer fits in a (1 - xi) bad fraction of codes;
        # the Markov-style argument breaks down, downgrade to not adoptable
        return ExpurgationReport(xi, False, (), Fraction(0), avg)
    removed_set = set(removed)
    values = [
        Fraction(0) if w in removed_set else (v / xi if w else v)
        for w, v in enumerate(avg.values)
    ]
    return ExpurgationReport(xi, True, tuple(removed), mass, AvgSpectrum(avg.n, tuple(values)))


@dataclass(frozen=True)
class CensusResult:
    per_seed: tuple  # (seed, dmin) pairs
    histogram: dict

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["seed", "dmin"])
        for seed, d in self.per_seed:
            w.writerow([seed, d])
        return buf.getvalue()


def _census_job(args):
    outer, inner, seed, budget_exponent = args
    perm = gf2.random_permutation(outer.n, seed)
    code = concat_code(outer, perm, inner)
    return seed, spectrum.min_distance(code, budget_exponent)


def dmin_census(outer: LinearCode, inner: LinearCode, seeds,
                budget_exponent=DEFAULT_BUDGET_EXPONENT,
                workers: int = 1) -> CensusResult:
    """Minimum distance of the concatenation for one random interleaver per
    seed, plus the aggregated histogram.

    Seeds are independent jobs; with workers > 1 they run in separate
    processes and the merged result does not depend on the worker count.
    """
    jobs = [(outer, inner, seed, budget_exponent) for seed in seeds]
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_seed = list(pool.map(_census_job, jobs))
    else:
        per_seed = [_census_job(j) for j in jobs]
    hist: dict = {}
    for _, d in per_seed:
        hist[d] = hist.get(d, 0) + 1
    return CensusResult(tuple(per_seed), hist)
