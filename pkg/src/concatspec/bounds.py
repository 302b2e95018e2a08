"""Union bound on ML block-error probability over the binary erasure channel.

The bound splits erasure patterns by weight e: patterns with e > n-k erasures
are charged to the ideal-MDS (Singleton) term; for e <= n-k the union term
counts, per pattern, the fraction of weight-w spectral lines supported inside
the pattern, clamped at 1:

    P <= P_singleton(n, k, eps)
         + sum_{e=1}^{n-k} C(n,e) eps^e (1-eps)^(n-e)
           * min(1, sum_{w=1}^{e} A_w * C(n-w, e-w) / C(n,e))

The inner ratio equals C(e,w)/C(n,w) by a binomial identity (asserted in the
tests); either form evaluates identically. Some printed statements of this
bound carry a typo in the inner binomial and run the outer sum to k; patterns
with e > n-k are already fully covered by the Singleton term, so the form
above is the meaningful reading and is the one implemented.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import comb


@dataclass(frozen=True)
class BoundCurve:
    """Sequence of (erasure probability, block-error upper bound) points."""

    points: tuple  # (eps, p_block) pairs
    label: str = ""

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["epsilon", "p_block_upper_bound"])
        for eps, p in self.points:
            w.writerow([f"{eps:.12g}", f"{p:.12g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, label: str = "") -> "BoundCurve":
        rows = list(csv.reader(io.StringIO(text)))
        if rows[0] != ["epsilon", "p_block_upper_bound"]:
            raise ValueError("bad curve CSV header")
        return cls(tuple((float(a), float(b)) for a, b in rows[1:]), label)


def default_eps_grid():
    """eps in {0.05, 0.06, ..., 0.50}."""
    return [round(0.05 + 0.01 * i, 2) for i in range(46)]


def singleton_bep(n: int, k: int, eps):
    """Block-error probability of an ideal MDS code: P(more than n-k erasures)."""
    if not 0 <= eps <= 1:
        raise ValueError("eps outside [0, 1]")
    exact = isinstance(eps, Fraction)
    one = Fraction(1) if exact else 1.0
    e_ = eps if exact else float(eps)
    total = sum(
        comb(n, e) * e_**e * (one - e_) ** (n - e) for e in range(n - k + 1, n + 1)
    )
    return total


def union_bound_bec(spectrum_values, n: int, k: int, eps):
    """Union bound with Singleton split; `spectrum_values[w]` may be exact
    (single code) or an ensemble average. Passing Fraction eps and rational
    spectrum values gives an exact-rational evaluation."""
    exact = isinstance(eps, Fraction)
    if not 0 <= eps <= 1:
        raise ValueError("eps outside [0, 1]")
    values = list(spectrum_values)
    values += [0] * (n + 1 - len(values))
    if any(v < 0 for v in values[: n + 1]):
        raise ValueError("spectrum multiplicities must be nonnegative")
    one = Fraction(1) if exact else 1.0
    e_ = eps if exact else float(eps)
    total = singleton_bep(n, k, eps)
    for e in range(1, n - k + 1):
        inner = Fraction(0) if exact else 0.0
        for w in range(1, e + 1):
            a = values[w]
            if a:
                if exact:
                    inner += Fraction(a) * comb(n - w, e - w) / comb(n, e)
                else:
                    inner += float(a) * (comb(n - w, e - w) / comb(n, e))
        total += comb(n, e) * e_**e * (one - e_) ** (n - e) * min(one, inner)
    return total


def bound_curve(spectrum_values, n: int, k: int, eps_grid=None, label: str = "") -> BoundCurve:
    if eps_grid is None:
        eps_grid = default_eps_grid()
    pts = []
    for eps in eps_grid:
        if not 0 <= eps <= 1:
            raise ValueError("eps grid value outside [0, 1]")
        pts.append((float(eps), float(union_bound_bec(spectrum_values, n, k, eps))))
    return BoundCurve(tuple(pts), label)
