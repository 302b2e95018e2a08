"""Monte Carlo ML-decoding oracle over the BEC.

ML decoding over the erasure channel fails iff the generator matrix
restricted to the non-erased coordinates has rank below k, i.e. some nonzero
codeword is supported entirely on the erased set; ties (several compatible
codewords) count as block error.

Randomness: trial t of a run with seed s uses its own SplitMix64 stream
seeded with mix64(s xor (t+1)*TRIAL_GAMMA), so results are independent of how
trials are partitioned across workers. Each coordinate is erased iff the next
64-bit draw is below floor(eps * 2^64).

The hot path is a numba-compiled kernel for codes with n <= 64; a pure-Python
fallback covers longer codes and interpreters without numba.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .codes import LinearCode
from .rng import GAMMA, MASK64, TRIAL_GAMMA, mix64

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


@dataclass(frozen=True)
class SimResult:
    trials: int
    failures: int
    estimate: float
    ci95_low: float
    ci95_high: float
    eps: float
    seed: int

    def stderr(self) -> float:
        p = self.estimate
        return math.sqrt(max(p * (1 - p), 0.0) / self.trials)

    def to_json(self) -> str:
        return json.dumps(
            {
                "eps": self.eps,
                "trials": self.trials,
                "failures": self.failures,
                "estimate": self.estimate,
                "ci95": [self.ci95_low, self.ci95_high],
                "seed": self.seed,
            },
            indent=2,
        )


def ml_failure(code: LinearCode, erased) -> bool:
    """True iff the erasure pattern is not ML-decodable (rank deficiency)."""
    mask = 0
    for j in erased:
        if not 0 <= j < code.n:
            raise ValueError(f"erased index {j} out of range")
        mask |= 1 << j
    return _rank_deficient(code.generator.rows, code.k, code.n, mask)


def _wilson_ci(failures: int, trials: int):
    z = 1.959963984540054  # 97.5th normal percentile
    p = failures / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    # clamp against rounding so the interval always brackets the estimate
    return min(max(0.0, center - half), p), max(min(1.0, center + half), p)


def _erasure_mask_python(state: int, n: int, threshold: int) -> int:
    mask = 0
    for j in range(n):
        state = (state + GAMMA) & MASK64
        if mix64(state) < threshold:
            mask |= 1 << j
    return mask


def _simulate_python(rows, k, n, threshold, trials, seed):
    failures = 0
    for t in range(trials):
        st = mix64(seed ^ ((t + 1) * TRIAL_GAMMA & MASK64))
        mask = _erasure_mask_python(st, n, threshold)
        if _rank_deficient(rows, k, n, mask):
            failures += 1
    return failures


def _rank_deficient(rows, k, n, erased_mask):
    work = list(rows)
    rank = 0
    for c in range(n):
        if (erased_mask >> c) & 1:
            continue
        pivot = None
        for i in range(rank, k):
            if (work[i] >> c) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(rank + 1, k):
            if (work[i] >> c) & 1:
                work[i] ^= work[rank]
        rank += 1
        if rank == k:
            return False
    return True


if _HAVE_NUMBA:

    @njit(cache=True)
    def _simulate_kernel(rows, k, n, threshold, trials, seed):  # pragma: no cover
        gamma = np.uint64(GAMMA)
        trial_gamma = np.uint64(TRIAL_GAMMA)
        mix1 = np.uint64(0xBF58476D1CE4E5B9)
        mix2 = np.uint64(0x94D049BB133111EB)
        one = np.uint64(1)
        failures = 0
        work = np.empty(k, dtype=np.uint64)
        for t in range(trials):
            # per-trial stream seed: mix64(seed ^ (t+1)*TRIAL_GAMMA)
            z = np.uint64(seed) ^ (np.uint64(t + 1) * trial_gamma)
            z = (z ^ (z >> np.uint64(30))) * mix1
            z = (z ^ (z >> np.uint64(27))) * mix2
            state = z ^ (z >> np.uint64(31))
            mask = np.uint64(0)
            for j in range(n):
                state = state + gamma
                z = state
                z = (z ^ (z >> np.uint64(30))) * mix1
                z = (z ^ (z >> np.uint64(27))) * mix2
                z = z ^ (z >> np.uint64(31))
                if z < np.uint64(threshold):
                    mask |= one << np.uint64(j)
            for i in range(k):
                work[i] = rows[i]
            rank = 0
            for c in range(n):
                if (mask >> np.uint64(c)) & one:
                    continue
                pivot = -1
                for i in range(rank, k):
                    if (work[i] >> np.uint64(c)) & one:
                        pivot = i
                        break
                if pivot < 0:
                    continue
                tmp = work[rank]
                work[rank] = work[pivot]
                work[pivot] = tmp
                for i in range(rank + 1, k):
                    if (work[i] >> np.uint64(c)) & one:
                        work[i] ^= work[rank]
                rank += 1
                if rank == k:
                    break
            if rank < k:
                failures += 1
        return failures


def simulate_bep(code: LinearCode, eps: float, trials: int, seed: int) -> SimResult:
    """Estimate the ML block-error probability over a BEC(eps)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    eps = float(eps)
    if not 0 <= eps <= 1:
        raise ValueError("eps outside [0, 1]")
    n, k = code.n, code.k
    threshold = min(MASK64, int(eps * (MASK64 + 1)))
    if eps >= 1.0:
        threshold = MASK64  # a draw equal to MASK64 still erases, see below
    if _HAVE_NUMBA and n <= 64 and eps < 1.0:
        rows = np.array(code.generator.rows, dtype=np.uint64)
        failures = int(
            _simulate_kernel(
                rows, k, n, np.uint64(threshold), trials, np.uint64(seed & MASK64)
            )
        )
    elif eps >= 1.0:
        failures = trials if k >= 1 else 0
    else:
        failures = _simulate_python(code.generator.rows, k, n, threshold, trials, seed & MASK64)
    lo, hi = _wilson_ci(failures, trials)
    return SimResult(trials, failures, failures / trials, lo, hi, eps, seed)
