"""Linear block codes as generator matrices plus optional systematic positions."""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .gf2 import BitMatrix, BitVector


@dataclass(frozen=True)
class LinearCode:
    """An (n, k) binary linear code.

    `generator` is a full-rank k x n matrix. `systematic_positions`, when
    present, is the ordered tuple of coordinates where the message appears
    verbatim: encoding message u gives a codeword c with
    c[systematic_positions[t]] = u[t].
    """

    generator: BitMatrix
    systematic_positions: tuple | None = None

    def __post_init__(self):
        if self.systematic_positions is not None:
            if len(self.systematic_positions) != self.k:
                raise ValueError("systematic position count != dimension")
            if len(set(self.systematic_positions)) != self.k:
                raise ValueError("systematic positions not distinct")

    @property
    def n(self) -> int:
        return self.generator.ncols

    @property
    def k(self) -> int:
        return self.generator.nrows

    def encode(self, message: BitVector) -> BitVector:
        return gf2.mat_vec(self.generator, message)

    def parity_check(self) -> BitMatrix:
        return gf2.nullspace_basis(self.generator)

    def dual(self) -> "LinearCode":
        return LinearCode(self.parity_check())

    def check_full_rank(self) -> bool:
        return gf2.rank(self.generator) == self.k
