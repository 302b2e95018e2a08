"""Distance spectra and ML union bounds for short concatenated polar+cyclic codes."""

__version__ = "0.1.0"

from .errors import BudgetExceededError, IntegrityError
from .gf2 import BitMatrix, BitVector, Permutation
from .codes import LinearCode

__all__ = [
    "BitMatrix",
    "BitVector",
    "Permutation",
    "LinearCode",
    "BudgetExceededError",
    "IntegrityError",
]
