"""Named study configurations: the five figure schemes and the census table.

Each scheme pairs an inner systematic polar code designed at eps = 3/10 with
a cyclic outer code of matching length:

    fig1: polar(64,48) + CRC-8            (48,40) outer
    fig2: polar(64,48) + BCH(48,40)       shortened, t=1
    fig3: polar(64,48) + CRC-16-CCITT     (48,32) outer
    fig4: polar(64,48) + BCH(48,32)       shortened, t=2
    fig5: polar(64,56) + CRC-16-CCITT     (56,40) outer
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import cyclic, ensemble, polar, spectrum
from .codes import LinearCode
from .gf2 import Permutation

DESIGN_EPS = Fraction(3, 10)
DEFAULT_CENSUS_SEEDS = tuple(range(1, 26))


@dataclass(frozen=True)
class Scheme:
    name: str
    outer_name: str
    inner_n: int
    inner_k: int

    @property
    def label(self) -> str:
        return f"polar({self.inner_n},{self.inner_k})+{self.outer_name}"


SCHEMES = {
    "fig1": Scheme("fig1", "crc8", 64, 48),
    "fig2": Scheme("fig2", "bch40", 64, 48),
    "fig3": Scheme("fig3", "crc16", 64, 48),
    "fig4": Scheme("fig4", "bch32", 64, 48),
    "fig5": Scheme("fig5", "crc16", 64, 56),
}


@lru_cache(maxsize=None)
def inner_code(n: int, k: int) -> LinearCode:
    return polar.systematic_polar_code(n, k, DESIGN_EPS)


@lru_cache(maxsize=None)
def outer_code(name: str, length: int) -> LinearCode:
    if name == "crc8":
        g = cyclic.Gf2Poly.from_string(cyclic.CRC8_POLY_TEXT)
        return cyclic.crc_code(g, length)
    if name == "crc16":
        g = cyclic.Gf2Poly.from_string(cyclic.CRC16_CCITT_POLY_TEXT)
        return cyclic.crc_code(g, length)
    if name == "bch40":
        return cyclic.shortened_bch_code(cyclic.default_field_m8(), 1, length)
    if name == "bch32":
        return cyclic.shortened_bch_code(cyclic.default_field_m8(), 2, length)
    raise ValueError(f"unknown outer code {name!r}")


def scheme_codes(scheme: Scheme):
    inner = inner_code(scheme.inner_n, scheme.inner_k)
    outer = outer_code(scheme.outer_name, inner.k)
    return outer, inner


def scheme_awef(scheme: Scheme, budget_exponent=spectrum.DEFAULT_BUDGET_EXPONENT):
    outer, inner = scheme_codes(scheme)
    outer_wef = spectrum.code_wef(outer, budget_exponent)
    _, inner_io = spectrum.code_spectra(inner, budget_exponent)
    return ensemble.uniform_awef(outer_wef, inner_io)


def no_interleaver_code(scheme: Scheme) -> LinearCode:
    outer, inner = scheme_codes(scheme)
    return ensemble.concat_code(outer, Permutation.identity(outer.n), inner)
