"""JSON code descriptors used by the command-line front end.

Exactly one of the variant keys must be present:

    {"polar":  {"n": 64, "k": 48, "eps": "3/10"}}
    {"crc":    {"g": "x^8+x^2+x+1", "N": 48}}
    {"bch":    {"m": 8, "t": 2, "N": 48, "primitive_poly": "x^8+x^4+x^3+x^2+1"}}
    {"concat": {"outer": {...}, "inner": {...},
                "interleaver": "identity" | {"seed": 7}}}
    {"matrix_file": "path/to/matrix.txt"}

`primitive_poly` is optional and defaults to the conventional GF(2^8)
polynomial. Matrix files use the text format of `gf2.BitMatrix`.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from . import cyclic, ensemble, gf2, polar
from .codes import LinearCode

_VARIANTS = ("polar", "crc", "bch", "concat", "matrix_file")


class DescriptorError(ValueError):
    """Malformed descriptor; message names the offending field."""


def _require(doc: dict, field: str, ctx: str):
    if field not in doc:
        raise DescriptorError(f"{ctx}: missing field '{field}'")
    return doc[field]


def load_descriptor(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{path}: not valid JSON ({exc})") from exc


def descriptor_hash(doc: dict) -> str:
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def build_code(doc: dict, base_dir: Path | None = None) -> LinearCode:
    """Instantiate the code selected by a descriptor document."""
    present = [v for v in _VARIANTS if v in doc]
    if len(present) != 1:
        raise DescriptorError(
            f"descriptor must contain exactly one of {_VARIANTS}, got {present}"
        )
    kind = present[0]
    body = doc[kind]

    if kind == "polar":
        n = int(_require(body, "n", "polar"))
        k = int(_require(body, "k", "polar"))
        eps = polar.parse_eps(str(_require(body, "eps", "polar")))
        return polar.systematic_polar_code(n, k, eps)

    if kind == "crc":
        g = cyclic.Gf2Poly.from_string(str(_require(body, "g", "crc")))
        n = int(_require(body, "N", "crc"))
        return cyclic.crc_code(g, n)

    if kind == "bch":
        m = int(_require(body, "m", "bch"))
        t = int(_require(body, "t", "bch"))
        n = int(_require(body, "N", "bch"))
        if "primitive_poly" in body:
            field = cyclic.Gf2mField(m, cyclic.Gf2Poly.from_string(body["primitive_poly"]))
        elif m == 8:
            field = cyclic.default_field_m8()
        else:
            raise DescriptorError(f"bch: primitive_poly required for m={m}")
        return cyclic.shortened_bch_code(field, t, n)

    if kind == "concat":
        outer = build_code(_require(body, "outer", "concat"), base_dir)
        inner = build_code(_require(body, "inner", "concat"), base_dir)
        ileave = body.get("interleaver", "identity")
        if ileave == "identity":
            perm = gf2.Permutation.identity(outer.n)
        elif isinstance(ileave, dict) and "seed" in ileave:
            perm = gf2.random_permutation(outer.n, int(ileave["seed"]))
        else:
            raise DescriptorError(
                "concat: interleaver must be 'identity' or {'seed': int}"
            )
        return ensemble.concat_code(outer, perm, inner)

    # matrix_file
    path = Path(doc["matrix_file"])
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    if not path.exists():
        raise DescriptorError(f"matrix_file: {path} does not exist")
    mat = gf2.BitMatrix.from_text(path.read_text())
    return LinearCode(mat)
