"""Tests for JSON code descriptors."""

import json

import pytest

from concatspec import descriptors, spectrum
from concatspec.descriptors import DescriptorError, build_code, descriptor_hash


def test_polar_descriptor():
    code = build_code({"polar": {"n": 64, "k": 48, "eps": "3/10"}})
    assert (code.n, code.k) == (64, 48)


def test_crc_descriptor():
    code = build_code({"crc": {"g": "x^8+x^2+x+1", "N": 48}})
    assert (code.n, code.k) == (48, 40)


def test_bch_descriptor_default_field():
    code = build_code({"bch": {"m": 8, "t": 2, "N": 48}})
    assert (code.n, code.k) == (48, 32)


def test_bch_descriptor_explicit_field():
    code = build_code(
        {"bch": {"m": 4, "t": 1, "N": 15, "primitive_poly": "x^4+x+1"}}
    )
    assert (code.n, code.k) == (15, 11)


def test_bch_descriptor_requires_field_for_other_m():
    with pytest.raises(DescriptorError):
        build_code({"bch": {"m": 4, "t": 1, "N": 15}})


def test_concat_descriptor_identity_and_seeded():
    doc = {
        "concat": {
            "outer": {"crc": {"g": "x^8+x^2+x+1", "N": 48}},
            "inner": {"polar": {"n": 64, "k": 48, "eps": "3/10"}},
            "interleaver": "identity",
        }
    }
    code = build_code(doc)
    assert (code.n, code.k) == (64, 40)
    doc["concat"]["interleaver"] = {"seed": 7}
    seeded = build_code(doc)
    assert seeded.generator != code.generator


def test_concat_descriptor_bad_interleaver():
    doc = {
        "concat": {
            "outer": {"crc": {"g": "x+1", "N": 3}},
            "inner": {"crc": {"g": "x+1", "N": 4}},
            "interleaver": "random",
        }
    }
    with pytest.raises(DescriptorError):
        build_code(doc)


def test_matrix_file_descriptor(tmp_path):
    (tmp_path / "m.txt").write_text("2 3\n101\n011\n")
    code = build_code({"matrix_file": "m.txt"}, base_dir=tmp_path)
    assert (code.n, code.k) == (3, 2)
    assert spectrum.enumerate_wef(code).counts == (1, 0, 3, 0)


def test_matrix_file_missing(tmp_path):
    with pytest.raises(DescriptorError):
        build_code({"matrix_file": "nope.txt"}, base_dir=tmp_path)


def test_exactly_one_variant_required():
    with pytest.raises(DescriptorError):
        build_code({})
    with pytest.raises(DescriptorError):
        build_code({"polar": {"n": 2, "k": 1, "eps": "0.5"},
                    "crc": {"g": "x+1", "N": 3}})


def test_missing_field_names_the_field():
    with pytest.raises(DescriptorError, match="eps"):
        build_code({"polar": {"n": 64, "k": 48}})


def test_load_descriptor_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(DescriptorError):
        descriptors.load_descriptor(p)


def test_descriptor_hash_canonical():
    a = {"polar": {"n": 64, "k": 48, "eps": "3/10"}}
    b = json.loads(json.dumps({"polar": {"eps": "3/10", "k": 48, "n": 64}}))
    assert descriptor_hash(a) == descriptor_hash(b)
    assert descriptor_hash(a) != descriptor_hash({"polar": {"n": 64, "k": 47, "eps": "3/10"}})
