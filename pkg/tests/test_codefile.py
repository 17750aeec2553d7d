"""Code-document serialization round trips and error reporting."""

from __future__ import annotations

import json

import pytest

from chainring import ChainRing, code_from_generators, weight_distribution
from chainring.codefile import (
    CodeDocument,
    CodeFileError,
    distribution_to_obj,
    element_from_obj,
    element_to_obj,
    parse_code_document,
    permutation_to_obj,
    ring_from_obj,
    ring_to_obj,
)

Z4 = ChainRing(2, 2)
F2U3 = ChainRing(2, 3, "poly")


class TestRingDescriptor:
    def test_round_trip(self):
        for ring in (Z4, F2U3, ChainRing(5, 3)):
            assert ring_from_obj(ring_to_obj(ring)) == ring

    def test_unknown_backend(self):
        with pytest.raises(CodeFileError, match="unknown backend"):
            ring_from_obj({"p": 2, "s": 2, "backend": "quaternion"})

    def test_missing_fields(self):
        with pytest.raises(CodeFileError, match="integer"):
            ring_from_obj({"p": 2})

    def test_invalid_parameters_surface_as_file_errors(self):
        with pytest.raises(CodeFileError, match="prime"):
            ring_from_obj({"p": 6, "s": 1, "backend": "int"})


class TestElements:
    def test_int_backend(self):
        assert element_to_obj(Z4, 3) == 3
        assert element_from_obj(Z4, -1) == 3

    def test_poly_backend_arrays(self):
        code = F2U3.encode([1, 0, 1])
        assert element_to_obj(F2U3, code) == [1, 0, 1]
        assert element_from_obj(F2U3, [1, 0, 1]) == code

    def test_poly_rejects_scalars(self):
        with pytest.raises(CodeFileError, match="coefficient array"):
            element_from_obj(F2U3, 3)

    def test_int_rejects_arrays(self):
        with pytest.raises(CodeFileError, match="int"):
            element_from_obj(Z4, [1, 0])

    def test_poly_rejects_overlong(self):
        with pytest.raises(CodeFileError, match="coefficients"):
            element_from_obj(F2U3, [1, 0, 1, 1])


class TestCodeDocument:
    def test_round_trip_bit_exact(self):
        doc = CodeDocument(
            ring=Z4, n=3, generators=((1, 0, 1), (0, 2, 0)), name="sample"
        )
        text = json.dumps(doc.to_obj())
        parsed = parse_code_document(text)
        assert parsed == doc
        assert json.dumps(parsed.to_obj()) == text

    def test_poly_round_trip(self):
        rows = ((F2U3.encode([1, 1]), 0), (2, F2U3.encode([0, 0, 1])))
        doc = CodeDocument(ring=F2U3, n=2, generators=rows)
        assert parse_code_document(json.dumps(doc.to_obj())) == doc

    def test_derived_fields(self):
        doc = CodeDocument(ring=Z4, n=3, generators=((1, 0, 1), (0, 2, 0), (0, 0, 2)))
        obj = doc.to_obj()
        assert obj["profile"] == [1, 2]
        assert obj["rank"] == 3
        assert obj["free_rank"] == 1
        assert obj["cardinality"] == "16"

    def test_malformed_json(self):
        with pytest.raises(CodeFileError, match="malformed JSON"):
            parse_code_document("{not json")

    def test_not_an_object(self):
        with pytest.raises(CodeFileError, match="object"):
            parse_code_document("[1,2]")

    def test_missing_ring(self):
        with pytest.raises(CodeFileError, match="ring"):
            parse_code_document('{"n": 2, "generators": []}')

    def test_bad_generator_row(self):
        text = json.dumps(
            {"ring": {"p": 2, "s": 2, "backend": "int"}, "n": 3, "generators": [[1, 0]]}
        )
        with pytest.raises(CodeFileError, match="length 3"):
            parse_code_document(text)

    def test_bad_n(self):
        text = json.dumps(
            {"ring": {"p": 2, "s": 2, "backend": "int"}, "n": -1, "generators": []}
        )
        with pytest.raises(CodeFileError, match="'n'"):
            parse_code_document(text)

    def test_bad_name(self):
        text = json.dumps(
            {
                "ring": {"p": 2, "s": 2, "backend": "int"},
                "n": 1,
                "generators": [],
                "name": 7,
            }
        )
        with pytest.raises(CodeFileError, match="name"):
            parse_code_document(text)


class TestDistributionSerialization:
    def test_decimal_strings(self):
        code = code_from_generators(ChainRing(5, 3), 4, [(1, 0, 57, 0), (0, 1, 0, 68)])
        obj = distribution_to_obj(weight_distribution(code))
        assert obj == ["1", "0", "248", "0", "15376"]

    def test_permutations_are_one_based(self):
        assert permutation_to_obj((2, 0, 1)) == [3, 1, 2]
