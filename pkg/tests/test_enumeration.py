"""Exhaustive enumeration: distributions, codeword streams, minimum distance."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from chainring import (
    CapExceededError,
    ChainRing,
    code_from_generators,
    enumerate_codewords,
    enumeration_cap,
    identity_matrix,
    min_distance,
    render_enumerator,
    weight_distribution,
)
from chainring.enumeration import DEFAULT_ENUMERATION_CAP, ENUMERATION_CAP_ENV
from oracles import brute_weight_counts

Z4 = ChainRing(2, 2)
Z8 = ChainRing(2, 3)
Z9 = ChainRing(3, 2)
Z125 = ChainRing(5, 3)
F2U3 = ChainRing(2, 3, "poly")

REFERENCE_Z4 = [(1, 0, 1), (0, 2, 0), (0, 0, 2)]
TINY_RINGS = [ChainRing(2, 1), Z4, Z8, Z9, F2U3]


@st.composite
def small_code(draw):
    ring = draw(st.sampled_from(TINY_RINGS))
    n = draw(st.integers(1, 4))
    nrows = draw(st.integers(0, 3))
    rows = [
        [draw(st.integers(0, ring.size - 1)) for _ in range(n)] for _ in range(nrows)
    ]
    return code_from_generators(ring, n, rows)


class TestWeightDistribution:
    def test_reference_z4_code(self):
        code = code_from_generators(Z4, 3, REFERENCE_Z4)
        dist = weight_distribution(code)
        assert dist.counts == (1, 3, 7, 5)
        assert dist.counts == brute_weight_counts(Z4, REFERENCE_Z4, 3)

    def test_reference_pair_over_z125(self):
        c1 = code_from_generators(Z125, 4, [(1, 0, 57, 0), (0, 1, 0, 68)])
        c2 = code_from_generators(Z125, 4, [(1, 0, 5, 43), (0, 1, 82, 5)])
        assert weight_distribution(c1).counts == (1, 0, 248, 0, 15376)
        assert weight_distribution(c2).counts == (1, 0, 8, 480, 15136)

    def test_zero_code(self):
        dist = weight_distribution(code_from_generators(Z8, 4, []))
        assert dist.counts == (1, 0, 0, 0, 0)

    def test_full_space(self):
        from math import comb

        code = code_from_generators(Z9, 3, identity_matrix(Z9, 3).rows)
        dist = weight_distribution(code)
        assert dist.counts == tuple(comb(3, i) * 8**i for i in range(4))

    @settings(max_examples=50, deadline=None)
    @given(small_code())
    def test_matches_brute_force(self, code):
        rows = [list(r) for r in code.generator_matrix().rows]
        expected = brute_weight_counts(code.ring, rows, code.n)
        assert weight_distribution(code).counts == expected

    @settings(max_examples=30, deadline=None)
    @given(small_code(), st.randoms(use_true_random=False))
    def test_invariant_under_column_permutation_and_unit_scaling(self, code, rng):
        ring = code.ring
        baseline = weight_distribution(code).counts
        rows = [list(r) for r in code.generator_matrix().rows]
        units = [c for c in ring.elements() if ring.valuation(c) == 0]
        scaled = [
            [ring.mul(u, x) for x in row]
            for row, u in ((r, rng.choice(units)) for r in rows)
        ]
        perm = list(range(code.n))
        rng.shuffle(perm)
        shuffled = [[row[j] for j in perm] for row in scaled]
        other = code_from_generators(ring, code.n, shuffled)
        assert weight_distribution(other).counts == baseline

    def test_workers_produce_identical_histograms(self):
        code = code_from_generators(Z125, 4, [(1, 0, 57, 0), (0, 1, 0, 68)])
        reference = weight_distribution(code, workers=1).counts
        for workers in (2, 8):
            assert weight_distribution(code, workers=workers).counts == reference

    def test_workers_on_odd_sizes(self):
        code = code_from_generators(Z9, 4, [(1, 2, 0, 1), (0, 3, 3, 6)])
        reference = weight_distribution(code, workers=1).counts
        for workers in (2, 3, 7, 8):
            assert weight_distribution(code, workers=workers).counts == reference

    def test_cap_enforced(self):
        code = code_from_generators(Z4, 3, REFERENCE_Z4)
        with pytest.raises(CapExceededError, match="cap"):
            weight_distribution(code, cap=8)

    def test_env_cap_override(self, monkeypatch):
        monkeypatch.setenv(ENUMERATION_CAP_ENV, "8")
        assert enumeration_cap() == 8
        code = code_from_generators(Z4, 3, REFERENCE_Z4)
        with pytest.raises(CapExceededError):
            weight_distribution(code)
        monkeypatch.delenv(ENUMERATION_CAP_ENV)
        assert enumeration_cap() == DEFAULT_ENUMERATION_CAP

    def test_low_weights_vanish_below_distance(self, corpus):
        for entry in corpus[:20]:
            d = entry.d
            assert all(entry.dist.counts[i] == 0 for i in range(1, d))
            assert entry.dist.counts[d] > 0


class TestEnumerateCodewords:
    def test_reference_z4_code_distinct(self):
        code = code_from_generators(Z4, 3, REFERENCE_Z4)
        words = list(enumerate_codewords(code))
        assert len(words) == 16
        assert len(set(words)) == 16
        assert set(words) == brute_kernel_free_span()

    def test_zero_code_yields_zero_vector(self):
        code = code_from_generators(Z4, 3, [])
        assert list(enumerate_codewords(code)) == [(0, 0, 0)]

    def test_count_matches_cardinality_over_z125(self):
        code = code_from_generators(Z125, 4, [(1, 0, 57, 0), (0, 1, 0, 68)])
        seen = set()
        for word in enumerate_codewords(code):
            seen.add(word)
        assert len(seen) == 15625

    @settings(max_examples=30, deadline=None)
    @given(small_code())
    def test_yield_count_and_membership(self, code):
        words = list(enumerate_codewords(code))
        assert len(words) == code.cardinality
        assert len(set(words)) == code.cardinality
        sample = words[:: max(1, len(words) // 8)]
        for word in sample:
            assert code.contains(word)

    def test_original_coordinates_after_permutation(self):
        # reduction moves column 2 first; the stream must restore user order
        rows = [(0, 2, 1), (0, 2, 0)]
        code = code_from_generators(Z4, 3, rows)
        words = set(enumerate_codewords(code))
        from oracles import span_set

        assert words == span_set(Z4, rows, 3)


def brute_kernel_free_span():
    from oracles import span_set

    return span_set(Z4, REFERENCE_Z4, 3)


class TestMinDistance:
    def test_reference_codes(self):
        assert min_distance(code_from_generators(Z4, 3, REFERENCE_Z4)) == 1
        c1 = code_from_generators(Z125, 4, [(1, 0, 57, 0), (0, 1, 0, 68)])
        assert min_distance(c1) == 2

    def test_full_space(self):
        code = code_from_generators(Z4, 2, identity_matrix(Z4, 2).rows)
        assert min_distance(code) == 1

    def test_zero_code_rejected(self):
        with pytest.raises(ValueError, match="zero code"):
            min_distance(code_from_generators(Z4, 2, []))


class TestDistributionValidation:
    def test_rejects_wrong_length(self):
        from chainring import WeightDistribution

        with pytest.raises(ValueError, match="counts"):
            WeightDistribution(n=2, counts=(1, 0), p=2, s=2, card=1, rank=0, free_rank=0)

    def test_rejects_missing_zero_word(self):
        from chainring import WeightDistribution

        with pytest.raises(ValueError, match="zero word"):
            WeightDistribution(
                n=1, counts=(0, 1), p=2, s=2, card=1, rank=0, free_rank=0
            )

    def test_rejects_sum_mismatch(self):
        from chainring import WeightDistribution

        with pytest.raises(ValueError, match="total"):
            WeightDistribution(
                n=1, counts=(1, 1), p=2, s=2, card=4, rank=1, free_rank=1
            )


class TestLargeScale:
    """Sizes past the vector-block width, so the outer chunk loop runs."""

    def test_full_space_over_z9_length_six(self):
        from math import comb

        code = code_from_generators(Z9, 6, identity_matrix(Z9, 6).rows)
        assert code.cardinality == 531441  # several 2**16-row blocks
        dist = weight_distribution(code)
        assert dist.counts == tuple(comb(6, i) * 8**i for i in range(7))

    def test_workers_split_across_outer_blocks(self):
        code = code_from_generators(Z9, 6, identity_matrix(Z9, 6).rows)
        reference = weight_distribution(code, workers=1).counts
        for workers in (2, 5, 8):
            assert weight_distribution(code, workers=workers).counts == reference

    def test_large_dual_of_sparse_code(self):
        # one deep-valuation row leaves a 390625-word dual over Z/125
        from chainring import dual

        code = code_from_generators(Z125, 3, [(25, 50, 100)])
        big = dual(code)
        assert big.cardinality == 390625
        dist = weight_distribution(big)
        assert sum(dist.counts) == 390625
        from chainring import macwilliams_transform

        assert macwilliams_transform(weight_distribution(code)).counts == dist.counts

    def test_stream_count_past_block_width(self):
        code = code_from_generators(Z4, 9, identity_matrix(Z4, 9).rows)
        assert code.cardinality == 1 << 18
        count = sum(1 for _ in enumerate_codewords(code))
        assert count == 1 << 18


class TestEnumeratorRendering:
    def test_reference_polynomial(self):
        code = code_from_generators(Z4, 3, REFERENCE_Z4)
        text = render_enumerator(weight_distribution(code))
        assert text == "X^3 + 3*X^2*Y + 7*X*Y^2 + 5*Y^3"

    def test_zero_code_polynomial(self):
        dist = weight_distribution(code_from_generators(Z4, 2, []))
        assert render_enumerator(dist) == "X^2"
