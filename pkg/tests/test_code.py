"""LinearCode construction, parity checks, duality, classification."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from chainring import (
    ChainRing,
    RingMatrix,
    classify,
    code_from_generators,
    dual,
    identity_matrix,
    kernel_code,
    matmul,
)
from oracles import brute_kernel, span_set

Z4 = ChainRing(2, 2)
Z8 = ChainRing(2, 3)
Z9 = ChainRing(3, 2)
Z125 = ChainRing(5, 3)
F2U2 = ChainRing(2, 2, "poly")

REFERENCE_Z4 = [(1, 0, 1), (0, 2, 0), (0, 0, 2)]
TINY_RINGS = [ChainRing(2, 1), Z4, Z8, Z9, F2U2]


@st.composite
def small_code(draw, rings=TINY_RINGS, max_rows=3, max_cols=4):
    ring = draw(st.sampled_from(rings))
    n = draw(st.integers(1, max_cols))
    nrows = draw(st.integers(0, max_rows))
    rows = [
        [draw(st.integers(0, ring.size - 1)) for _ in range(n)] for _ in range(nrows)
    ]
    return code_from_generators(ring, n, rows)


class TestConstruction:
    def test_reference_z4_code(self):
        code = code_from_generators(Z4, 3, REFERENCE_Z4)
        assert code.profile.counts == (1, 2)
        assert code.rank == 3
        assert code.free_rank == 1
        assert code.cardinality == 16

    def test_free_reference_code_over_z125(self):
        code = code_from_generators(Z125, 4, [(1, 0, 57, 0), (0, 1, 0, 68)])
        assert code.profile.counts == (2, 0, 0)
        assert code.is_free
        assert code.cardinality == 15625

    def test_zero_code(self):
        code = code_from_generators(Z4, 3, [])
        assert code.profile.counts == (0, 0)
        assert code.cardinality == 1

    def test_row_length_mismatch(self):
        with pytest.raises(ValueError):
            code_from_generators(Z4, 3, [(1, 0)])

    def test_generator_rows_are_codewords(self):
        code = code_from_generators(Z4, 4, [(2, 1, 3, 0), (1, 1, 2, 2)])
        for row in code.generator_matrix().rows:
            assert code.contains(row)


class TestParityCheck:
    def test_reference_z4_dual_rows(self):
        code = code_from_generators(Z4, 3, REFERENCE_Z4)
        assert code.parity_check().rows == ((0, 2, 0), (2, 0, 2))

    def test_free_code_systematic_form(self):
        code = code_from_generators(Z125, 4, [(1, 0, 57, 0), (0, 1, 0, 68)])
        h = code.parity_check()
        assert h.rows == ((68, 0, 1, 0), (0, 57, 0, 1))
        product = matmul(code.generator_matrix(), h.transpose())
        assert product.is_zero()

    def test_full_space_has_empty_parity_check(self):
        code = code_from_generators(Z4, 3, identity_matrix(Z4, 3).rows)
        h = code.parity_check()
        assert h.nrows == 0
        assert h.ncols == 3

    def test_zero_code_parity_is_identity(self):
        code = code_from_generators(Z8, 3, [])
        assert code.parity_check().rows == identity_matrix(Z8, 3).rows

    def test_kernel_matches_codeword_set(self):
        # kernel scan over all of R^n must reproduce the span
        code = code_from_generators(Z4, 3, REFERENCE_Z4)
        h = code.parity_check()
        assert brute_kernel(Z4, h.rows, 3) == span_set(Z4, REFERENCE_Z4, 3)

    @settings(max_examples=50, deadline=None)
    @given(small_code())
    def test_orthogonality_random(self, code):
        product = matmul(code.generator_matrix(), code.parity_check().transpose())
        assert product.is_zero()

    @settings(max_examples=25, deadline=None)
    @given(small_code())
    def test_kernel_scan_random(self, code):
        if code.ring.size**code.n > 1 << 14:
            return
        kernel = brute_kernel(code.ring, code.parity_check().rows, code.n)
        rows = [list(r) for r in code.generator_matrix().rows]
        assert kernel == span_set(code.ring, rows, code.n)


class TestDual:
    def test_reference_z4_dual(self):
        code = code_from_generators(Z4, 3, REFERENCE_Z4)
        d = dual(code)
        assert d.profile.counts == (0, 2)
        assert d.cardinality == 4

    def test_free_dual_over_z125(self):
        code = code_from_generators(Z125, 4, [(1, 0, 57, 0), (0, 1, 0, 68)])
        d = dual(code)
        assert d.is_free
        assert d.rank == 2

    def test_zero_code_dual_is_full_space(self):
        code = code_from_generators(Z8, 2, [])
        d = dual(code)
        assert d.profile.counts == (2, 0, 0)
        assert d.cardinality == 8**2

    @settings(max_examples=50, deadline=None)
    @given(small_code())
    def test_dual_type_formula(self, code):
        counts = code.profile.counts
        expected = (code.n - code.rank,) + tuple(reversed(counts[1:]))
        assert dual(code).profile.counts == expected

    @settings(max_examples=50, deadline=None)
    @given(small_code())
    def test_cardinality_product(self, code):
        ambient = code.ring.size**code.n
        assert code.cardinality * dual(code).cardinality == ambient

    @settings(max_examples=30, deadline=None)
    @given(small_code())
    def test_double_dual_same_codewords(self, code):
        assert dual(dual(code)).same_codewords(code)


class TestKernelCode:
    def test_reference_parity_matrix(self):
        h = RingMatrix.build(Z4, [(2, 0, 2), (0, 2, 0)])
        code = kernel_code(h)
        assert code.cardinality == 16
        assert code.same_codewords(code_from_generators(Z4, 3, REFERENCE_Z4))

    def test_identity_gives_zero_code(self):
        assert kernel_code(identity_matrix(Z9, 3)).cardinality == 1

    def test_zero_matrix_gives_full_space(self):
        h = RingMatrix.build(Z4, [(0, 0), (0, 0)])
        assert kernel_code(h).cardinality == 16

    @settings(max_examples=50, deadline=None)
    @given(small_code())
    def test_kernel_of_parity_check_is_the_code(self, code):
        assert kernel_code(code.parity_check()).same_codewords(code)

    @settings(max_examples=40, deadline=None)
    @given(small_code())
    def test_kernel_times_rowspace_covers_ambient(self, code):
        h = code.parity_check()
        from chainring import rowspace_size

        assert kernel_code(h).cardinality * rowspace_size(h) == code.ring.size**code.n


class TestClassify:
    def test_reference_z4_code_is_mdr(self):
        code = code_from_generators(Z4, 3, REFERENCE_Z4)
        profile = classify(code, d=1, d_dual=1)
        assert profile.label == "MDR"
        assert profile.defect == 0
        # dual has rank 2 and distance 1, so its defect is 3 + 1 - 2 - 1 = 1
        assert profile.dual_defect == 1
        assert profile.sigma == 1

    def test_near_mds_over_z125(self):
        code = code_from_generators(Z125, 4, [(1, 0, 57, 0), (0, 1, 0, 68)])
        profile = classify(code, d=2, d_dual=2)
        assert profile.label == "NearMDS"
        assert profile.defect == 1
        assert profile.dual_defect == 1

    def test_full_space_is_mds(self):
        code = code_from_generators(Z4, 3, identity_matrix(Z4, 3).rows)
        assert classify(code, d=1).label == "MDS"

    def test_negative_defect_rejected(self):
        code = code_from_generators(Z4, 3, REFERENCE_Z4)
        with pytest.raises(ValueError, match="Singleton"):
            classify(code, d=2)

    def test_negative_dual_defect_rejected(self):
        code = code_from_generators(Z4, 3, REFERENCE_Z4)
        with pytest.raises(ValueError, match="dual"):
            classify(code, d=1, d_dual=3)

    def test_near_mdr_when_not_free(self):
        # type (1,1) over Z/4, defect and dual defect both 1
        code = code_from_generators(Z4, 3, [(1, 1, 1), (0, 2, 2)])
        from chainring import min_distance

        d = min_distance(code)
        d_dual = min_distance(dual(code))
        profile = classify(code, d, d_dual)
        if profile.defect == 1 and profile.dual_defect == 1:
            assert profile.label == "NearMDR"


class TestPermutationHandling:
    def test_user_coordinates_preserved(self):
        # generators that force a column swap during reduction
        rows = [(0, 2, 1), (0, 2, 0)]
        code = code_from_generators(Z4, 3, rows)
        for row in rows:
            assert code.contains(row)
        h = code.parity_check()
        for row in rows:
            acc = [0] * h.nrows
            for r, hrow in enumerate(h.rows):
                s = 0
                for a, b in zip(row, hrow):
                    s = Z4.add(s, Z4.mul(a, b))
                acc[r] = s
            assert all(x == 0 for x in acc)
