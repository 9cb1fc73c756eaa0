"""Exact linear algebra: examples plus randomized cross-checks."""

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import gcd_vector, kernel_contains, nullity_oracle, rank_oracle

from troplin import linalg
from troplin.errors import ZeroVector
from troplin.linalg import (
    RING_INTEGERS,
    RING_RATIONALS,
    hermite_normal_form,
    in_integer_span,
    kernel_basis,
    matrix,
    primitive_part,
)


def assert_hnf_shape(H):
    """Pivots positive, echelon staircase, entries above pivots reduced."""
    nrows, ncols = H.shape
    last_pivot = -1
    for i in range(nrows):
        row = [H[i, j] for j in range(ncols)]
        nonzero = [j for j in range(ncols) if row[j] != 0]
        if not nonzero:
            for k in range(i, nrows):
                assert all(H[k, j] == 0 for j in range(ncols)), "zero rows must be last"
            break
        piv = nonzero[0]
        assert piv > last_pivot, "pivot columns must move right"
        last_pivot = piv
        assert H[i, piv] > 0, "pivot must be positive"
        for k in range(i):
            assert 0 <= H[k, piv] < H[i, piv], "entries above pivots must be reduced"


class TestHermiteNormalForm:
    def test_worked_example(self):
        M = matrix([[2, 4], [1, 3]])
        H, U = hermite_normal_form(M)
        assert (U @ M == H).all()
        assert abs(linalg.det(U)) == 1
        assert_hnf_shape(H)
        # Frozen output of the stated normalization for this input.
        assert H.tolist() == [[1, 1], [0, 2]]

    def test_identity(self):
        M = linalg.identity(3)
        H, U = hermite_normal_form(M)
        assert H.tolist() == M.tolist()
        assert U.tolist() == M.tolist()

    def test_zero(self):
        M = linalg.zeros(2, 2)
        H, U = hermite_normal_form(M)
        assert H.tolist() == [[0, 0], [0, 0]]
        assert U.tolist() == linalg.identity(2).tolist()

    @given(
        st.lists(
            st.lists(st.integers(-9, 9), min_size=1, max_size=5),
            min_size=1,
            max_size=5,
        ).filter(lambda rows: len({len(r) for r in rows}) == 1)
    )
    @settings(max_examples=150, deadline=None)
    def test_random(self, rows):
        M = matrix(rows)
        H, U = hermite_normal_form(M)
        assert (U @ M == H).all()
        assert abs(linalg.det(U)) == 1
        assert_hnf_shape(H)


class TestKernelBasis:
    def test_symmetric_example(self):
        assert kernel_basis([[1, -1]], RING_RATIONALS) == [(1, 1)]

    def test_injective_integer(self):
        assert kernel_basis([[2]], RING_INTEGERS) == []

    def test_random_4x6_against_row_reduction(self):
        rng = random.Random(20240)
        for _ in range(25):
            rows = [[rng.randint(-5, 5) for _ in range(6)] for _ in range(4)]
            basis = kernel_basis(rows, RING_RATIONALS)
            assert len(basis) == 6 - rank_oracle(rows)
            for v in basis:
                assert kernel_contains(rows, v)
            ibasis = kernel_basis(rows, RING_INTEGERS)
            assert len(ibasis) == len(basis)
            for v in ibasis:
                assert kernel_contains(rows, v)

    @given(
        st.lists(
            st.lists(st.integers(-6, 6), min_size=1, max_size=5),
            min_size=1,
            max_size=4,
        ).filter(lambda rows: len({len(r) for r in rows}) == 1)
    )
    @settings(max_examples=120, deadline=None)
    def test_exactness_and_independence(self, rows):
        ncols = len(rows[0])
        for ring in (RING_RATIONALS, RING_INTEGERS):
            basis = kernel_basis(rows, ring)
            assert len(basis) == nullity_oracle(rows, ncols)
            for v in basis:
                assert kernel_contains(rows, v)
            if basis:
                assert rank_oracle([list(v) for v in basis]) == len(basis)

    @given(
        st.lists(
            st.lists(st.integers(-6, 6), min_size=2, max_size=4),
            min_size=1,
            max_size=3,
        ).filter(lambda rows: len({len(r) for r in rows}) == 1),
        st.lists(st.integers(-4, 4), min_size=1, max_size=6),
    )
    @settings(max_examples=120, deadline=None)
    def test_integer_kernel_saturation(self, rows, coeffs):
        """Any integer vector of the rational kernel is an integer
        combination of the integer kernel basis."""
        basis = kernel_basis(rows, RING_INTEGERS)
        if not basis:
            return
        # Random rational combination, scaled to an integer vector.
        combo = [Fraction(0)] * len(basis[0])
        for i, c in enumerate(coeffs[: len(basis)]):
            for j in range(len(combo)):
                combo[j] += Fraction(c, 3) * basis[i][j]
        scale = 1
        for x in combo:
            scale = scale * x.denominator // np.gcd(scale, x.denominator)
        w = [int(x * scale) for x in combo]
        assert kernel_contains(rows, w)
        assert in_integer_span(basis, w)


class TestPrimitivePart:
    def test_examples(self):
        assert primitive_part((2, 4)) == ((1, 2), 2)
        assert primitive_part((0, -3)) == ((0, -1), 3)
        assert primitive_part((1, 0)) == ((1, 0), 1)

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            primitive_part((0, 0))

    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=6))
    @settings(max_examples=200, deadline=None)
    def test_gcd_property(self, v):
        if all(x == 0 for x in v):
            with pytest.raises(ZeroVector):
                primitive_part(v)
            return
        u, m = primitive_part(v)
        assert m > 0
        assert gcd_vector(u) == 1
        assert tuple(m * x for x in u) == tuple(v)
