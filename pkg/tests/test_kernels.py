"""Compiled and pure-Python kernels must agree exactly."""
import importlib
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ktate import _kernels_py as py
from ktate import kernels
from ktate.snf import determinant, invariant_factors, matmul, smith_normal_form

try:
    cy = importlib.import_module("ktate._kernels")
except ImportError:  # pragma: no cover - extension not built
    cy = None

needs_cy = pytest.mark.skipif(cy is None, reason="compiled extension not built")

ints = st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=12)
huge = st.lists(st.integers(-(10**30), 10**30), min_size=1, max_size=6)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@needs_cy
@settings(max_examples=300)
@given(st.one_of(ints, huge), st.one_of(ints, huge))
def test_poly_mul_parity(a, b):
    assert cy.poly_mul(a, b) == py.poly_mul(a, b)


@needs_cy
@settings(max_examples=300)
@given(ints, st.sampled_from([1, -1]), st.lists(st.integers(-9, 9), max_size=5), st.integers(0, 20))
def test_series_div_parity(num, lead, rest, count):
    den = [lead] + rest
    assert cy.series_div(num, den, count) == py.series_div(num, den, count)


def _random_matrix(rng, m, n, spread=4):
    return [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(m)]


@needs_cy
def test_snf_diagonal_parity():
    rng = random.Random(7)
    for _ in range(300):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        A = _random_matrix(rng, m, n)
        assert cy.snf_diagonal([r[:] for r in A], m, n) == py.snf_diagonal([r[:] for r in A], m, n)


def _check_snf(A):
    D, U, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == D
    assert abs(determinant(U)) == 1
    assert abs(determinant(V)) == 1
    m, n = len(A), len(A[0]) if A else 0
    diag = [D[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j:
                assert D[i][j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert diag[: len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return nz


def test_snf_post_check_random():
    rng = random.Random(11)
    for _ in range(200):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = _random_matrix(rng, m, n, spread=9)
        nz = _check_snf(A)
        assert invariant_factors(A) == nz


def test_snf_known():
    assert _check_snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert _check_snf([[0, 0], [0, 0]]) == []
    assert invariant_factors([[2, 0], [0, 3]]) == [1, 6]


def test_unit_pass_keeps_invariants():
    # unit pivots first, then a residual needing divisibility fixes
    A = [[1, 2, 0, 0], [0, 0, 4, 0], [0, 0, 0, 6], [3, 6, 0, 0]]
    assert py.snf_diagonal([r[:] for r in A], 4, 4) == [1, 2, 12]


def test_determinant():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([]) == 1
