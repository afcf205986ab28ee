from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from confspace.linalg import SparseExactMatrix, exact_rank


def test_zero_matrix():
    assert exact_rank(SparseExactMatrix.zeros(4, 3)) == 0
    assert exact_rank(SparseExactMatrix.zeros(0, 0)) == 0


def test_identity():
    assert exact_rank(SparseExactMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3


def test_dependent_rows():
    assert exact_rank(SparseExactMatrix.from_dense([[1, 2], [2, 4]])) == 1


def test_fractions():
    m = SparseExactMatrix.from_dense([[Fraction(1, 3), Fraction(1, 2)], [Fraction(2, 3), 1]])
    assert exact_rank(m) == 1


def test_no_stored_zeros():
    m = SparseExactMatrix(2, 2, {(0, 0): Fraction(0), (1, 1): Fraction(5)})
    assert m.entries == {(1, 1): 5}


def test_out_of_range_entry():
    with pytest.raises(IndexError):
        SparseExactMatrix(2, 2, {(2, 0): 1})


def test_matmul():
    a = SparseExactMatrix.from_dense([[1, 2], [0, 1]])
    b = SparseExactMatrix.from_dense([[0, 1], [1, 0]])
    assert (a @ b).to_dense() == [[2, 1], [1, 0]]


def test_large_coefficients_stay_exact():
    # Hilbert-like matrix is full rank over Q but numerically ill-conditioned
    n = 12
    rows = [[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)]
    assert exact_rank(SparseExactMatrix.from_dense(rows)) == n


entry = st.sampled_from([0, 0, 0, 0, 1, -1, 2, -3, 7])


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 9), st.integers(0, 9), st.data())
def test_rank_matches_sympy(n_rows, n_cols, data):
    rows = [[data.draw(entry) for _ in range(n_cols)] for _ in range(n_rows)]
    expected = sympy.Matrix(n_rows, n_cols, [x for r in rows for x in r]).rank() if n_rows and n_cols else 0
    assert exact_rank(SparseExactMatrix(n_rows, n_cols, {(r, c): x for r, row in enumerate(rows) for c, x in enumerate(row)})) == expected


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.data())
def test_rank_of_product_of_factors(n, r, m, data):
    # A (n x r) @ B (r x m) has rank <= r, and equals sympy's
    a = [[data.draw(entry) for _ in range(r)] for _ in range(n)]
    b = [[data.draw(entry) for _ in range(m)] for _ in range(r)]
    prod = SparseExactMatrix.from_dense(a) @ SparseExactMatrix.from_dense(b)
    expected = (sympy.Matrix(a) * sympy.Matrix(b)).rank()
    assert exact_rank(prod) == expected <= r
