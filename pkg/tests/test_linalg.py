from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from freecurves import _linalg as la
from tests.strategies import int_vectors, square_matrices


def test_det_small():
    assert la.det([[1, 0], [0, -1]]) == -1
    assert la.det([[2, 1], [4, 2]]) == 0
    assert la.det([[1, 2, 3], [0, 1, 4], [5, 6, 0]]) == 1


def test_inverse_unimodular():
    m = [[2, 1], [1, 1]]
    assert la.matmul(m, la.inverse(m)) == la.identity(2)


def test_primitive():
    assert la.primitive((4, -6, 0)) == (2, -3, 0)
    assert la.primitive((0, 0)) == (0, 0)


@given(square_matrices(n=3), square_matrices(n=3))
def test_det_multiplicative(a, b):
    assert la.det(la.matmul(a, b)) == la.det(a) * la.det(b)


@given(square_matrices())
def test_det_transpose(a):
    assert la.det(la.transpose(a)) == la.det(a)


@given(st.integers(1, 3).flatmap(lambda r: st.lists(int_vectors(4), min_size=r, max_size=r)))
def test_integer_kernel_is_a_kernel(rows):
    basis = la.integer_kernel(rows, 4)
    assert len(basis) == 4 - la.rank(rows)
    for v in basis:
        assert all(la.dot(r, v) == 0 for r in rows)
    if basis:
        assert la.rank(basis) == len(basis)


@given(square_matrices(n=3), int_vectors(3))
def test_solve_roundtrip(a, x):
    if la.det(a) == 0:
        return
    cols = la.transpose(a)
    b = la.matvec(a, x)
    assert [Fraction(v) for v in la.solve(cols, b)] == [Fraction(v) for v in x]
