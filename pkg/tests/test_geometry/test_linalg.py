from fractions import Fraction

import pytest

from icx.geometry.linalg import dot, null_space, primitive_integer_vector, rank, rref, sign_normalized, solve_square


def test_dot_is_exact():
    assert dot([1, 2], [Fraction(1, 2), 3]) == Fraction(13, 2)


def test_rref_drops_dependent_rows():
    matrix, pivots = rref([[1, 2], [2, 4]])

    assert matrix == [[1, 2]]
    assert pivots == [0]
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([]) == 0


def test_null_space():
    assert null_space([[1, 1, 0]], 3) == [(-1, 1, 0), (0, 0, 1)]
    assert null_space([], 2) == [(1, 0), (0, 1)]
    assert null_space([[1, 0], [0, 1]], 2) == []


def test_solve_square():
    assert solve_square([[2, 1], [1, 1]], [3, 2]) == (1, 1)
    assert solve_square([[1, 2], [2, 4]], [1, 2]) is None
    assert solve_square([[2]], [1]) == (Fraction(1, 2),)


def test_primitive_integer_vector():
    assert primitive_integer_vector([Fraction(1, 2), Fraction(-3, 4)]) == (2, -3)
    assert primitive_integer_vector([4, 6]) == (2, 3)

    with pytest.raises(ValueError):
        primitive_integer_vector([0, 0])


def test_sign_normalized():
    assert sign_normalized((0, -1, 2)) == (0, 1, -2)
    assert sign_normalized((1, -1)) == (1, -1)
    assert sign_normalized((0, 0)) == (0, 0)
