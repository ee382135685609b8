from fractions import Fraction

import pytest
from pydantic import ValidationError

from icx.geometry.systems import Inequality, InequalitySystem, make_row, normalize_row, systems_equivalent


@pytest.fixture
def unit_square():
    return InequalitySystem.box((0, 0), (1, 1))


def test_render():
    assert make_row([1, -1, 0], 2).render() == "p1 - p2 <= 2"
    assert make_row([-2, Fraction(1, 2)], -1).render() == "-2p1 + 1/2p2 <= -1"
    assert make_row([0, 0], 3).render() == "0 <= 3"
    assert make_row([1, 1], 1).render("x") == "x1 + x2 <= 1"


def test_trivial_and_contradiction():
    assert make_row([0, 0], 0).is_trivial
    assert make_row([0, 0], -1).is_contradiction
    assert not make_row([1, 0], -1).is_contradiction


def test_normalize_row():
    row = normalize_row(make_row([Fraction(1, 2), Fraction(1, 3)], 1))

    assert row.coeffs == (3, 2)
    assert row.rhs == 6


def test_normalized_keeps_the_tightest_row():
    system = InequalitySystem.from_rows([((2, 2), 4), ((1, 1), 3), ((0, 0), 1)])

    assert system.normalized().rows == (Inequality((Fraction(1), Fraction(1)), Fraction(2)),)


def test_row_dimensions_are_checked():
    with pytest.raises(ValidationError):
        InequalitySystem(dim=2, rows=(((1,), 1),))

    with pytest.raises(ValueError):
        InequalitySystem.from_rows([])


def test_box(unit_square):
    assert len(unit_square) == 4
    assert unit_square.satisfied_by((1, 0))
    assert unit_square.violated_rows((2, 0)) == [make_row([1, 0], 1)]
    assert len(unit_square.tight_rows((1, 1))) == 2


def test_feasible_and_bounded(unit_square):
    empty = InequalitySystem.from_rows([((1,), 0), ((-1,), -1)])
    half_plane = InequalitySystem.from_rows([((1, 0), 1)])

    assert unit_square.is_feasible()
    assert unit_square.is_bounded()
    assert not empty.is_feasible()
    assert not empty.is_bounded()
    assert half_plane.is_feasible()
    assert not half_plane.is_bounded()


def test_containment(unit_square):
    tall = InequalitySystem.box((0, 0), (1, 2))

    assert tall.contains_system(unit_square)
    assert not unit_square.contains_system(tall)


def test_equivalence_ignores_redundant_rows(unit_square):
    redundant = unit_square.extended([make_row([1, 1], 2)])

    assert systems_equivalent(unit_square, redundant)
    assert not systems_equivalent(unit_square, InequalitySystem.box((0, 0), (1, 2)))
    assert not systems_equivalent(unit_square, InequalitySystem.box((0,), (1,)))


def test_empty_systems_are_equivalent():
    a = InequalitySystem.from_rows([((1, 0), 0), ((-1, 0), -1)])
    b = InequalitySystem.from_rows([((0, 1), 0), ((0, -1), -1)])

    assert systems_equivalent(a, b)
