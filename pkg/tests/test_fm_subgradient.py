import pytest

from icx.conjugacy import BackSubstitutionTrace, is_integral_subgradient
from icx.errors import NotIntegrallyConvexError, PropertyViolationError, UnboundedPolyhedronError
from icx.fm_subgradient import (
    back_substitute,
    build_local_system,
    compare_eliminations,
    fm_bounded_vertex,
    fm_eliminate_simplified,
    fm_integer_subgradient,
    partition_system,
)
from icx.geometry.systems import InequalitySystem, make_row
from icx.rationals import ExtendedValue
from icx.zfunction import ZFunction


def test_local_system_of_half_vertex_function(half_vertex_f):
    system = build_local_system(half_vertex_f, (0, 0, 0))

    assert set(system.rows) == {make_row((1, 1, 0), 1), make_row((0, 1, 1), 1), make_row((1, 0, 1), 1)}


def test_simplified_elimination_partitions_rows(half_vertex_f):
    system = build_local_system(half_vertex_f, (0, 0, 0))

    reduced, stage = fm_eliminate_simplified(system, 0)

    assert reduced.rows == (make_row((0, 1, 1), 1),)
    assert set(stage.upper_rows) == {make_row((1, 1, 0), 1), make_row((1, 0, 1), 1)}
    assert stage.lower_rows == ()
    assert stage.zero_rows == (make_row((0, 1, 1), 1),)


def test_simplified_elimination_refuses_wide_coefficients():
    system = InequalitySystem.from_rows([((2, 1), 1)])

    with pytest.raises(ValueError):
        fm_eliminate_simplified(system, 0)


def test_partition_rejects_bad_order(half_vertex_f):
    system = build_local_system(half_vertex_f, (0, 0, 0))

    with pytest.raises(ValueError):
        partition_system(system, (0, 0, 1))


def test_back_substitution_trace(half_vertex_f):
    partitioned = partition_system(build_local_system(half_vertex_f, (0, 0, 0)))

    p, trace = back_substitute(partitioned)

    assert p == (0, 1, 0)
    assert isinstance(trace, BackSubstitutionTrace)
    assert [step.variable for step in trace.steps] == [2, 1, 0]
    last = trace.steps[0]
    assert last.lower == ExtendedValue.minus_infinity()
    assert last.upper == ExtendedValue.plus_infinity()
    assert last.chosen == 0
    assert trace.steps[1].upper == 1
    assert trace.steps[2].chosen == 0


def test_fm_subgradient_of_half_vertex_function(half_vertex_f):
    certificate = fm_integer_subgradient(half_vertex_f, (0, 0, 0))

    assert certificate.p == (0, 1, 0)
    assert certificate.verified_rows == 4
    assert certificate.trace.order == (0, 1, 2)


def test_fm_subgradient_with_another_order(half_vertex_f):
    certificate = fm_integer_subgradient(half_vertex_f, (0, 0, 0), order=(2, 1, 0))

    assert is_integral_subgradient(half_vertex_f, (0, 0, 0), certificate.p)
    assert certificate.trace.order == (2, 1, 0)


@pytest.mark.parametrize(
    "fixture,x,expected",
    [
        ("square_1d", (1,), (3,)),
        ("square_2d", (0, 0), (1, 1)),
        ("abs_2d", (0, 0), (1, 1)),
        ("abs_2d", (2, -1), (1, -1)),
    ],
)
def test_fm_subgradient_values(request, fixture, x, expected):
    f = request.getfixturevalue(fixture)

    assert fm_integer_subgradient(f, x).p == expected


def test_fm_subgradient_at_every_point(square_2d):
    for x in square_2d.domain_points:
        certificate = fm_integer_subgradient(square_2d, x)
        assert is_integral_subgradient(square_2d, x, certificate.p)


def test_fm_fails_on_exla1(exla1):
    with pytest.raises(NotIntegrallyConvexError) as exc_info:
        fm_integer_subgradient(exla1, (0, 0, 0))

    trace = exc_info.value.detail
    assert isinstance(trace, BackSubstitutionTrace)
    assert trace.steps[-1].variable == 0
    assert trace.steps[-1].lower == 1
    assert trace.steps[-1].upper == 0


def test_bounded_vertex(square_1d, square_2d):
    assert fm_bounded_vertex(square_1d, (1,)) == (3,)
    assert fm_bounded_vertex(square_2d, (0, 0)) == (1, 1)


def test_bounded_vertex_needs_a_bounded_subdifferential(half_vertex_f):
    with pytest.raises(UnboundedPolyhedronError):
        fm_bounded_vertex(half_vertex_f, (0, 0, 0))


def test_bounded_vertex_must_be_a_global_subgradient():
    # locally fine at 0, but the far point 3 breaks the upper choice p = 1
    f = ZFunction.from_items([((-1,), 1), ((0,), 0), ((1,), 1), ((2,), 5), ((3,), 2)])

    with pytest.raises(PropertyViolationError):
        fm_bounded_vertex(f, (0,))


def test_compare_eliminations_on_ic_function(square_2d, half_vertex_f):
    for f, x in [(square_2d, (1, -1)), (half_vertex_f, (0, 0, 0))]:
        comparison = compare_eliminations(f, x)

        assert comparison.all_equivalent
        assert comparison.non_crossing_holds
        assert len(comparison.stages) == f.dim


def test_compare_eliminations_flags_non_ic(exla1):
    comparison = compare_eliminations(exla1, (0, 0, 0))

    assert not comparison.all_equivalent
    first = comparison.stages[0]
    assert first.upper_rows == 2
    assert first.lower_rows == 2
    assert first.nontrivial_cross_rows
