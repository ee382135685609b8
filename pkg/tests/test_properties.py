"""Invariants of integrally convex functions checked on generated instances."""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from icx.checker import (
    definitional_oracle_agrees,
    is_integrally_convex_function,
    is_integrally_convex_set,
    local_search_minimize,
)
from icx.conjugacy import (
    biconjugate_report,
    conjugate_property_suite,
    integral_biconjugate,
    integral_subdifferential_nonempty,
    is_integral_subgradient,
)
from icx.dc import DcInstance, toland_singer
from icx.fm_subgradient import compare_eliminations, fm_integer_subgradient
from icx.generators import generate_batch
from icx.geometry.hull import hull_membership
from icx.instances import corpus
from icx.utils import box_points
from icx.zfunction import ZFunction, ZSet

pytestmark = [pytest.mark.slow, pytest.mark.property_based]

property_settings = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture, HealthCheck.too_slow],
)

families = st.sampled_from(["separable", "lnat", "random"])
seeds = st.integers(min_value=0, max_value=10_000)

# (family, n, width); "random" on unit cubes drops points, so domains are not boxes
shapes = st.one_of(
    st.tuples(families, st.integers(1, 3), st.just(2)),
    st.tuples(families, st.integers(1, 4), st.just(1)),
)


def generated(family, seed, n=2, width=2):
    return generate_batch(family, 1, n, width=width, seed=seed)[0]


def grown_box(f, margin=1):
    lower, upper = f.domain.bounding_box()
    return box_points(tuple(c - margin for c in lower), tuple(c + margin for c in upper))


@property_settings
@given(shape=shapes, seed=seeds)
def test_fm_subgradient_everywhere(shape, seed):
    f = generated(shape[0], seed, shape[1], shape[2])

    for x in f.domain_points:
        certificate = fm_integer_subgradient(f, x)
        assert is_integral_subgradient(f, x, certificate.p)


@property_settings
@given(shape=shapes, seed=seeds)
def test_biconjugate_reproduces_f(shape, seed):
    f = generated(shape[0], seed, shape[1], shape[2])

    for x in f.domain_points:
        assert integral_biconjugate(f, x) == f.value(x)


@property_settings
@given(shape=shapes, seed=seeds)
def test_biconjugate_is_infinite_off_the_domain(shape, seed):
    f = generated(shape[0], seed, shape[1], shape[2])

    for z in grown_box(f):
        if f.in_domain(z):
            continue
        assert not hull_membership(z, f.domain_points).member
        assert integral_biconjugate(f, z).kind == "+inf"


@property_settings
@given(shape=shapes, seed=seeds)
def test_simplified_elimination_matches_the_general_one(shape, seed):
    f = generated(shape[0], seed, shape[1], shape[2])

    for x in f.domain_points:
        comparison = compare_eliminations(f, x)
        assert comparison.all_equivalent
        assert comparison.non_crossing_holds


@property_settings
@given(shape=shapes, seed=seeds, data=st.data())
def test_conjugate_properties(shape, seed, data):
    family, n, width = shape
    f = generated(family, seed, n, width)
    coordinate = st.integers(-3, 3)
    sample_p = data.draw(st.lists(st.tuples(*[coordinate] * n), min_size=1, max_size=4, unique=True))

    report = conjugate_property_suite(f, sample_p)

    assert len(report.rows) == len(sample_p)
    assert report.box_points_checked == len(list(box_points(*f.domain.bounding_box())))


@property_settings
@given(shape=shapes, h_family=families, g_seed=seeds, h_seed=seeds)
def test_toland_singer_duality(shape, h_family, g_seed, h_seed):
    g_family, n, width = shape
    instance = DcInstance(g=generated(g_family, g_seed, n, width), h=generated(h_family, h_seed, n, width))

    report = toland_singer(instance)

    assert report.equal
    assert report.primal == report.dual


@property_settings
@given(
    n=st.integers(1, 3),
    width=st.integers(1, 2),
    h_family=st.sampled_from(["separable", "lnat"]),
    seed=seeds,
    data=st.data(),
)
def test_toland_singer_with_an_arbitrary_g(n, width, h_family, seed, data):
    points = list(box_points((0,) * n, (width,) * n))
    table = data.draw(st.dictionaries(st.sampled_from(points), st.integers(-5, 5), min_size=1))
    g = ZFunction(dim=n, table=table)
    h = generated(h_family, seed, n, width)

    report = toland_singer(DcInstance(g=g, h=h))

    assert report.equal
    assert report.primal == min(g.table[x] - h.table[x] for x in g.domain_points)


def test_toland_singer_with_a_non_ic_g(exla1):
    h = generate_batch("lnat", 1, 3, width=2, seed=11)[0].translated((1, 1, 1))

    report = toland_singer(DcInstance(g=exla1, h=h))

    assert not is_integrally_convex_function(exla1).is_ic
    assert report.equal
    assert report.primal == min(exla1.table[x] - h.table[x] for x in exla1.domain_points)


@property_settings
@given(shape=shapes, seed=seeds, data=st.data())
def test_local_search_finds_the_global_minimum(shape, seed, data):
    f = generated(shape[0], seed, shape[1], shape[2])
    start = data.draw(st.sampled_from(f.domain_points))

    result = local_search_minimize(f, start)

    assert result.certified
    assert result.value == f.min_value


@property_settings
@given(points=st.lists(st.sampled_from(list(box_points((0, 0), (2, 2)))), min_size=1, max_size=9, unique=True))
def test_set_checker_agrees_with_the_definition_in_the_plane(points):
    S = ZSet(points=points)

    assert definitional_oracle_agrees(S, is_integrally_convex_set(S), samples=200)


@property_settings
@given(points=st.lists(st.sampled_from(list(box_points((0, 0, 0), (1, 1, 1)))), min_size=1, max_size=8, unique=True))
def test_set_checker_agrees_with_the_definition_on_the_cube(points):
    S = ZSet(points=points)

    assert definitional_oracle_agrees(S, is_integrally_convex_set(S), samples=200)


def test_generated_batch_properties(generated_batch):
    for f in generated_batch:
        assert is_integrally_convex_function(f).is_ic
        for x in f.domain_points:
            assert integral_subdifferential_nonempty(f, x).nonempty


def test_subdifferential_decides_biconjugacy(exla1):
    for x in exla1.domain_points:
        nonempty = integral_subdifferential_nonempty(exla1, x).nonempty
        report = biconjugate_report(exla1, x)

        assert nonempty == (report.value == report.f_value)


@pytest.mark.parametrize("entry", corpus(), ids=lambda entry: entry.name)
def test_subdifferential_decides_biconjugacy_on_the_corpus(entry):
    f = entry.function

    for x in box_points(*f.domain.bounding_box()):
        if not f.in_domain(x):
            assert integral_biconjugate(f, x) <= f.value(x)
            continue
        nonempty = integral_subdifferential_nonempty(f, x).nonempty
        assert nonempty == (integral_biconjugate(f, x) == f.value(x))


def test_checker_benchmark(benchmark):
    f = generated("separable", 5, n=3)

    verdict = benchmark(is_integrally_convex_function, f)

    assert verdict.is_ic
