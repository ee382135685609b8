"""Integral conjugates, biconjugates and subdifferentials of functions on Z^n.

For finite effective domains the conjugate is a finite maximum; the
biconjugate is a supremum over all of Z^n and is settled by one of three
certificates: an integer subgradient (the value is f(x)), a separating integer
direction (the value is +inf), or a branch and bound over integer p in a box
large enough for the maximum to be attained, confirmed by enlarging the box.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import floor
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import model_validator
from pydantic_core import PydanticCustomError

from .commonmodel import CommonModel
from .config import get_config
from .errors import (
    BiconjugateUnstableError,
    DimensionMismatchError,
    IntegerSearchLimitError,
    NotIntegrallyConvexError,
    PropertyViolationError,
)
from .geometry.fourier_motzkin import IntegerFeasibility, integer_feasible_point
from .geometry.hull import hull_membership
from .geometry.linalg import primitive_integer_vector
from .geometry.simplex import lp_solve
from .geometry.systems import Inequality, InequalitySystem, make_row
from .rationals import ExtendedValue, ZPoint
from .utils import add_points, box_points, inner, parallel_map, sub_points, unit_moves
from .zfunction import ZFunction

logger = logging.getLogger(__name__)


class ConjugateQuery(CommonModel):
    f: ZFunction
    p: ZPoint

    @model_validator(mode="after")
    def check_dimension(self) -> "ConjugateQuery":
        if len(self.p) != self.f.dim:
            raise PydanticCustomError(
                "query_dimension", "p has {got} coordinates, f has dimension {dim}", {"got": len(self.p), "dim": self.f.dim}
            )
        return self


class SubdifferentialHRep(CommonModel):
    system: InequalitySystem
    anchor: ZPoint
    local: bool


class BackSubstitutionStep(CommonModel):
    stage: int
    variable: int
    upper_rows: int
    zero_rows: int
    lower_rows: int
    lower: Optional[ExtendedValue] = None
    upper: Optional[ExtendedValue] = None
    chosen: Optional[int] = None


class BackSubstitutionTrace(CommonModel):
    order: Tuple[int, ...]
    # in back-substitution order: last eliminated variable first
    steps: Tuple[BackSubstitutionStep, ...]


class SubgradientCertificate(CommonModel):
    """An integer p with f(y) - f(x) >= <p, y - x> for every y in dom f."""

    x: ZPoint
    p: ZPoint
    verified_rows: int
    trace: Optional[BackSubstitutionTrace] = None


class SubdifferentialVerdict(CommonModel):
    x: ZPoint
    nonempty: bool
    method: Literal["fourier-motzkin", "integer-search"]
    certificate: Optional[SubgradientCertificate] = None
    proof: Optional[IntegerFeasibility] = None


class BiconjugateReport(CommonModel):
    x: ZPoint
    value: ExtendedValue
    method: Literal["subgradient", "separation", "search"]
    subgradient: Optional[ZPoint] = None
    separating_direction: Optional[ZPoint] = None
    search_bound: Optional[int] = None
    maximizer: Optional[ZPoint] = None
    f_value: ExtendedValue


def _check_dim(f: ZFunction, v: Sequence[int], name: str) -> ZPoint:
    if len(v) != f.dim:
        raise DimensionMismatchError(f"{name} has {len(v)} coordinates, function has dimension {f.dim}")
    return tuple(int(c) for c in v)


def _domain_arrays(f: ZFunction) -> Tuple[np.ndarray, np.ndarray]:
    points = np.array(f.domain_points, dtype=np.int64)
    values = np.array([f.table[x] for x in f.domain_points], dtype=np.int64)
    return points, values


def conjugate_values(f: ZFunction, ps: np.ndarray) -> np.ndarray:
    """f•(p) for each row of `ps`, exact in int64 at the sizes handled here."""

    points, values = _domain_arrays(f)
    return (ps @ points.T - values).max(axis=1)


def integral_conjugate(f: ZFunction, p: Sequence[int]) -> ExtendedValue:
    """f•(p) = max over dom f of <p, x> - f(x)."""

    p = _check_dim(f, p, "p")
    return ExtendedValue.finite(max(inner(p, x) - v for x, v in f.table.items()))


def conjugate_maximizers(f: ZFunction, p: Sequence[int]) -> List[ZPoint]:
    """All x attaining f•(p), lexicographic."""

    p = _check_dim(f, p, "p")
    scores = {x: inner(p, x) - v for x, v in f.table.items()}
    best = max(scores.values())
    return sorted(x for x, s in scores.items() if s == best)


def conjugate_table(
    f: ZFunction,
    lower: Sequence[int],
    upper: Sequence[int],
    threads: Optional[int] = None,
) -> ZFunction:
    """f• materialized on the integer box [lower, upper]."""

    lower = _check_dim(f, lower, "lower")
    upper = _check_dim(f, upper, "upper")
    grid = list(box_points(lower, upper))

    values = parallel_map(lambda p: integral_conjugate(f, p).require_finite(), grid, threads)

    return ZFunction(dim=f.dim, table={p: int(v) for p, v in zip(grid, values)})


def real_subdifferential_hrep(f: ZFunction, x: Sequence[int], local: bool = False) -> SubdifferentialHRep:
    """Rows <y - x, p> <= f(y) - f(x) describing ∂_R f(x).

    With `local`, only y - x in {-1, 0, +1}^n are used, which describes the
    subdifferential of an integrally convex f exactly. The vacuous y = x row is
    never emitted.
    """

    x = _check_dim(f, x, "x")
    base = f.require(x)

    if local:
        neighbors = [add_points(x, d) for d in unit_moves(f.dim)]
        ys = [y for y in neighbors if f.in_domain(y)]
    else:
        ys = [y for y in f.domain_points if y != x]

    rows = [make_row(sub_points(y, x), f.table[y] - base) for y in ys]
    return SubdifferentialHRep(system=InequalitySystem(dim=f.dim, rows=tuple(rows)), anchor=x, local=local)


def subgradient_violation(f: ZFunction, x: Sequence[int], p: Sequence[int]) -> Optional[ZPoint]:
    """First y in dom f with f(y) - f(x) < <p, y - x>, or None."""

    base = f.require(x)
    for y in f.domain_points:
        if f.table[y] - base < inner(p, sub_points(y, x)):
            return y
    return None


def is_integral_subgradient(f: ZFunction, x: Sequence[int], p: Sequence[int]) -> bool:
    x = _check_dim(f, x, "x")
    p = _check_dim(f, p, "p")
    return subgradient_violation(f, x, p) is None


def certify_subgradient(
    f: ZFunction, x: Sequence[int], p: Sequence[int], trace: Optional[BackSubstitutionTrace] = None
) -> SubgradientCertificate:
    """Check p against every point of dom f; raise ValueError naming the first failing y."""

    x = _check_dim(f, x, "x")
    p = _check_dim(f, p, "p")

    failing = subgradient_violation(f, x, p)
    if failing is not None:
        raise ValueError(f"p={p} is not a subgradient at x={x}: fails at y={failing}")

    return SubgradientCertificate(x=x, p=p, verified_rows=len(f.table), trace=trace)


def integral_subdifferential_points(
    f: ZFunction, x: Sequence[int], lower: Sequence[int], upper: Sequence[int]
) -> List[ZPoint]:
    """∂_Z f(x) intersected with an integer box, by enumeration."""

    x = _check_dim(f, x, "x")
    return [p for p in box_points(lower, upper) if subgradient_violation(f, x, p) is None]


def integral_subdifferential_nonempty(f: ZFunction, x: Sequence[int]) -> SubdifferentialVerdict:
    """Decide ∂_Z f(x) ≠ ∅.

    The Fourier–Motzkin subgradient of the local system is tried first and
    kept if it passes the exhaustive check. Otherwise the full system is
    handed to the exact integer search, which either finds a subgradient or
    records why none exists.
    """

    from .fm_subgradient import fm_integer_subgradient

    x = _check_dim(f, x, "x")
    f.require(x)

    try:
        certificate = fm_integer_subgradient(f, x)
        return SubdifferentialVerdict(x=x, nonempty=True, method="fourier-motzkin", certificate=certificate)
    except NotIntegrallyConvexError as exc:
        logger.warning("Local subgradient construction failed at %s (%s); searching the full system.", x, exc)

    hrep = real_subdifferential_hrep(f, x, local=False)
    if not hrep.system.rows:
        # dom f = {x}: every p works
        certificate = certify_subgradient(f, x, (0,) * f.dim)
        return SubdifferentialVerdict(x=x, nonempty=True, method="integer-search", certificate=certificate)

    search = integer_feasible_point(hrep.system)

    if search.feasible:
        certificate = certify_subgradient(f, x, search.point)
        return SubdifferentialVerdict(
            x=x, nonempty=True, method="integer-search", certificate=certificate, proof=search
        )

    logger.info("Integral subdifferential at %s is empty.", x)
    return SubdifferentialVerdict(x=x, nonempty=False, method="integer-search", proof=search)


def weak_duality_holds(f: ZFunction, x: Sequence[int], p: Sequence[int]) -> bool:
    """f(x) + f•(p) >= <p, x>."""

    x = _check_dim(f, x, "x")
    return f.value(x) + integral_conjugate(f, p) >= inner(p, x)


def separating_direction(f: ZFunction, x: Sequence[int]) -> Optional[ZPoint]:
    """An integer p with <p, x> > max over dom f of <p, y>, or None when x ∈ conv(dom f).

    Solves max <p, x> - t subject to <p, y> <= t on dom f and -1 <= p <= 1.
    """

    x = _check_dim(f, x, "x")
    n = f.dim

    rows = [(list(y) + [-1], 0) for y in f.domain_points]
    for j in range(n):
        unit = [int(i == j) for i in range(n)] + [0]
        rows.append((unit, 1))
        rows.append(([-c for c in unit], 1))

    system = InequalitySystem.from_rows(rows, n + 1)
    result = lp_solve(list(x) + [-1], system)

    if not result.is_optimal or result.value <= 0:
        return None

    return primitive_integer_vector(result.point[:n])


def search_bound(f: ZFunction) -> int:
    """B = 1 + (n + 1)(max f - min f) + the widest coordinate spread of dom f."""

    lower, upper = f.domain.bounding_box()
    spread = max(hi - lo for lo, hi in zip(lower, upper))
    return 1 + (f.dim + 1) * (f.max_value - f.min_value) + spread


def _bound_rows(lower: Sequence[int], upper: Sequence[int]) -> List[Inequality]:
    """lower <= p <= upper on the first coordinates of (p, t)."""

    n = len(lower)
    rows = []
    for j in range(n):
        unit = [int(i == j) for i in range(n)] + [0]
        rows.append(make_row(unit, upper[j]))
        rows.append(make_row([-c for c in unit], -lower[j]))
    return rows


def _branch_and_bound(f: ZFunction, x: ZPoint, bound: int) -> Tuple[int, ZPoint]:
    """max over integer p in [-B, B]^n of <p, x> - f•(p), with one maximizer.

    Each node relaxes p to real values and maximizes t subject to
    t + <p, y - x> <= f(y) on dom f. A node splits on its first fractional
    p_j and is dropped once the floor of its relaxed value cannot beat the
    best integer p found so far.

    Raises:
        IntegerSearchLimitError: more nodes than the configured integer search limit.
    """

    n = f.dim
    relaxation = InequalitySystem.from_rows(
        [(list(sub_points(y, x)) + [1], value) for y, value in f.items()], n + 1
    )
    objective = [0] * n + [1]
    limit = get_config().integer_search_limit

    best: Optional[Tuple[int, ZPoint]] = None
    stack = [((-bound,) * n, (bound,) * n)]
    nodes = 0

    while stack:
        lower, upper = stack.pop()
        nodes += 1
        if nodes > limit:
            raise IntegerSearchLimitError(f"Branch and bound for f••{x} gave up after {limit} nodes")

        result = lp_solve(objective, relaxation.extended(_bound_rows(lower, upper)))
        if not result.is_optimal:
            continue
        if best is not None and floor(result.value) <= best[0]:
            continue

        p = result.point[:n]
        j = next((i for i, c in enumerate(p) if Fraction(c).denominator != 1), None)
        if j is None:
            point = tuple(int(c) for c in p)
            value = inner(point, x) - int(integral_conjugate(f, point).require_finite())
            if best is None or value > best[0]:
                best = (value, point)
            continue

        cut = floor(p[j])
        stack.append((lower, upper[:j] + (cut,) + upper[j + 1 :]))  # noqa: E203
        stack.append((lower[:j] + (cut + 1,) + lower[j + 1 :], upper))  # noqa: E203

    logger.debug("Branch and bound for f••%s with B=%d: %d nodes.", x, bound, nodes)
    return best


def biconjugate_report(f: ZFunction, x: Sequence[int], doublings: Optional[int] = None) -> BiconjugateReport:
    """f••(x) together with the certificate that settles it."""

    x = _check_dim(f, x, "x")
    f_value = f.value(x)

    if f_value.is_finite:
        verdict = integral_subdifferential_nonempty(f, x)
        if verdict.nonempty:
            return BiconjugateReport(
                x=x, value=f_value, method="subgradient", subgradient=verdict.certificate.p, f_value=f_value
            )
    else:
        direction = separating_direction(f, x)
        if direction is not None:
            return BiconjugateReport(
                x=x,
                value=ExtendedValue.plus_infinity(),
                method="separation",
                separating_direction=direction,
                f_value=f_value,
            )

    if doublings is None:
        doublings = get_config().biconjugate_doublings

    bound = search_bound(f)
    logger.warning("Falling back to bounded search for f••%s with B=%d.", x, bound)
    value, maximizer = _branch_and_bound(f, x, bound)

    larger = bound
    for _ in range(doublings):
        larger *= 2
        enlarged_value, _ = _branch_and_bound(f, x, larger)
        if enlarged_value != value:
            raise BiconjugateUnstableError(
                f"f••{x} changed from {value} to {enlarged_value} when the search box grew from {bound} to {larger}"
            )

    return BiconjugateReport(
        x=x,
        value=ExtendedValue.finite(value),
        method="search",
        search_bound=bound,
        maximizer=maximizer,
        f_value=f_value,
    )


def integral_biconjugate(f: ZFunction, x: Sequence[int]) -> ExtendedValue:
    return biconjugate_report(f, x).value


class ConjugatePropertyRow(CommonModel):
    p: ZPoint
    x: ZPoint
    conjugate_value: int


class ConjugatePropertyReport(CommonModel):
    rows: Tuple[ConjugatePropertyRow, ...]
    domain_points_checked: int
    box_points_checked: int


def conjugate_property_suite(
    f: ZFunction,
    sample_p: Sequence[Sequence[int]],
    check_ic: bool = True,
) -> ConjugatePropertyReport:
    """Check the conjugate/subgradient properties of an integrally convex f.

    For every sampled p with maximizer x of <p, x> - f(x), the identity
    f(x) + f•(p) = <p, x> must hold, p must lie in ∂_Z f(x), f••(x) must equal
    f(x), and x must lie in ∂_Z f•(p), that is f•(p) + f••(x) = <p, x>.

    Then every integer point z of the bounding box of dom f is swept: on dom f
    f••(z) must equal f(z); off dom f, z must lie outside conv(dom f) and
    f••(z) must be +inf.

    Raises:
        PropertyViolationError: naming the item, x and p of the first failure.
    """

    from .checker import is_integrally_convex_function

    if check_ic:
        verdict = is_integrally_convex_function(f)
        if not verdict.is_ic:
            raise NotIntegrallyConvexError("Conjugate properties need an integrally convex function", detail=verdict)

    rows = []
    for raw_p in sample_p:
        p = _check_dim(f, raw_p, "p")
        conjugate_value = integral_conjugate(f, p).require_finite()
        x = conjugate_maximizers(f, p)[0]

        if f.require(x) + conjugate_value != inner(p, x):
            raise PropertyViolationError("conjugate-subgradient identity", x, p)
        if not is_integral_subgradient(f, x, p):
            raise PropertyViolationError("subgradient at the maximizer", x, p)
        biconjugate_value = integral_biconjugate(f, x)
        if biconjugate_value != f.require(x):
            raise PropertyViolationError("biconjugate equals f", x, p)
        if biconjugate_value + conjugate_value != inner(p, x):
            raise PropertyViolationError("maximizer is a subgradient of the conjugate", x, p)

        rows.append(ConjugatePropertyRow(p=p, x=x, conjugate_value=int(conjugate_value)))

    lower, upper = f.domain.bounding_box()
    box = list(box_points(lower, upper))
    outside = 0
    for z in box:
        if f.in_domain(z):
            value = integral_biconjugate(f, z)
            if value != f.require(z):
                raise PropertyViolationError("biconjugate equals f", z, None, f"f••{z} = {value}")
            continue

        outside += 1
        if hull_membership(z, f.domain_points).member:
            raise PropertyViolationError("domain is hole-free", z, None, "inside conv(dom f)")
        if integral_biconjugate(f, z).is_finite:
            raise PropertyViolationError("biconjugate domain", z, None)

    logger.debug("Property sweep over %d box points of f, %d off the domain.", len(box), outside)
    return ConjugatePropertyReport(rows=tuple(rows), domain_points_checked=outside, box_points_checked=len(box))
