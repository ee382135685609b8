"""Recognition of integrally convex sets and functions.

Sets are decided cell by cell: for each unit cell C of the bounding box, the
polytope conv(S) ∩ C must lie inside conv(S ∩ C). Before that, the midpoints
of point pairs at l∞-distance 2 are tried, which finds the usual
counterexamples without any cell LP.

Functions are decided by the distance-2 criterion on top of an integrally
convex effective domain.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import product
from typing import Callable, Iterator, List, Literal, Optional, Sequence, Tuple, TypeVar

import numpy as np
from pydantic import model_validator
from pydantic_core import PydanticCustomError

from .commonmodel import CommonModel
from .errors import NotInDomainError, NotIntegrallyConvexError
from .extension import integral_neighborhood, local_convex_extension
from .geometry.hull import Polytope, edge_directions, hull_edges, hull_inequalities, hull_membership
from .geometry.simplex import LpStatus, solve_standard_form
from .rationals import ExtendedValue, Number, QVector, Rational, ZPoint, is_integral
from .utils import add_points, box_points, midpoint, parallel_map, unit_moves
from .zfunction import ZFunction, ZSet

logger = logging.getLogger(__name__)

T = TypeVar("T")
W = TypeVar("W")


class IcWitness(CommonModel):
    """Evidence against integral convexity.

    For sets, `point` lies in conv(S) but not in conv(S ∩ N(point)). For
    functions, `pair` is at l∞-distance 2 and the extension at its midpoint
    exceeds the average of the two values.
    """

    kind: Literal["set-midpoint", "set-cell", "function-pair"]
    point: Tuple[Rational, ...]
    pair: Optional[Tuple[ZPoint, ZPoint]] = None
    extension_value: Optional[ExtendedValue] = None
    average: Optional[Rational] = None


class IcVerdict(CommonModel):
    is_ic: bool
    witness: Optional[IcWitness] = None
    reason: Optional[str] = None

    @model_validator(mode="after")
    def witness_iff_violation(self) -> "IcVerdict":
        if self.is_ic == (self.witness is not None):
            raise PydanticCustomError(
                "verdict_witness", "A witness must be given exactly when the verdict is negative", {}
            )
        return self


class HullReport(CommonModel):
    vertices: Tuple[Tuple[Rational, ...], ...]
    all_vertices_integral: bool
    edge_primitive_directions: Tuple[ZPoint, ...]
    directions_in_pm1: bool
    hole_free: bool
    facet_rows: int


class LocalSearchResult(CommonModel):
    start: ZPoint
    minimizer: ZPoint
    value: int
    steps: int
    certified: bool


def _distance_two_offsets(n: int) -> List[ZPoint]:
    """Offsets d with max |d_i| = 2 whose first nonzero entry is positive, lexicographic."""

    offsets = []
    for d in product(range(-2, 3), repeat=n):
        if max(abs(c) for c in d) != 2:
            continue
        first = next(c for c in d if c != 0)
        if first > 0:
            offsets.append(d)
    return offsets


def distance_two_pairs(points: Sequence[ZPoint]) -> Iterator[Tuple[ZPoint, ZPoint]]:
    """Pairs x < y of `points` with ||x - y||∞ = 2, in lexicographic order of (x, y)."""

    if not points:
        return
    lookup = set(points)
    offsets = _distance_two_offsets(len(points[0]))
    for x in sorted(points):
        for d in offsets:
            y = add_points(x, d)
            if y in lookup:
                yield x, y


def _first_hit(items: Sequence[T], test: Callable[[T], Optional[W]], threads: Optional[int] = None) -> Optional[W]:
    """First non-None `test(item)` in item order; batches go through the thread pool."""

    batch = 64
    for start in range(0, len(items), batch):
        chunk = items[start : start + batch]  # noqa: E203
        for hit in parallel_map(test, chunk, threads):
            if hit is not None:
                return hit
    return None


def set_condition_holds_at(S: ZSet, x: Sequence[Number]) -> bool:
    """x ∈ conv(S) implies x ∈ conv(S ∩ N(x)), checked at one point."""

    if not hull_membership(x, S.points).member:
        return True

    local = [z for z in integral_neighborhood(x).points if z in S]
    if not local:
        return False
    return hull_membership(x, local).member


def _midpoint_violation(S: ZSet, pair: Tuple[ZPoint, ZPoint]) -> Optional[IcWitness]:
    m = midpoint(*pair)
    neighborhood = integral_neighborhood(m).points
    local = [z for z in neighborhood if z in S]

    if len(local) == len(neighborhood):
        return None
    if local and hull_membership(m, local).member:
        return None

    return IcWitness(kind="set-midpoint", point=m, pair=pair)


def _cell_lp_columns(
    points: Sequence[ZPoint], corner: ZPoint, far_corner: ZPoint
) -> Tuple[List[List[int]], List[int]]:
    """Standard form of conv(points) ∩ [corner, far_corner].

    Rows: sum λ_s s + t = far_corner, sum λ_s s - u = corner, sum λ_s = 1.
    """

    n = len(corner)
    columns = [list(s) + list(s) + [1] for s in points]
    for i in range(n):
        columns.append([int(i == j) for j in range(n)] + [0] * n + [0])
    for i in range(n):
        columns.append([0] * n + [-int(i == j) for j in range(n)] + [0])
    rhs = list(far_corner) + list(corner) + [1]
    return columns, rhs


def _cell_violation(S: ZSet, cell_bounds: Tuple[ZPoint, ZPoint]) -> Optional[IcWitness]:
    n = S.dim
    corner, far_corner = cell_bounds
    cell = list(box_points(corner, far_corner))
    local = [p for p in cell if p in S]

    if len(local) == len(cell):
        return None

    points = list(S.points)
    columns, rhs = _cell_lp_columns(points, corner, far_corner)
    slack_costs = [0] * (2 * n)

    def optimum_point(weights: Sequence[Fraction]) -> QVector:
        return tuple(
            sum((w * s[j] for w, s in zip(weights, points) if w), Fraction(0)) for j in range(n)
        )

    if not local:
        result = solve_standard_form(columns, [0] * len(points) + slack_costs, rhs)
        if result.status == LpStatus.OPTIMAL:
            return IcWitness(kind="set-cell", point=optimum_point(result.weights))
        return None

    for row in hull_inequalities(local).rows:
        costs = [-sum(c * v for c, v in zip(row.coeffs, s)) for s in points] + slack_costs
        result = solve_standard_form(columns, costs, rhs)
        if result.status != LpStatus.OPTIMAL:
            continue
        if -result.value > row.rhs:
            return IcWitness(kind="set-cell", point=optimum_point(result.weights))

    return None


def _cells(S: ZSet) -> List[Tuple[ZPoint, ZPoint]]:
    """Unit cells covering the bounding box; flat coordinates give flat cells."""

    lower, upper = S.bounding_box()
    widths = [1 if hi > lo else 0 for lo, hi in zip(lower, upper)]
    corners = box_points(lower, tuple(hi - w for hi, w in zip(upper, widths)))
    return [(z, tuple(c + w for c, w in zip(z, widths))) for z in corners]


def is_integrally_convex_set(S: ZSet, threads: Optional[int] = None) -> IcVerdict:
    lower, upper = S.bounding_box()

    if all(hi - lo <= 1 for lo, hi in zip(lower, upper)):
        logger.debug("Set fits in one unit cell.")
        return IcVerdict(is_ic=True)

    pairs = list(distance_two_pairs(S.points))
    witness = _first_hit(pairs, lambda pair: _midpoint_violation(S, pair), threads)

    if witness is None:
        cells = _cells(S)
        logger.debug("No midpoint violation; checking %d cells.", len(cells))
        witness = _first_hit(cells, lambda cell: _cell_violation(S, cell), threads)

    if witness is None:
        return IcVerdict(is_ic=True)

    logger.info("Set is not integrally convex: %s at %s.", witness.kind, witness.point)
    return IcVerdict(is_ic=False, witness=witness)


def _pair_violation(f: ZFunction, pair: Tuple[ZPoint, ZPoint]) -> Optional[IcWitness]:
    x, y = pair
    m = midpoint(x, y)
    extension = local_convex_extension(f, m).value
    average = Fraction(f.require(x) + f.require(y), 2)

    if extension > average:
        return IcWitness(kind="function-pair", point=m, pair=pair, extension_value=extension, average=average)
    return None


def is_integrally_convex_function(f: ZFunction, threads: Optional[int] = None) -> IcVerdict:
    domain_verdict = is_integrally_convex_set(f.domain, threads)
    if not domain_verdict.is_ic:
        return IcVerdict(
            is_ic=False,
            witness=domain_verdict.witness,
            reason="effective domain is not integrally convex",
        )

    pairs = list(distance_two_pairs(f.domain_points))
    witness = _first_hit(pairs, lambda pair: _pair_violation(f, pair), threads)

    if witness is None:
        return IcVerdict(is_ic=True)

    logger.info("Function is not integrally convex at pair %s.", witness.pair)
    return IcVerdict(is_ic=False, witness=witness, reason="distance-2 midpoint inequality fails")


def witness_reverifies(S: ZSet, witness: IcWitness) -> bool:
    return not set_condition_holds_at(S, witness.point)


def _require_ic(f: ZFunction) -> None:
    verdict = is_integrally_convex_function(f)
    if not verdict.is_ic:
        raise NotIntegrallyConvexError("Function is not integrally convex", detail=verdict)


def is_global_minimizer(f: ZFunction, x: Sequence[int], check_ic: bool = False) -> bool:
    """Local optimality over {-1, 0, +1}^n moves, which is global for integrally convex f."""

    x = tuple(x)
    value = f.get(x)
    if value is None:
        raise NotInDomainError(f"{x} is not in the effective domain")

    if check_ic:
        _require_ic(f)

    for d in unit_moves(f.dim):
        neighbor_value = f.get(add_points(x, d))
        if neighbor_value is not None and neighbor_value < value:
            return False
    return True


def local_search_minimize(f: ZFunction, start: Sequence[int], certify: bool = True) -> LocalSearchResult:
    """Steepest descent over {-1, 0, +1}^n moves.

    Ties between equally good moves go to the lexicographically smallest.
    With `certify`, the end point is reported as a global minimizer only for
    integrally convex f.
    """

    current = tuple(start)
    value = f.require(current)
    moves = unit_moves(f.dim)
    steps = 0

    while True:
        best = None
        for d in moves:
            candidate = add_points(current, d)
            candidate_value = f.get(candidate)
            if candidate_value is not None and candidate_value < value and (best is None or candidate_value < best[1]):
                best = (candidate, candidate_value)

        if best is None:
            break

        current, value = best
        steps += 1

    certified = False
    if certify:
        certified = is_integrally_convex_function(f).is_ic
        if not certified:
            logger.warning("Local minimum %s is not certified: function is not integrally convex.", current)

    return LocalSearchResult(start=tuple(start), minimizer=current, value=value, steps=steps, certified=certified)


def hull_report(S: ZSet) -> HullReport:
    polytope = Polytope.from_points(S.points)
    vertices = polytope.vertices
    system = polytope.inequalities

    directions = edge_directions(hull_edges(vertices, system))

    lower, upper = S.bounding_box()
    hole_free = all(z in S or not system.satisfied_by(z) for z in box_points(lower, upper))

    return HullReport(
        vertices=tuple(vertices),
        all_vertices_integral=all(is_integral(v) for v in vertices),
        edge_primitive_directions=tuple(directions),
        directions_in_pm1=all(all(abs(c) <= 1 for c in d) for d in directions),
        hole_free=hole_free,
        facet_rows=len(system),
    )


def sample_hull_points(S: ZSet, count: int, seed: int = 0) -> List[QVector]:
    """Rational points of conv(S): random convex combinations of up to three points plus all distance-2 midpoints."""

    rng = np.random.default_rng(seed)
    points = list(S.points)
    samples: List[QVector] = [midpoint(x, y) for x, y in distance_two_pairs(points)]

    while len(samples) < count:
        k = int(rng.integers(1, min(3, len(points)) + 1))
        chosen = [points[int(i)] for i in rng.choice(len(points), size=k, replace=False)]
        weights = [int(w) for w in rng.integers(1, 5, size=k)]
        total = sum(weights)
        samples.append(
            tuple(sum((Fraction(w, total) * p[j] for w, p in zip(weights, chosen)), Fraction(0)) for j in range(S.dim))
        )

    return samples[:count]


def definitional_oracle_agrees(S: ZSet, verdict: IcVerdict, samples: int = 200, seed: int = 0) -> bool:
    """Compare a verdict with the pointwise definition on sampled points of conv(S).

    A positive verdict must survive every sample; a negative one must carry a
    witness that fails the definition.
    """

    if verdict.is_ic:
        return all(set_condition_holds_at(S, x) for x in sample_hull_points(S, samples, seed))
    return witness_reverifies(S, verdict.witness)
