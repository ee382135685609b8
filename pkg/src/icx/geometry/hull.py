"""Convex hulls of finite point sets: membership, vertices, facets and edges."""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import List, Optional, Sequence, Set, Tuple

from pydantic import model_validator
from pydantic_core import PydanticCustomError

from ..commonmodel import CommonModel
from ..errors import DimensionMismatchError, UnboundedPolyhedronError
from ..rationals import Number, QVector, Rational, ZPoint, as_qvector
from .linalg import dot, null_space, primitive_integer_vector, rank, sign_normalized, solve_square
from .simplex import LpStatus, solve_standard_form
from .systems import Inequality, InequalitySystem, normalize_row

logger = logging.getLogger(__name__)


class MembershipResult(CommonModel):
    member: bool
    coefficients: Optional[Tuple[Rational, ...]] = None


class CombinationResult(CommonModel):
    """Cheapest convex combination of points reproducing a target."""

    feasible: bool
    value: Optional[Rational] = None
    coefficients: Optional[Tuple[Rational, ...]] = None


def _check_dimensions(x: Sequence[Number], points: Sequence[Sequence[Number]]) -> None:
    if not points:
        raise ValueError("Convex hull of an empty point list")
    n = len(x)
    if any(len(p) != n for p in points):
        raise DimensionMismatchError(f"Every point must have dimension {n}")


def convex_combination(
    x: Sequence[Number],
    points: Sequence[Sequence[Number]],
    costs: Optional[Sequence[Number]] = None,
) -> CombinationResult:
    """Minimise sum λ_k cost_k over λ >= 0 with sum λ_k = 1 and sum λ_k point_k = x.

    Without costs this is a pure feasibility question.
    """

    _check_dimensions(x, points)

    columns = [list(p) + [1] for p in points]
    rhs = list(x) + [1]
    objective = list(costs) if costs is not None else [0] * len(points)

    result = solve_standard_form(columns, objective, rhs)

    if result.status != LpStatus.OPTIMAL:
        return CombinationResult(feasible=False)

    coefficients = tuple(result.weights)

    # exact reconstruction, no tolerance
    for j in range(len(x)):
        if sum((c * Fraction(p[j]) for c, p in zip(coefficients, points)), Fraction(0)) != Fraction(x[j]):
            raise ArithmeticError("Convex combination does not reproduce its target")

    return CombinationResult(feasible=True, value=result.value, coefficients=coefficients)


def hull_membership(x: Sequence[Number], points: Sequence[Sequence[Number]]) -> MembershipResult:
    """Decide x ∈ conv(points) and return the convex coefficients when it is."""

    combination = convex_combination(x, points)
    return MembershipResult(member=combination.feasible, coefficients=combination.coefficients)


def _unique_points(points: Sequence[Sequence[Number]]) -> List[QVector]:
    return sorted(set(as_qvector(p) for p in points))


def _extreme_points(points: Sequence[Sequence[Number]]) -> List[QVector]:
    unique = _unique_points(points)
    lookup = set(unique)

    extreme = []
    for v in unique:
        # v is the midpoint of a and 2v - a
        if any(a != v and tuple(2 * vi - ai for vi, ai in zip(v, a)) in lookup for a in unique):
            continue

        others = [p for p in unique if p != v]
        if others and hull_membership(v, others).member:
            continue

        extreme.append(v)

    return extreme


def _vertices_of_system(system: InequalitySystem) -> List[QVector]:
    if not system.is_feasible():
        return []
    if not system.is_bounded():
        raise UnboundedPolyhedronError("Vertex enumeration needs a bounded polyhedron")

    n = system.dim
    rows = system.rows
    found: Set[QVector] = set()

    for subset in combinations(range(len(rows)), n):
        matrix = [rows[i].coeffs for i in subset]
        point = solve_square(matrix, [rows[i].rhs for i in subset])
        if point is not None and system.satisfied_by(point):
            found.add(point)

    return sorted(found)


class Polytope(CommonModel):
    """A bounded polyhedron given by points (V-form) or inequalities (H-form).

    The other representation is derived on first access.
    """

    points: Optional[Tuple[Tuple[Rational, ...], ...]] = None
    system: Optional[InequalitySystem] = None

    @model_validator(mode="after")
    def check_one_form(self) -> "Polytope":
        if self.points is None and self.system is None:
            raise PydanticCustomError("polytope_form", "A polytope needs points or a system", {})
        if self.points is not None and len(self.points) == 0:
            raise PydanticCustomError("polytope_form", "A V-form polytope needs at least one point", {})
        return self

    @classmethod
    def from_points(cls, points: Sequence[Sequence[Number]]) -> "Polytope":
        return cls(points=tuple(as_qvector(p) for p in points))

    @classmethod
    def from_system(cls, system: InequalitySystem) -> "Polytope":
        return cls(system=system)

    @property
    def dim(self) -> int:
        if self.system is not None:
            return self.system.dim
        return len(self.points[0])

    @cached_property
    def vertices(self) -> List[QVector]:
        if self.points is not None:
            return _extreme_points(self.points)
        return _vertices_of_system(self.system)

    @cached_property
    def inequalities(self) -> InequalitySystem:
        if self.system is not None:
            return self.system
        return hull_inequalities(self.vertices)

    def contains(self, x: Sequence[Number]) -> bool:
        if self.points is not None:
            return hull_membership(x, self.points).member
        return self.system.satisfied_by(x)


def enumerate_vertices(poly: Polytope) -> List[QVector]:
    """Extreme points of a bounded polytope, sorted lexicographically."""

    return list(poly.vertices)


def affine_equalities(points: Sequence[Sequence[Number]]) -> List[Inequality]:
    """Normals of the affine hull, each as a primitive integer row ``w · p = w · base``."""

    unique = _unique_points(points)
    base = unique[0]
    n = len(base)
    differences = [tuple(a - b for a, b in zip(p, base)) for p in unique[1:]]

    normals = null_space(differences, n)

    rows = []
    for normal in normals:
        w = primitive_integer_vector(normal)
        rows.append(Inequality(tuple(Fraction(v) for v in w), dot(w, base)))
    return rows


def hull_inequalities(points: Sequence[Sequence[Number]]) -> InequalitySystem:
    """H-description of conv(points): facet rows plus each affine equality as two rows.

    Facet candidates are hyperplanes through affinely independent vertex
    subsets that leave every point on one side.
    """

    vertices = _extreme_points(points)
    n = len(vertices[0])

    equalities = affine_equalities(vertices)
    affine_dim = n - len(equalities)

    rows: List[Inequality] = []
    for eq in equalities:
        rows.append(eq)
        rows.append(Inequality(tuple(-c for c in eq.coeffs), -eq.rhs))

    if affine_dim >= 1:
        equality_normals = [list(eq.coeffs) for eq in equalities]

        for subset in combinations(vertices, affine_dim):
            anchor = subset[0]
            constraints = [[a - b for a, b in zip(q, anchor)] for q in subset[1:]] + equality_normals
            normals = null_space(constraints, n)
            if len(normals) != 1:
                continue

            w = normals[0]
            beta = dot(w, anchor)
            values = [dot(w, v) for v in vertices]

            if all(v <= beta for v in values):
                rows.append(normalize_row(Inequality(w, beta)))
            elif all(v >= beta for v in values):
                rows.append(normalize_row(Inequality(tuple(-c for c in w), -beta)))

    system = InequalitySystem(dim=n, rows=tuple(rows))
    logger.debug("Hull of %d vertices has %d rows.", len(vertices), len(system))

    return system.normalized()


def hull_edges(vertices: Sequence[Sequence[Number]], system: InequalitySystem) -> List[Tuple[QVector, QVector]]:
    """Vertex pairs spanning a 1-face: the rows tight at both have rank n - 1."""

    n = system.dim
    edges = []
    for u, v in combinations([as_qvector(p) for p in vertices], 2):
        tight = [row.coeffs for row in system.rows if row.slack(u) == 0 and row.slack(v) == 0]
        if rank(tight, n) == n - 1:
            edges.append((u, v))
    return edges


def edge_directions(edges: Sequence[Tuple[QVector, QVector]]) -> List[ZPoint]:
    """Primitive integer edge directions, first nonzero entry positive, deduplicated."""

    directions = {
        sign_normalized(primitive_integer_vector([b - a for a, b in zip(u, v)])) for u, v in edges
    }
    return sorted(directions)
