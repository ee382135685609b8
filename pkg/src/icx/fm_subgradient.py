"""Integer subgradients of integrally convex functions by Fourier–Motzkin elimination.

The local system has one row ``<y, p> <= f(x + y) - f(x)`` per neighbor
direction y in {-1, 0, +1}^n. For an integrally convex f, the rows produced by
combining a positive and a negative row are implied by the rows that do not
involve the eliminated variable, so elimination reduces to partitioning: every
stage keeps its zero rows and sets the other rows aside for back-substitution.
Since every coefficient stays in {-1, 0, +1} and every right-hand side is an
integer, each back-substituted interval has integer ends.
"""

from __future__ import annotations

import logging
from math import ceil, floor
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from .commonmodel import CommonModel
from .conjugacy import (
    BackSubstitutionStep,
    BackSubstitutionTrace,
    SubgradientCertificate,
    real_subdifferential_hrep,
    subgradient_violation,
)
from .errors import NotIntegrallyConvexError, PropertyViolationError, UnboundedPolyhedronError
from .geometry.fourier_motzkin import fm_eliminate_general, format_interval, variable_interval
from .geometry.linalg import rank
from .geometry.systems import Inequality, InequalitySystem, systems_equivalent
from .rationals import ExtendedValue, ZPoint
from .zfunction import ZFunction

logger = logging.getLogger(__name__)

TieBreak = Literal["floor-upper", "upper"]


class EliminationStage(CommonModel):
    """Rows set aside when one variable is eliminated."""

    stage: int
    variable: int
    upper_rows: Tuple[Inequality, ...]
    zero_rows: Tuple[Inequality, ...]
    lower_rows: Tuple[Inequality, ...]


class PartitionedSystem(CommonModel):
    order: Tuple[int, ...]
    stages: Tuple[EliminationStage, ...]


class StageComparison(CommonModel):
    stage: int
    variable: int
    equivalent: bool
    upper_rows: int
    zero_rows: int
    lower_rows: int
    nontrivial_cross_rows: bool
    non_crossing_holds: bool


class EliminationComparison(CommonModel):
    x: ZPoint
    order: Tuple[int, ...]
    stages: Tuple[StageComparison, ...]

    @property
    def all_equivalent(self) -> bool:
        return all(s.equivalent for s in self.stages)

    @property
    def non_crossing_holds(self) -> bool:
        return all(s.non_crossing_holds for s in self.stages)


def _resolve_order(n: int, order: Optional[Sequence[int]]) -> Tuple[int, ...]:
    if order is None:
        return tuple(range(n))
    order = tuple(order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"{order} is not a permutation of 0..{n - 1}")
    return order


def build_local_system(f: ZFunction, x: Sequence[int]) -> InequalitySystem:
    """Rows <y, p> <= f(x + y) - f(x) for y in {-1, 0, +1}^n \\ {0} with x + y in dom f."""

    return real_subdifferential_hrep(f, x, local=True).system


def fm_eliminate_simplified(
    system: InequalitySystem, var: int, stage: int = 1
) -> Tuple[InequalitySystem, EliminationStage]:
    """Eliminate `var` without forming combined rows.

    Returns:
        (zero rows as the reduced system, the stage record holding the rows set aside)
    """

    upper, zero, lower = [], [], []
    for row in system.rows:
        if any(c not in (-1, 0, 1) for c in row.coeffs):
            raise ValueError(f"Row {row.render()} has a coefficient outside {{-1, 0, +1}}")
        a = row.coeffs[var]
        if a > 0:
            upper.append(row)
        elif a < 0:
            lower.append(row)
        else:
            zero.append(row)

    record = EliminationStage(
        stage=stage, variable=var, upper_rows=tuple(upper), zero_rows=tuple(zero), lower_rows=tuple(lower)
    )
    return InequalitySystem(dim=system.dim, rows=tuple(zero)), record


def partition_system(system: InequalitySystem, order: Optional[Sequence[int]] = None) -> PartitionedSystem:
    order = _resolve_order(system.dim, order)
    stages = []
    current = system
    for k, var in enumerate(order, start=1):
        current, record = fm_eliminate_simplified(current, var, stage=k)
        stages.append(record)
    return PartitionedSystem(order=order, stages=tuple(stages))


def _choose(lower, upper, tie_break: TieBreak) -> Optional[int]:
    if tie_break == "upper":
        return None if upper is None else floor(upper)
    if upper is not None:
        return floor(upper)
    if lower is not None:
        return ceil(lower)
    return 0


def back_substitute(
    partitioned: PartitionedSystem, tie_break: TieBreak = "floor-upper"
) -> Tuple[ZPoint, BackSubstitutionTrace]:
    """Choose integers from the last eliminated variable back to the first.

    Raises:
        NotIntegrallyConvexError: a stage interval holds no admissible integer.
        UnboundedPolyhedronError: `tie_break="upper"` met a stage with no upper bound.
    """

    dim = len(partitioned.order)
    assignment: Dict[int, int] = {}
    steps: List[BackSubstitutionStep] = []

    for record in reversed(partitioned.stages):
        var = record.variable
        rows = InequalitySystem(dim=dim, rows=record.upper_rows + record.lower_rows)
        lower, upper = variable_interval(rows, var, assignment)
        chosen = _choose(lower, upper, tie_break)

        step = BackSubstitutionStep(
            stage=record.stage,
            variable=var,
            upper_rows=len(record.upper_rows),
            zero_rows=len(record.zero_rows),
            lower_rows=len(record.lower_rows),
            lower=ExtendedValue.minus_infinity() if lower is None else ExtendedValue.finite(lower),
            upper=ExtendedValue.plus_infinity() if upper is None else ExtendedValue.finite(upper),
            chosen=chosen,
        )
        steps.append(step)
        trace = BackSubstitutionTrace(order=partitioned.order, steps=tuple(steps))

        if chosen is None:
            raise UnboundedPolyhedronError(f"p{var + 1} has no upper bound; use fm_integer_subgradient instead")

        if lower is not None and chosen < lower:
            raise NotIntegrallyConvexError(
                f"stage {record.stage}: p{var + 1} in {format_interval((lower, upper))} has no integer point",
                detail=trace,
            )

        assignment[var] = chosen

    p = tuple(assignment[j] for j in range(dim))
    return p, BackSubstitutionTrace(order=partitioned.order, steps=tuple(steps))


def fm_integer_subgradient(
    f: ZFunction, x: Sequence[int], order: Optional[Sequence[int]] = None
) -> SubgradientCertificate:
    """An integer subgradient of an integrally convex f at x, with its back-substitution trace.

    The result is checked against every point of dom f.

    Raises:
        NotIntegrallyConvexError: an empty stage interval, or a local subgradient
            that fails somewhere else in dom f; neither happens for integrally
            convex f.
    """

    x = tuple(x)
    system = build_local_system(f, x)
    partitioned = partition_system(system, order)

    p, trace = back_substitute(partitioned)

    failing = subgradient_violation(f, x, p)
    if failing is not None:
        raise NotIntegrallyConvexError(
            f"local subgradient {p} at {x} fails at {failing}", detail=trace
        )

    logger.debug("FM subgradient at %s: %s", x, p)
    return SubgradientCertificate(x=x, p=p, verified_rows=len(f.table), trace=trace)


def fm_bounded_vertex(f: ZFunction, x: Sequence[int], order: Optional[Sequence[int]] = None) -> ZPoint:
    """The integral vertex of a bounded ∂_R f(x) obtained by taking every upper bound.

    Raises:
        UnboundedPolyhedronError: ∂_R f(x) is unbounded.
        PropertyViolationError: the result is not a vertex or not a subgradient.
    """

    x = tuple(x)
    system = build_local_system(f, x)

    if not system.is_bounded():
        raise UnboundedPolyhedronError(
            f"∂_R f{x} is unbounded; use fm_integer_subgradient for an integer subgradient"
        )

    p, _ = back_substitute(partition_system(system, order), tie_break="upper")

    tight = [row.coeffs for row in system.tight_rows(p)]
    if not system.satisfied_by(p) or rank(tight, f.dim) != f.dim:
        raise PropertyViolationError("integral vertex", x, p, "upper-bound choice is not a vertex")

    if subgradient_violation(f, x, p) is not None:
        raise PropertyViolationError("integral vertex", x, p, "vertex is not a global subgradient")

    return p


def compare_eliminations(f: ZFunction, x: Sequence[int], order: Optional[Sequence[int]] = None) -> EliminationComparison:
    """Compare simplified and general elimination stage by stage.

    At every stage the zero rows kept by the simplified elimination must
    describe the same polyhedron as the fully combined system. The zero rows
    must also be nonempty whenever the combined rows of the stage carry
    information.
    """

    x = tuple(x)
    system = build_local_system(f, x)
    order = _resolve_order(f.dim, order)

    general = system
    simplified = system
    comparisons = []

    for k, var in enumerate(order, start=1):
        simplified, record = fm_eliminate_simplified(simplified, var, stage=k)
        general = fm_eliminate_general(general, var)

        nontrivial = any(
            any(a + b != 0 for a, b in zip(u.coeffs, w.coeffs))
            for u in record.upper_rows
            for w in record.lower_rows
        )

        comparisons.append(
            StageComparison(
                stage=k,
                variable=var,
                equivalent=systems_equivalent(simplified, general),
                upper_rows=len(record.upper_rows),
                zero_rows=len(record.zero_rows),
                lower_rows=len(record.lower_rows),
                nontrivial_cross_rows=nontrivial,
                non_crossing_holds=not nontrivial or bool(record.zero_rows),
            )
        )

    return EliminationComparison(x=x, order=order, stages=tuple(comparisons))
