"""General Fourier–Motzkin elimination and exact integer feasibility on top of it."""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import reduce
from math import ceil, floor, isqrt, lcm
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from ..commonmodel import CommonModel
from ..config import get_config
from ..errors import IntegerSearchLimitError
from ..rationals import Number, Rational, ZPoint, format_rational
from .simplex import lp_solve
from .systems import Inequality, InequalitySystem

logger = logging.getLogger(__name__)

Interval = Tuple[Optional[Fraction], Optional[Fraction]]


def fm_eliminate_general(system: InequalitySystem, var: int) -> InequalitySystem:
    """Project out coordinate `var`.

    Every pair of a positive and a negative row on `var` is combined with
    positive multipliers so that `var` cancels; rows without `var` are kept.
    The result is normalized: coprime integer coefficients, trivial rows
    dropped, one row per coefficient vector.
    """

    if not 0 <= var < system.dim:
        raise IndexError(f"Variable {var} out of range for dimension {system.dim}")

    positive, negative, zero = [], [], []
    for row in system.rows:
        a = row.coeffs[var]
        if a > 0:
            positive.append(row)
        elif a < 0:
            negative.append(row)
        else:
            zero.append(row)

    combined = list(zero)
    for upper in positive:
        for lower in negative:
            a_upper = upper.coeffs[var]
            a_lower = -lower.coeffs[var]
            coeffs = tuple(a_lower * u + a_upper * w for u, w in zip(upper.coeffs, lower.coeffs))
            combined.append(Inequality(coeffs, a_lower * upper.rhs + a_upper * lower.rhs))

    logger.debug(
        "Eliminated p%d: %d positive, %d negative, %d zero rows.",
        var + 1,
        len(positive),
        len(negative),
        len(zero),
    )

    return InequalitySystem(dim=system.dim, rows=tuple(combined)).normalized()


def variable_interval(system: InequalitySystem, var: int, assignment: Dict[int, Number]) -> Interval:
    """Bounds on `var` from the rows mentioning it, given values for the other coordinates.

    Returns:
        (lower, upper): None stands for an infinite bound.
    """

    lower: Optional[Fraction] = None
    upper: Optional[Fraction] = None

    for row in system.rows:
        a = row.coeffs[var]
        if a == 0:
            continue

        rest = Fraction(row.rhs)
        for j, c in enumerate(row.coeffs):
            if j == var or c == 0:
                continue
            if j not in assignment:
                raise ValueError(f"p{j + 1} must be assigned before bounding p{var + 1}")
            rest -= c * Fraction(assignment[j])

        bound = rest / a
        if a > 0:
            upper = bound if upper is None else min(upper, bound)
        else:
            lower = bound if lower is None else max(lower, bound)

    return lower, upper


def interval_is_empty(interval: Interval) -> bool:
    lower, upper = interval
    return lower is not None and upper is not None and lower > upper


def integer_in_interval(interval: Interval) -> bool:
    lower, upper = interval
    if lower is None or upper is None:
        return True
    return ceil(lower) <= floor(upper)


def format_interval(interval: Interval) -> str:
    lower, upper = interval
    lo = "-inf" if lower is None else format_rational(lower)
    hi = "+inf" if upper is None else format_rational(upper)
    return f"[{lo}, {hi}]"


def search_radius(system: InequalitySystem) -> int:
    """Coordinate bound for integer solutions of A p <= b.

    (n + 1) times a Hadamard estimate R^(n+1) of the largest subdeterminant of
    the integer-scaled [A b], with R bounding every scaled row's Euclidean norm.
    """

    n = system.dim
    radius = 1
    for row in system.rows:
        entries = list(row.coeffs) + [row.rhs]
        scale = reduce(lcm, (Fraction(e).denominator for e in entries), 1)
        squared = sum(int(Fraction(e) * scale) ** 2 for e in entries)
        radius = max(radius, isqrt(squared) + 1)
    return (n + 1) * radius ** (n + 1)


def _candidates(interval: Interval, radius: int) -> Iterator[int]:
    lower, upper = interval
    lo = -radius if lower is None else max(ceil(lower), -radius)
    hi = radius if upper is None else min(floor(upper), radius)

    if upper is not None:
        yield from range(hi, lo - 1, -1)
    elif lower is not None:
        yield from range(lo, hi + 1)
    else:
        yield 0
        for k in range(1, radius + 1):
            yield k
            yield -k


class IntegerFeasibility(CommonModel):
    """Outcome of the exact integer search.

    `proof` lists the elimination facts and dead ends that rule out every
    integer point when `feasible` is false.
    """

    feasible: bool
    point: Optional[ZPoint] = None
    real_point: Optional[Tuple[Rational, ...]] = None
    order: Tuple[int, ...]
    proof: Tuple[str, ...] = ()
    explored: int = 0


def eliminate_in_order(system: InequalitySystem, order: Sequence[int]) -> List[InequalitySystem]:
    """Systems before each elimination: stages[k] still mentions order[k:], the last one order[-1]."""

    stages = [system.normalized()]
    for var in order[:-1]:
        stages.append(fm_eliminate_general(stages[-1], var))
    return stages


def integer_feasible_point(
    system: InequalitySystem,
    order: Optional[Sequence[int]] = None,
    max_explored: Optional[int] = None,
    max_proof_lines: int = 50,
) -> IntegerFeasibility:
    """Find an integer point of {p : A p <= b} or prove there is none.

    Variables are eliminated in `order`, then integers are chosen from the last
    eliminated variable back to the first, trying each stage's integer values
    from the upper end of its interval down. Infinite or huge intervals are
    clipped to `search_radius`.
    """

    n = system.dim
    order = tuple(order) if order is not None else tuple(range(n))
    if sorted(order) != list(range(n)):
        raise ValueError(f"{order} is not a permutation of the coordinates")

    if max_explored is None:
        max_explored = get_config().integer_search_limit

    real = lp_solve([0] * n, system)
    real_point = real.point if real.is_optimal else None

    stages = eliminate_in_order(system, order)
    proof: List[str] = []

    for k, stage in enumerate(stages):
        contradictions = [row for row in stage.rows if row.is_contradiction]
        if contradictions:
            proof.append(f"after eliminating {_names(order[:k])}: {contradictions[0].render()}")
            return IntegerFeasibility(feasible=False, order=order, proof=tuple(proof), real_point=real_point)

    radius = search_radius(system)
    assignment: Dict[int, int] = {}
    explored = 0

    # Coordinates that bound order[depth] in its stage; all of them are fixed before it.
    bounded_by = [
        frozenset(j for row in stage.rows if row.coeffs[var] != 0 for j, c in enumerate(row.coeffs) if c != 0 and j != var)
        for stage, var in zip(stages, order)
    ]

    def describe(depth: int) -> str:
        fixed = ", ".join(f"p{v + 1} = {assignment[v]}" for v in order[depth + 1 :])  # noqa: E203
        return f"{fixed}: " if fixed else ""

    def assign(depth: int) -> Optional[FrozenSet[int]]:
        """Fix order[depth] and everything eliminated before it.

        Returns None on success, otherwise the fixed coordinates the failure
        depends on. A failure that does not involve the coordinate fixed here is
        handed straight up instead of trying the remaining values.
        """

        nonlocal explored

        var = order[depth]
        interval = variable_interval(stages[depth], var, assignment)

        if not integer_in_interval(interval):
            if len(proof) < max_proof_lines:
                proof.append(f"{describe(depth)}p{var + 1} in {format_interval(interval)} contains no integer")
            return bounded_by[depth]

        conflict = bounded_by[depth]
        for value in _candidates(interval, radius):
            explored += 1
            if explored > max_explored:
                raise IntegerSearchLimitError(f"Integer search gave up after {max_explored} candidates")

            assignment[var] = value
            failure = None if depth == 0 else assign(depth - 1)
            if failure is None:
                return None

            del assignment[var]
            if var not in failure:
                return failure
            conflict = conflict | (failure - {var})

        return conflict

    if assign(n - 1) is None:
        point = tuple(assignment[j] for j in range(n))
        logger.debug("Integer point %s found after %d candidates.", point, explored)
        return IntegerFeasibility(feasible=True, point=point, order=order, explored=explored, real_point=real_point)

    logger.debug("No integer point; %d candidates explored.", explored)
    return IntegerFeasibility(
        feasible=False, order=order, proof=tuple(proof), explored=explored, real_point=real_point
    )


def _names(variables: Sequence[int]) -> str:
    if not variables:
        return "nothing"
    return ", ".join(f"p{v + 1}" for v in variables)
