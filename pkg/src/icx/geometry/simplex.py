"""Exact two-phase revised simplex.

Everything is expressed through one standard-form problem

    minimise   cost · w
    subject to sum_k w_k column_k = rhs,   w >= 0

with Bland's rule for entering and leaving variables, so the solver always
terminates and is deterministic. Inequality-form problems (``lp_solve``) are
answered through their dual, which keeps the basis as small as the dimension
of the point space.
"""

from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, List, Literal, Optional, Sequence, Tuple

from ..commonmodel import CommonModel
from ..errors import DimensionMismatchError
from ..rationals import Number, QVector, Rational
from .linalg import dot

if TYPE_CHECKING:
    from .systems import InequalitySystem

logger = logging.getLogger(__name__)


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class StandardFormResult(CommonModel):
    status: LpStatus
    value: Optional[Rational] = None
    weights: Optional[Tuple[Rational, ...]] = None
    # simplex multipliers, one per equality row, in the caller's row signs
    multipliers: Optional[Tuple[Rational, ...]] = None


class LpResult(CommonModel):
    status: LpStatus
    value: Optional[Rational] = None
    point: Optional[Tuple[Rational, ...]] = None

    @property
    def is_optimal(self) -> bool:
        return self.status == LpStatus.OPTIMAL


class _Tableau:
    """Basis inverse plus basic solution of one standard-form problem."""

    def __init__(self, columns: List[List[Fraction]], rhs: List[Fraction]) -> None:
        self.m = len(rhs)
        self.columns = columns
        self.n_real = len(columns)

        # artificial columns e_i sit after the real ones
        for i in range(self.m):
            self.columns.append([Fraction(int(i == r)) for r in range(self.m)])

        self.basis = [self.n_real + i for i in range(self.m)]
        self.inverse = [[Fraction(int(i == j)) for j in range(self.m)] for i in range(self.m)]
        self.values = list(rhs)

    def is_artificial(self, index: int) -> bool:
        return index >= self.n_real

    def multipliers(self, costs: Sequence[Fraction]) -> List[Fraction]:
        basic_costs = [costs[b] for b in self.basis]
        return [
            sum((basic_costs[i] * self.inverse[i][j] for i in range(self.m)), Fraction(0))
            for j in range(self.m)
        ]

    def direction(self, index: int) -> List[Fraction]:
        column = self.columns[index]
        return [
            sum((row[k] * column[k] for k in range(self.m) if column[k]), Fraction(0))
            for row in self.inverse
        ]

    def pivot(self, leaving_row: int, entering: int, direction: List[Fraction]) -> None:
        pivot = direction[leaving_row]
        pivot_row = [v / pivot for v in self.inverse[leaving_row]]
        pivot_value = self.values[leaving_row] / pivot

        for i in range(self.m):
            if i == leaving_row or direction[i] == 0:
                continue
            factor = direction[i]
            self.inverse[i] = [a - factor * b for a, b in zip(self.inverse[i], pivot_row)]
            self.values[i] -= factor * pivot_value

        self.inverse[leaving_row] = pivot_row
        self.values[leaving_row] = pivot_value
        self.basis[leaving_row] = entering

    def run(self, costs: Sequence[Fraction], allow_artificial: bool) -> LpStatus:
        while True:
            pi = self.multipliers(costs)
            basic = set(self.basis)

            entering = None
            limit = len(self.columns) if allow_artificial else self.n_real
            for j in range(limit):
                if j in basic:
                    continue
                column = self.columns[j]
                reduced = costs[j] - sum((pi[k] * column[k] for k in range(self.m) if column[k]), Fraction(0))
                if reduced < 0:
                    entering = j
                    break

            if entering is None:
                return LpStatus.OPTIMAL

            direction = self.direction(entering)

            leaving_row = None
            best: Optional[Tuple[Fraction, int]] = None
            for i, d in enumerate(direction):
                if d <= 0:
                    continue
                key = (self.values[i] / d, self.basis[i])
                if best is None or key < best:
                    best = key
                    leaving_row = i

            if leaving_row is None:
                return LpStatus.UNBOUNDED

            self.pivot(leaving_row, entering, direction)

    def drive_out_artificials(self) -> None:
        for row in range(self.m):
            if not self.is_artificial(self.basis[row]):
                continue
            basic = set(self.basis)
            for j in range(self.n_real):
                if j in basic:
                    continue
                direction = self.direction(j)
                if direction[row] != 0:
                    self.pivot(row, j, direction)
                    break
            # otherwise the row is redundant and its artificial stays basic at zero


def solve_standard_form(
    columns: Sequence[Sequence[Number]],
    costs: Sequence[Number],
    rhs: Sequence[Number],
) -> StandardFormResult:
    """Minimise cost · w subject to sum_k w_k column_k = rhs, w >= 0.

    Returns:
        StandardFormResult: optimal weights and multipliers, or the infeasible /
        unbounded status.
    """

    m = len(rhs)
    if any(len(c) != m for c in columns):
        raise DimensionMismatchError("Every column needs one entry per equality row")
    if len(costs) != len(columns):
        raise DimensionMismatchError("Expected one cost per column")

    # flip rows so the artificial start basis is feasible
    signs = [(-1 if Fraction(r) < 0 else 1) for r in rhs]
    flipped_columns = [[Fraction(c[i]) * signs[i] for i in range(m)] for c in columns]
    flipped_rhs = [Fraction(r) * signs[i] for i, r in enumerate(rhs)]

    tableau = _Tableau(flipped_columns, flipped_rhs)
    n_real = tableau.n_real

    phase_one_costs = [Fraction(0)] * n_real + [Fraction(1)] * m
    tableau.run(phase_one_costs, allow_artificial=True)

    infeasibility = sum(
        (tableau.values[i] for i in range(m) if tableau.is_artificial(tableau.basis[i])),
        Fraction(0),
    )
    if infeasibility > 0:
        logger.debug("Standard form LP infeasible (phase one value %s).", infeasibility)
        return StandardFormResult(status=LpStatus.INFEASIBLE)

    tableau.drive_out_artificials()

    real_costs = [Fraction(c) for c in costs] + [Fraction(0)] * m
    status = tableau.run(real_costs, allow_artificial=False)

    if status == LpStatus.UNBOUNDED:
        logger.debug("Standard form LP unbounded.")
        return StandardFormResult(status=LpStatus.UNBOUNDED)

    weights = [Fraction(0)] * n_real
    for i, b in enumerate(tableau.basis):
        if not tableau.is_artificial(b):
            weights[b] = tableau.values[i]

    pi = tableau.multipliers(real_costs)
    value = sum((Fraction(c) * w for c, w in zip(costs, weights)), Fraction(0))

    return StandardFormResult(
        status=LpStatus.OPTIMAL,
        value=value,
        weights=tuple(weights),
        multipliers=tuple(p * s for p, s in zip(pi, signs)),
    )


def lp_solve(
    objective: Sequence[Number],
    system: "InequalitySystem",
    sense: Literal["min", "max"] = "max",
) -> LpResult:
    """Optimise a linear objective over {p : A p <= b} exactly.

    The problem is solved through its dual ``min b·y, Aᵀy = c, y >= 0``: an
    optimal dual basis gives the primal point as its multipliers, an unbounded
    dual means an empty primal, and an infeasible dual is split into the
    infeasible and unbounded primal cases with a zero-objective run.

    Args:
        objective (Sequence[Number]): the vector c
        system (InequalitySystem): the rows of A p <= b
        sense (str): "max" (default) or "min"

    Returns:
        LpResult: status, optimal value and an optimal point.
    """

    if len(objective) != system.dim:
        raise DimensionMismatchError(
            f"Objective has length {len(objective)}, system has dimension {system.dim}"
        )

    c = [Fraction(v) for v in objective]
    if sense == "min":
        c = [-v for v in c]

    result = _solve_by_dual(c, system)

    if result.is_optimal and sense == "min":
        return LpResult(status=result.status, value=-result.value, point=result.point)

    return result


def _solve_by_dual(c: List[Fraction], system: "InequalitySystem") -> LpResult:
    n = system.dim
    columns = [row.coeffs for row in system.rows]
    costs = [row.rhs for row in system.rows]

    if not columns:
        if all(v == 0 for v in c):
            return LpResult(status=LpStatus.OPTIMAL, value=Fraction(0), point=(Fraction(0),) * n)
        return LpResult(status=LpStatus.UNBOUNDED)

    dual = solve_standard_form(columns, costs, c)

    if dual.status == LpStatus.OPTIMAL:
        point: QVector = tuple(dual.multipliers)
        value = dot(c, point)
        logger.debug("LP optimal with value %s.", value)
        return LpResult(status=LpStatus.OPTIMAL, value=value, point=point)

    if dual.status == LpStatus.UNBOUNDED:
        return LpResult(status=LpStatus.INFEASIBLE)

    # dual infeasible: the primal is either empty or unbounded
    farkas = solve_standard_form(columns, costs, [Fraction(0)] * n)
    if farkas.status == LpStatus.UNBOUNDED:
        return LpResult(status=LpStatus.INFEASIBLE)

    return LpResult(status=LpStatus.UNBOUNDED)
