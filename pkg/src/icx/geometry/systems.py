from __future__ import annotations

import logging
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from pydantic import model_validator
from pydantic_core import PydanticCustomError

from ..commonmodel import CommonModel
from ..rationals import Number, Rational, format_rational
from .linalg import dot
from .simplex import LpStatus, lp_solve

logger = logging.getLogger(__name__)


class Inequality(NamedTuple):
    """One row ``coeffs · p <= rhs``."""

    coeffs: Tuple[Rational, ...]
    rhs: Rational

    @property
    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.coeffs) and self.rhs >= 0

    @property
    def is_contradiction(self) -> bool:
        return all(c == 0 for c in self.coeffs) and self.rhs < 0

    def slack(self, point: Sequence[Number]) -> Fraction:
        return Fraction(self.rhs) - dot(self.coeffs, point)

    def render(self, variable: str = "p") -> str:
        terms = []
        for j, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            coefficient = "" if magnitude == 1 else format_rational(magnitude)
            terms.append((sign, f"{coefficient}{variable}{j}"))

        if not terms:
            return f"0 <= {format_rational(self.rhs)}"

        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, term in terms[1:]:
            text += f" {sign} {term}"

        return f"{text} <= {format_rational(self.rhs)}"


def make_row(coeffs: Iterable[Number], rhs: Number) -> Inequality:
    return Inequality(tuple(Fraction(c) for c in coeffs), Fraction(rhs))


def normalize_row(row: Inequality) -> Inequality:
    """Scale a row by a positive factor so its coefficients are coprime integers.

    The right-hand side follows the same factor and may stay fractional.
    """

    coeffs = [Fraction(c) for c in row.coeffs]
    if all(c == 0 for c in coeffs):
        return row

    denominator = reduce(lcm, (c.denominator for c in coeffs), 1)
    integers = [int(c * denominator) for c in coeffs]
    divisor = reduce(gcd, (abs(v) for v in integers), 0)
    factor = Fraction(denominator, divisor)

    return Inequality(tuple(Fraction(v // divisor) for v in integers), Fraction(row.rhs) * factor)


class InequalitySystem(CommonModel):
    """The polyhedron {p : A p <= b} over Q^dim."""

    dim: int
    rows: Tuple[Inequality, ...] = ()

    @model_validator(mode="before")
    @classmethod
    def validate_row_lengths(cls, data: Any) -> Any:
        if isinstance(data, dict):
            dim = data.get("dim")
            for row in data.get("rows", ()):
                coeffs = row[0] if isinstance(row, (tuple, list)) else row.get("coeffs", ())
                if dim is not None and len(coeffs) != dim:
                    raise PydanticCustomError(
                        "row_dimension",
                        "Row {coeffs} does not have {dim} coefficients",
                        {"coeffs": str(coeffs), "dim": dim},
                    )
        return data

    @classmethod
    def from_rows(
        cls, rows: Iterable[Tuple[Iterable[Number], Number]], dim: Optional[int] = None
    ) -> "InequalitySystem":
        built = [make_row(coeffs, rhs) for coeffs, rhs in rows]
        if dim is None:
            if not built:
                raise ValueError("Cannot infer the dimension of an empty system")
            dim = len(built[0].coeffs)
        return cls(dim=dim, rows=tuple(built))

    @classmethod
    def box(cls, lower: Sequence[Number], upper: Sequence[Number]) -> "InequalitySystem":
        dim = len(lower)
        rows = []
        for j in range(dim):
            unit = [0] * dim
            unit[j] = 1
            rows.append((unit, upper[j]))
            rows.append(([-v for v in unit], -Fraction(lower[j])))
        return cls.from_rows(rows, dim)

    def __len__(self) -> int:
        return len(self.rows)

    def extended(self, rows: Iterable[Inequality]) -> "InequalitySystem":
        return InequalitySystem(dim=self.dim, rows=self.rows + tuple(rows))

    def satisfied_by(self, point: Sequence[Number]) -> bool:
        return all(row.slack(point) >= 0 for row in self.rows)

    def violated_rows(self, point: Sequence[Number]) -> List[Inequality]:
        return [row for row in self.rows if row.slack(point) < 0]

    def tight_rows(self, point: Sequence[Number]) -> List[Inequality]:
        return [row for row in self.rows if row.slack(point) == 0]

    @property
    def has_contradiction(self) -> bool:
        return any(row.is_contradiction for row in self.rows)

    def normalized(self) -> "InequalitySystem":
        """Coprime integer coefficients, trivial rows dropped, one row per direction.

        Rows sharing a coefficient vector keep the smallest right-hand side.
        """

        best: Dict[Tuple[Fraction, ...], Fraction] = {}
        for row in self.rows:
            if row.is_trivial:
                continue
            scaled = normalize_row(row)
            key = tuple(scaled.coeffs)
            if key not in best or scaled.rhs < best[key]:
                best[key] = scaled.rhs

        return InequalitySystem(dim=self.dim, rows=tuple(Inequality(k, v) for k, v in best.items()))

    def is_feasible(self) -> bool:
        return lp_solve([0] * self.dim, self).status != LpStatus.INFEASIBLE

    def is_bounded(self) -> bool:
        """True for a nonempty polyhedron with no recession direction."""

        for j in range(self.dim):
            for sign in (1, -1):
                objective = [0] * self.dim
                objective[j] = sign
                if lp_solve(objective, self).status != LpStatus.OPTIMAL:
                    return False
        return True

    def contains_system(self, other: "InequalitySystem") -> bool:
        """True when every point of `other` satisfies every row of this system."""

        if not other.is_feasible():
            return True

        for row in self.rows:
            result = lp_solve(row.coeffs, other)
            if result.status == LpStatus.UNBOUNDED:
                return False
            if result.is_optimal and result.value > row.rhs:
                return False
        return True

    def render(self, variable: str = "p") -> List[str]:
        return [row.render(variable) for row in self.rows]


def systems_equivalent(a: InequalitySystem, b: InequalitySystem) -> bool:
    """Mutual containment of two polyhedra, decided one LP per row."""

    if a.dim != b.dim:
        return False
    return a.contains_system(b) and b.contains_system(a)
