from __future__ import annotations

import logging
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import field_serializer, model_validator
from pydantic_core import PydanticCustomError

from .commonmodel import CommonModel
from .errors import DimensionMismatchError, NotInDomainError
from .rationals import ExtendedValue, ZPoint
from .utils import add_points, bounding_box, inner, sub_points

logger = logging.getLogger(__name__)


def _point_dimension_error(point: Any, dim: int) -> PydanticCustomError:
    return PydanticCustomError(
        "point_dimension",
        "Point {point} does not have {dim} coordinates",
        {"point": str(point), "dim": dim},
    )


class ZSet(CommonModel):
    """A finite nonempty subset of Z^dim, stored sorted."""

    dim: int
    points: Tuple[ZPoint, ...]

    @model_validator(mode="before")
    @classmethod
    def validate_points(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data

        points = [tuple(p) for p in data.get("points", ())]
        dim = data.get("dim")

        if not points:
            raise PydanticCustomError("empty_set", "A ZSet needs at least one point", {})

        if dim is None:
            dim = len(points[0])

        for point in points:
            if len(point) != dim:
                raise _point_dimension_error(point, dim)

        if len(set(points)) != len(points):
            duplicates = sorted({p for p in points if points.count(p) > 1})
            raise PydanticCustomError(
                "duplicate_point", "Duplicate points: {points}", {"points": str(duplicates)}
            )

        return {**data, "dim": dim, "points": tuple(sorted(points))}

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], dim: Optional[int] = None) -> "ZSet":
        return cls(dim=dim, points=tuple(tuple(p) for p in points))

    @cached_property
    def lookup(self) -> FrozenSet[ZPoint]:
        return frozenset(self.points)

    def __contains__(self, point: object) -> bool:
        return tuple(point) in self.lookup  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self.points)

    def bounding_box(self) -> Tuple[ZPoint, ZPoint]:
        return bounding_box(self.points)

    def translated(self, shift: Sequence[int]) -> "ZSet":
        return ZSet(dim=self.dim, points=tuple(add_points(p, shift) for p in self.points))


class ZFunction(CommonModel):
    """An integer-valued function on Z^dim; points missing from `table` have value +inf."""

    dim: int
    table: Dict[ZPoint, int]

    @model_validator(mode="before")
    @classmethod
    def validate_table(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data

        table = data.get("table") or {}
        if not table:
            raise PydanticCustomError("empty_domain", "A ZFunction needs a nonempty effective domain", {})

        dim = data.get("dim")
        if dim is None:
            dim = len(next(iter(table)))

        for point, value in table.items():
            if len(point) != dim:
                raise _point_dimension_error(point, dim)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise PydanticCustomError(
                    "finite_integer_value",
                    "Value at {point} must be a finite integer, got {value}",
                    {"point": str(point), "value": repr(value)},
                )

        return {**data, "dim": dim, "table": {tuple(k): int(v) for k, v in table.items()}}

    @field_serializer("table")
    def serialize_table(self, table: Dict[ZPoint, int]) -> List[dict]:
        return [{"x": list(point), "value": table[point]} for point in sorted(table)]

    @classmethod
    def from_items(cls, items: Iterable[Tuple[Sequence[int], int]], dim: Optional[int] = None) -> "ZFunction":
        table: Dict[ZPoint, int] = {}
        for point, value in items:
            point = tuple(point)
            if point in table:
                raise ValueError(f"Duplicate point {point}")
            table[point] = value
        return cls(dim=dim, table=table)

    def _check_point(self, x: Sequence[int]) -> ZPoint:
        if len(x) != self.dim:
            raise DimensionMismatchError(f"Point {tuple(x)} does not have {self.dim} coordinates")
        return tuple(x)

    def in_domain(self, x: Sequence[int]) -> bool:
        return self._check_point(x) in self.table

    def get(self, x: Sequence[int]) -> Optional[int]:
        """f(x), or None when x is outside the effective domain."""

        return self.table.get(self._check_point(x))

    def value(self, x: Sequence[int]) -> ExtendedValue:
        v = self.get(x)
        if v is None:
            return ExtendedValue.plus_infinity()
        return ExtendedValue.finite(v)

    def require(self, x: Sequence[int]) -> int:
        v = self.get(x)
        if v is None:
            raise NotInDomainError(f"{tuple(x)} is not in the effective domain")
        return v

    @cached_property
    def domain_points(self) -> Tuple[ZPoint, ...]:
        return tuple(sorted(self.table))

    @cached_property
    def domain(self) -> ZSet:
        return ZSet(dim=self.dim, points=self.domain_points)

    @property
    def min_value(self) -> int:
        return min(self.table.values())

    @property
    def max_value(self) -> int:
        return max(self.table.values())

    def items(self) -> List[Tuple[ZPoint, int]]:
        return [(x, self.table[x]) for x in self.domain_points]

    def translated(self, x: Sequence[int]) -> "ZFunction":
        """g(y) = f(y + x) - f(x)."""

        base = self.require(x)
        return ZFunction(dim=self.dim, table={sub_points(y, x): v - base for y, v in self.table.items()})

    def plus_linear(self, c: Sequence[int]) -> "ZFunction":
        """f(y) + <c, y>."""

        if len(c) != self.dim:
            raise DimensionMismatchError(f"Linear term {tuple(c)} does not have {self.dim} coordinates")
        return ZFunction(dim=self.dim, table={y: v + inner(c, y) for y, v in self.table.items()})

    def to_dataframe(self) -> pd.DataFrame:
        """One row per domain point: columns x1..xn and value."""

        columns = [f"x{j + 1}" for j in range(self.dim)]
        rows = [list(x) + [v] for x, v in self.items()]
        return pd.DataFrame(rows, columns=columns + ["value"])

    @classmethod
    def from_dataframe(cls, df: pd.DataFrame) -> "ZFunction":
        """Build a function from x1..xn and value columns; rows with a missing value are +inf."""

        if df.empty is True:
            raise ValueError("Cannot build a function from an empty dataframe")

        coordinate_columns = sorted(
            (c for c in df.columns if c.startswith("x") and c[1:].isdigit()), key=lambda c: int(c[1:])
        )
        if not coordinate_columns or "value" not in df.columns:
            raise ValueError("Expected columns x1..xn and value")

        input_df = df.replace([np.nan], None).copy()
        input_df = input_df[input_df["value"].notna()]

        table = {}
        for record in input_df.to_dict(orient="records"):
            point = tuple(_exact_int(record[c]) for c in coordinate_columns)
            if point in table:
                raise ValueError(f"Duplicate point {point}")
            table[point] = _exact_int(record["value"])

        return cls(dim=len(coordinate_columns), table=table)


def _exact_int(value: Any) -> int:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return int(value)
    if isinstance(value, (float, np.floating)) and float(value).is_integer():
        return int(value)
    raise ValueError(f"Expected an integer, got {value!r}")


def translate_to_origin(f: ZFunction, x: Sequence[int]) -> ZFunction:
    """Shift x to the origin and f(x) to zero."""

    return f.translated(x)


def indicator(S: ZSet) -> ZFunction:
    return ZFunction(dim=S.dim, table={p: 0 for p in S.points})
