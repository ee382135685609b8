from __future__ import annotations

from fractions import Fraction
from typing import Any, Literal, Optional, Sequence, Tuple, Union

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    PlainSerializer,
    TypeAdapter,
)
from pydantic_core import PydanticCustomError
from typing_extensions import Annotated

Number = Union[int, Fraction]

# integer points of Z^n and exact points of Q^n
ZPoint = Tuple[int, ...]
QVector = Tuple[Fraction, ...]


def to_fraction(value: Any) -> Fraction:
    """Coerce ints, Fractions and canonical strings like '-1/2' to a Fraction.

    Floats are refused: nothing in this package is allowed to round.
    """

    if isinstance(value, bool):
        raise PydanticCustomError(
            "rational_type", "Booleans are not rational numbers: {value}", {"value": value}
        )

    if isinstance(value, Fraction):
        return value

    if isinstance(value, int):
        return Fraction(value)

    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PydanticCustomError(
                "rational_parsing",
                "Not a rational number: {value}",
                {"value": value},
            ) from exc

    raise PydanticCustomError(
        "rational_type",
        "Expected int, Fraction or 'num/den' string, got {type_name}",
        {"type_name": type(value).__name__},
    )


def format_rational(value: Number) -> str:
    """Canonical rendering: '3', '-1/2' (never '3/1')."""

    return str(Fraction(value))


def format_vector(vector: Sequence[Number]) -> str:
    return "(" + ", ".join(format_rational(v) for v in vector) + ")"


def parse_vector(text: str) -> QVector:
    """Parse space- or comma-separated rationals, e.g. '1 1/2 0' or '(1, 1/2, 0)'."""

    cleaned = text.replace("(", " ").replace(")", " ").replace(",", " ")
    return tuple(rational_adapter.validate_python(tok) for tok in cleaned.split())


Rational = Annotated[
    Fraction,
    BeforeValidator(to_fraction),
    PlainSerializer(format_rational, return_type=str),
]

_adapter_config = ConfigDict(arbitrary_types_allowed=True)

# validate a single token before it goes anywhere near the arithmetic
rational_adapter = TypeAdapter(Rational, config=_adapter_config)


def as_qvector(values: Sequence[Any]) -> QVector:
    return tuple(to_fraction(v) for v in values)


def is_integral(vector: Sequence[Number]) -> bool:
    return all(Fraction(v).denominator == 1 for v in vector)


def as_zpoint(vector: Sequence[Number]) -> ZPoint:
    if not is_integral(vector):
        raise ValueError(f"Not an integer point: {format_vector(vector)}")
    return tuple(int(Fraction(v)) for v in vector)


_Kind = Literal["finite", "+inf", "-inf"]


class ExtendedValue(BaseModel):
    """A value in Q ∪ {+inf, -inf}."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, extra="forbid")

    kind: _Kind = "finite"
    value: Optional[Rational] = None

    @classmethod
    def finite(cls, value: Any) -> "ExtendedValue":
        return cls(kind="finite", value=to_fraction(value))

    @classmethod
    def plus_infinity(cls) -> "ExtendedValue":
        return cls(kind="+inf")

    @classmethod
    def minus_infinity(cls) -> "ExtendedValue":
        return cls(kind="-inf")

    @classmethod
    def coerce(cls, other: Any) -> "ExtendedValue":
        if isinstance(other, ExtendedValue):
            return other
        return cls.finite(other)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def require_finite(self) -> Fraction:
        if self.value is None:
            raise ValueError(f"Expected a finite value, got {self}")
        return self.value

    def _key(self) -> Tuple[int, Fraction]:
        if self.kind == "-inf":
            return (-1, Fraction(0))
        if self.kind == "+inf":
            return (1, Fraction(0))
        return (0, self.require_finite())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_finite and self.value == other
        if isinstance(other, ExtendedValue):
            return self._key() == other._key()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._key())

    def __lt__(self, other: Any) -> bool:
        return self._key() < ExtendedValue.coerce(other)._key()

    def __le__(self, other: Any) -> bool:
        return self._key() <= ExtendedValue.coerce(other)._key()

    def __gt__(self, other: Any) -> bool:
        return self._key() > ExtendedValue.coerce(other)._key()

    def __ge__(self, other: Any) -> bool:
        return self._key() >= ExtendedValue.coerce(other)._key()

    def __neg__(self) -> "ExtendedValue":
        if self.kind == "+inf":
            return ExtendedValue.minus_infinity()
        if self.kind == "-inf":
            return ExtendedValue.plus_infinity()
        return ExtendedValue.finite(-self.require_finite())

    def __add__(self, other: Any) -> "ExtendedValue":
        rhs = ExtendedValue.coerce(other)
        if {self.kind, rhs.kind} == {"+inf", "-inf"}:
            raise ValueError("+inf + -inf is undefined")
        if self.kind != "finite":
            return self
        if rhs.kind != "finite":
            return rhs
        return ExtendedValue.finite(self.require_finite() + rhs.require_finite())

    __radd__ = __add__

    def __sub__(self, other: Any) -> "ExtendedValue":
        return self + (-ExtendedValue.coerce(other))

    def __str__(self) -> str:
        if self.kind != "finite":
            return self.kind
        return format_rational(self.require_finite())

    def __repr__(self) -> str:
        return f"ExtendedValue({self})"
