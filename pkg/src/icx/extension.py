from __future__ import annotations

import logging
from itertools import product
from math import ceil, floor
from typing import Optional, Sequence, Tuple

from .commonmodel import CommonModel
from .errors import DimensionMismatchError
from .geometry.hull import convex_combination
from .rationals import ExtendedValue, Number, Rational, ZPoint, as_qvector, is_integral
from .zfunction import ZFunction

logger = logging.getLogger(__name__)


class NeighborhoodResult(CommonModel):
    center: Tuple[Rational, ...]
    points: Tuple[ZPoint, ...]


class ExtensionResult(CommonModel):
    value: ExtendedValue
    # nonzero convex weights over N(x) ∩ dom f attaining `value`
    coefficients: Optional[Tuple[Tuple[ZPoint, Rational], ...]] = None


def integral_neighborhood(x: Sequence[Number]) -> NeighborhoodResult:
    """All z ∈ Z^n with |x_i - z_i| < 1 for every i, in lexicographic order."""

    center = as_qvector(x)
    choices = []
    for c in center:
        if c.denominator == 1:
            choices.append((int(c),))
        else:
            choices.append((floor(c), ceil(c)))

    return NeighborhoodResult(center=center, points=tuple(product(*choices)))


def local_convex_extension(f: ZFunction, x: Sequence[Number]) -> ExtensionResult:
    """f̃(x): the cheapest convex combination of f over N(x) ∩ dom f that reproduces x."""

    if len(x) != f.dim:
        raise DimensionMismatchError(f"Point has {len(x)} coordinates, function has dimension {f.dim}")

    center = as_qvector(x)

    if is_integral(center):
        z = tuple(int(c) for c in center)
        value = f.get(z)
        if value is None:
            return ExtensionResult(value=ExtendedValue.plus_infinity())
        return ExtensionResult(value=ExtendedValue.finite(value), coefficients=((z, 1),))

    points = [z for z in integral_neighborhood(center).points if f.in_domain(z)]
    if not points:
        return ExtensionResult(value=ExtendedValue.plus_infinity())

    combination = convex_combination(center, points, [f.require(z) for z in points])
    if not combination.feasible:
        return ExtensionResult(value=ExtendedValue.plus_infinity())

    coefficients = tuple((z, c) for z, c in zip(points, combination.coefficients) if c != 0)

    return ExtensionResult(value=ExtendedValue.finite(combination.value), coefficients=coefficients)
