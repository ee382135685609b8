from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple, TypeVar

from .config import get_config
from .rationals import Number, QVector, ZPoint

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def box_points(lower: Sequence[int], upper: Sequence[int]) -> Iterator[ZPoint]:
    """Integer points of the box [lower, upper] in lexicographic order."""

    if len(lower) != len(upper):
        raise ValueError("Box bounds have different lengths")
    if any(lo > hi for lo, hi in zip(lower, upper)):
        raise ValueError(f"Empty box [{tuple(lower)}, {tuple(upper)}]")

    return product(*(range(lo, hi + 1) for lo, hi in zip(lower, upper)))


def unit_moves(n: int) -> List[ZPoint]:
    """{-1, 0, +1}^n without the zero vector, lexicographic."""

    return [d for d in product((-1, 0, 1), repeat=n) if any(d)]


def add_points(x: Sequence[int], y: Sequence[int]) -> ZPoint:
    return tuple(a + b for a, b in zip(x, y))


def sub_points(x: Sequence[int], y: Sequence[int]) -> ZPoint:
    return tuple(a - b for a, b in zip(x, y))


def midpoint(x: Sequence[Number], y: Sequence[Number]) -> QVector:
    return tuple((Fraction(a) + Fraction(b)) / 2 for a, b in zip(x, y))


def linf_distance(x: Sequence[Number], y: Sequence[Number]) -> Number:
    return max((abs(a - b) for a, b in zip(x, y)), default=0)


def inner(p: Sequence[Number], x: Sequence[Number]) -> Number:
    return sum((a * b for a, b in zip(p, x)), 0)


def bounding_box(points: Iterable[Sequence[int]]) -> Tuple[ZPoint, ZPoint]:
    points = list(points)
    if not points:
        raise ValueError("Bounding box of no points")
    n = len(points[0])
    lower = tuple(min(p[j] for p in points) for j in range(n))
    upper = tuple(max(p[j] for p in points) for j in range(n))
    return lower, upper


def parallel_map(fn: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> List[R]:
    """Map `fn` over `items`, fanning out to a thread pool when more than one thread is configured.

    Results keep the order of `items`.
    """

    if threads is None:
        threads = get_config().threads

    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    logger.debug("Mapping %d items over %d threads.", len(items), threads)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(fn, items))
