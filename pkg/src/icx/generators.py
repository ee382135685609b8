"""Seeded generators of integrally convex functions for property testing.

Every generator re-validates its output with the checker; the checker is the
source of truth for membership, not the construction.
"""

from __future__ import annotations

import logging
from typing import List, Literal, Optional, Sequence

import numpy as np

from .checker import is_integrally_convex_function
from .config import get_config
from .errors import GenerationError
from .utils import box_points
from .zfunction import ZFunction

logger = logging.getLogger(__name__)

GeneratorKind = Literal["separable", "lnat", "random"]


def _check_box(n: int, lower: Sequence[int], upper: Sequence[int]) -> None:
    if n < 1:
        raise ValueError(f"Dimension must be positive, got {n}")
    if len(lower) != n or len(upper) != n:
        raise ValueError(f"Box bounds must have {n} coordinates")
    if any(lo > hi for lo, hi in zip(lower, upper)):
        raise ValueError(f"Empty box [{tuple(lower)}, {tuple(upper)}]")


def is_convex_sequence(values: Sequence[int]) -> bool:
    return all(values[k - 1] - 2 * values[k] + values[k + 1] >= 0 for k in range(1, len(values) - 1))


def random_convex_sequence(length: int, rng: np.random.Generator) -> List[int]:
    """Integer sequence with nonnegative second differences."""

    slope = int(rng.integers(-3, 4))
    values = [int(rng.integers(-2, 3))]
    for _ in range(length - 1):
        values.append(values[-1] + slope)
        slope += int(rng.integers(0, 3))
    return values


def _validated(f: ZFunction, generator: str) -> ZFunction:
    verdict = is_integrally_convex_function(f)
    if not verdict.is_ic:
        raise GenerationError(f"{generator} produced a function the checker rejects: {verdict.witness}")
    return f


def _sequences(
    n: int,
    lower: Sequence[int],
    upper: Sequence[int],
    sequences: Optional[Sequence[Sequence[int]]],
    rng: np.random.Generator,
) -> List[List[int]]:
    if sequences is None:
        return [random_convex_sequence(hi - lo + 1, rng) for lo, hi in zip(lower, upper)]

    if len(sequences) != n:
        raise ValueError(f"Expected {n} sequences, got {len(sequences)}")

    checked = []
    for i, (seq, lo, hi) in enumerate(zip(sequences, lower, upper)):
        seq = [int(v) for v in seq]
        if len(seq) != hi - lo + 1:
            raise ValueError(f"Sequence {i + 1} has {len(seq)} values, coordinate range has {hi - lo + 1}")
        if not is_convex_sequence(seq):
            raise ValueError(f"Sequence {i + 1} is not convex: {seq}")
        checked.append(seq)
    return checked


def gen_separable(
    n: int,
    lower: Sequence[int],
    upper: Sequence[int],
    sequences: Optional[Sequence[Sequence[int]]] = None,
    seed: Optional[int] = None,
) -> ZFunction:
    """f(x) = sum of phi_i(x_i) over the box, phi_i given as value lists from lower_i to upper_i.

    Raises:
        ValueError: a given sequence is not convex or has the wrong length.
    """

    _check_box(n, lower, upper)
    rng = np.random.default_rng(seed)
    phis = _sequences(n, lower, upper, sequences, rng)

    table = {
        x: sum(phi[x_i - lo] for phi, x_i, lo in zip(phis, x, lower)) for x in box_points(lower, upper)
    }
    return _validated(ZFunction(dim=n, table=table), "gen_separable")


def gen_lnat_style(
    n: int,
    lower: Sequence[int],
    upper: Sequence[int],
    weights: Optional[Sequence[Sequence[int]]] = None,
    sequences: Optional[Sequence[Sequence[int]]] = None,
    seed: Optional[int] = None,
) -> ZFunction:
    """f(x) = sum over i < j of c_ij |x_i - x_j| plus a separable convex part.

    `weights` is an n x n matrix read above the diagonal; without it, weights
    are drawn from {0, 1, 2}. Without `sequences` the separable part is random.

    Raises:
        ValueError: a negative weight or a non-convex sequence.
        GenerationError: the checker rejects the result.
    """

    _check_box(n, lower, upper)
    rng = np.random.default_rng(seed)

    if weights is None:
        c = rng.integers(0, 3, size=(n, n))
    else:
        c = np.array(weights, dtype=np.int64)
        if c.shape != (n, n):
            raise ValueError(f"Weights must be {n} x {n}, got {c.shape}")
    if np.any(np.triu(c, k=1) < 0):
        raise ValueError("Pairwise weights must be nonnegative")

    phis = _sequences(n, lower, upper, sequences, rng)

    table = {}
    for x in box_points(lower, upper):
        pairwise = sum(int(c[i, j]) * abs(x[i] - x[j]) for i in range(n) for j in range(i + 1, n))
        table[x] = pairwise + sum(phi[x_i - lo] for phi, x_i, lo in zip(phis, x, lower))

    return _validated(ZFunction(dim=n, table=table), "gen_lnat_style")


def gen_random_ic(
    n: int,
    lower: Sequence[int],
    upper: Sequence[int],
    value_range: int = 4,
    seed: Optional[int] = None,
    max_attempts: Optional[int] = None,
) -> ZFunction:
    """A random integrally convex function by rejection sampling.

    Inside a unit cube the domain is a random nonempty subset with random
    values, which is always integrally convex. On wider boxes a random convex
    separable base gets integer noise; the noise amplitude shrinks with each
    rejected attempt until the checker accepts.

    Raises:
        GenerationError: no sample was accepted within `max_attempts`.
    """

    _check_box(n, lower, upper)
    if n > 4 or any(hi - lo > 4 for lo, hi in zip(lower, upper)):
        raise ValueError("gen_random_ic handles n <= 4 and box width <= 4")

    if max_attempts is None:
        max_attempts = get_config().max_generator_attempts

    rng = np.random.default_rng(seed)
    points = list(box_points(lower, upper))

    if all(hi - lo <= 1 for lo, hi in zip(lower, upper)):
        mask = rng.random(len(points)) < 0.7
        mask[int(rng.integers(0, len(points)))] = True
        values = rng.integers(0, value_range + 1, size=len(points))
        table = {x: int(v) for x, v, keep in zip(points, values, mask) if keep}
        logger.info("gen_random_ic accepted on attempt 1 (unit cube).")
        return _validated(ZFunction(dim=n, table=table), "gen_random_ic")

    phis = [random_convex_sequence(hi - lo + 1, rng) for lo, hi in zip(lower, upper)]
    base = np.array([sum(phi[x_i - lo] for phi, x_i, lo in zip(phis, x, lower)) for x in points], dtype=np.int64)

    for attempt in range(1, max_attempts + 1):
        amplitude = max(value_range - (attempt - 1), 0)
        noise = rng.integers(0, amplitude + 1, size=len(points))
        f = ZFunction(dim=n, table={x: int(v) for x, v in zip(points, base + noise)})

        if is_integrally_convex_function(f).is_ic:
            logger.info("gen_random_ic accepted on attempt %d (acceptance rate %.3f).", attempt, 1 / attempt)
            return f

    logger.warning("gen_random_ic gave up after %d attempts.", max_attempts)
    raise GenerationError(f"No integrally convex sample in {max_attempts} attempts")


def generate_batch(
    kind: GeneratorKind,
    count: int,
    n: int,
    width: int = 2,
    seed: int = 0,
) -> List[ZFunction]:
    """`count` generated functions on [0, width]^n, seeded seed, seed + 1, ..."""

    lower, upper = (0,) * n, (width,) * n
    batch = []
    for k in range(count):
        if kind == "separable":
            batch.append(gen_separable(n, lower, upper, seed=seed + k))
        elif kind == "lnat":
            batch.append(gen_lnat_style(n, lower, upper, seed=seed + k))
        else:
            batch.append(gen_random_ic(n, lower, upper, seed=seed + k))
    return batch
