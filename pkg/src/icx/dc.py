"""Discrete DC duality: inf {g(x) - h(x)} against inf {h•(p) - g•(p)} for integrally convex h."""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import model_validator
from pydantic_core import PydanticCustomError

from .checker import is_integrally_convex_function
from .commonmodel import CommonModel
from .conjugacy import conjugate_values, integral_conjugate, separating_direction
from .errors import EmptyIntersectionError, NotIntegrallyConvexError, PropertyViolationError
from .fm_subgradient import fm_integer_subgradient
from .rationals import ExtendedValue, ZPoint
from .utils import box_points, inner, parallel_map
from .zfunction import ZFunction

logger = logging.getLogger(__name__)


class DcInstance(CommonModel):
    g: ZFunction
    h: ZFunction

    @model_validator(mode="after")
    def check_dimensions(self) -> "DcInstance":
        if self.g.dim != self.h.dim:
            raise PydanticCustomError(
                "dc_dimension", "g has dimension {g}, h has dimension {h}", {"g": self.g.dim, "h": self.h.dim}
            )
        return self

    @property
    def dim(self) -> int:
        return self.g.dim


class DcReport(CommonModel):
    primal: ExtendedValue
    dual: ExtendedValue
    primal_argmin: ZPoint
    dual_argmin: Optional[ZPoint] = None
    equal: bool
    # integer subgradient of h at primal_argmin; attains the dual
    certificate: Optional[ZPoint] = None
    # set when dom g leaves dom h: both sides are -inf along this direction
    separating_direction: Optional[ZPoint] = None
    candidates: int = 0


def _dual_values(instance: DcInstance, candidates: Sequence[ZPoint]) -> np.ndarray:
    ps = np.array(candidates, dtype=np.int64).reshape(len(candidates), instance.dim)
    return conjugate_values(instance.h, ps) - conjugate_values(instance.g, ps)


def dual_candidates(instance: DcInstance, radius: int = 1, threads: Optional[int] = None) -> List[ZPoint]:
    """FM subgradients of h at every point of dom h plus the box [-radius, radius]^n, sorted."""

    h = instance.h
    subgradients = parallel_map(lambda x: fm_integer_subgradient(h, x).p, list(h.domain_points), threads)
    box = box_points((-radius,) * instance.dim, (radius,) * instance.dim)
    return sorted(set(subgradients) | set(box))


def _min_with_argmin(points: Sequence[ZPoint], values: Sequence[int]) -> Tuple[int, ZPoint]:
    best = min(range(len(points)), key=lambda k: (values[k], points[k]))
    return int(values[best]), points[best]


def toland_singer(
    instance: DcInstance, check_ic: bool = True, threads: Optional[int] = None
) -> DcReport:
    """Evaluate both sides of the Toland–Singer identity and certify that they agree.

    The primal side is exhausted over dom g. The dual side is minimized over
    the FM subgradients of h together with the box [-1, 1]^n; it is then
    checked to stay put on [-2, 2]^n, and the subgradient of h at the primal
    minimizer is checked to attain it.

    Raises:
        NotIntegrallyConvexError: h is not integrally convex.
        EmptyIntersectionError: dom g and dom h do not meet.
        PropertyViolationError: a certificate check fails.
    """

    g, h = instance.g, instance.h

    if check_ic:
        verdict = is_integrally_convex_function(h, threads)
        if not verdict.is_ic:
            raise NotIntegrallyConvexError("h must be integrally convex", detail=verdict)

    common = [x for x in g.domain_points if h.in_domain(x)]
    if not common:
        raise EmptyIntersectionError("dom g and dom h are disjoint")

    outside = [x for x in g.domain_points if not h.in_domain(x)]
    if outside:
        x0 = outside[0]
        direction = separating_direction(h, x0)
        if direction is None:
            # dom h is hole-free, so points of dom g outside it are separable
            raise PropertyViolationError("separation of dom h", x0, None, "no separating direction found")

        logger.info("dom g leaves dom h at %s; both sides are -inf.", x0)
        return DcReport(
            primal=ExtendedValue.minus_infinity(),
            dual=ExtendedValue.minus_infinity(),
            primal_argmin=x0,
            equal=True,
            separating_direction=direction,
        )

    primal, primal_argmin = _min_with_argmin(common, [g.table[x] - h.table[x] for x in common])

    candidates = dual_candidates(instance, radius=1, threads=threads)
    dual, dual_argmin = _min_with_argmin(candidates, _dual_values(instance, candidates).tolist())
    logger.debug("Dual minimum %d over %d candidates.", dual, len(candidates))

    wider = sorted(set(candidates) | set(box_points((-2,) * instance.dim, (2,) * instance.dim)))
    wider_dual, _ = _min_with_argmin(wider, _dual_values(instance, wider).tolist())
    if wider_dual != dual:
        raise PropertyViolationError(
            "dual stability", primal_argmin, dual_argmin, f"dual drops from {dual} to {wider_dual} on [-2, 2]^n"
        )

    p_star = fm_integer_subgradient(h, primal_argmin).p
    h_conj = integral_conjugate(h, p_star)
    if h_conj != inner(p_star, primal_argmin) - h.table[primal_argmin]:
        raise PropertyViolationError("conjugate-subgradient identity", primal_argmin, p_star)
    if h_conj - integral_conjugate(g, p_star) != primal:
        raise PropertyViolationError("subgradient attains the dual", primal_argmin, p_star)

    report = DcReport(
        primal=ExtendedValue.finite(primal),
        dual=ExtendedValue.finite(dual),
        primal_argmin=primal_argmin,
        dual_argmin=dual_argmin,
        equal=primal == dual,
        certificate=p_star,
        candidates=len(candidates),
    )
    logger.info("Toland-Singer: primal %s, dual %s.", report.primal, report.dual)
    return report
