# flake8: noqa

from .fourier_motzkin import IntegerFeasibility, fm_eliminate_general, integer_feasible_point
from .hull import Polytope, convex_combination, enumerate_vertices, hull_inequalities, hull_membership
from .simplex import LpResult, LpStatus, lp_solve
from .systems import Inequality, InequalitySystem, systems_equivalent

__all__ = [
    "Inequality",
    "InequalitySystem",
    "systems_equivalent",
    "LpResult",
    "LpStatus",
    "lp_solve",
    "Polytope",
    "convex_combination",
    "enumerate_vertices",
    "hull_inequalities",
    "hull_membership",
    "IntegerFeasibility",
    "fm_eliminate_general",
    "integer_feasible_point",
]
