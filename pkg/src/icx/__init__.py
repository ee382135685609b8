# flake8: noqa

from .checker import IcVerdict, is_integrally_convex_function, is_integrally_convex_set, local_search_minimize
from .config import IcxConfig, get_config, init_icx
from .conjugacy import (
    biconjugate_report,
    integral_biconjugate,
    integral_conjugate,
    integral_subdifferential_nonempty,
)
from .dc import DcInstance, DcReport, toland_singer
from .extension import integral_neighborhood, local_convex_extension
from .fm_subgradient import build_local_system, fm_bounded_vertex, fm_integer_subgradient
from .instance_format import parse_instance, read_instance, write_instance
from .instances import CorpusEntry, corpus, verify_entry
from .rationals import ExtendedValue
from .zfunction import ZFunction, ZSet, indicator

__all__ = [
    # data
    "ZFunction",
    "ZSet",
    "ExtendedValue",
    "indicator",
    # configuration
    "IcxConfig",
    "init_icx",
    "get_config",
    # instance files
    "parse_instance",
    "read_instance",
    "write_instance",
    # recognition
    "integral_neighborhood",
    "local_convex_extension",
    "IcVerdict",
    "is_integrally_convex_set",
    "is_integrally_convex_function",
    "local_search_minimize",
    # conjugacy
    "integral_conjugate",
    "integral_biconjugate",
    "biconjugate_report",
    "integral_subdifferential_nonempty",
    # subgradients
    "build_local_system",
    "fm_integer_subgradient",
    "fm_bounded_vertex",
    # dc
    "DcInstance",
    "DcReport",
    "toland_singer",
    # corpus
    "CorpusEntry",
    "corpus",
    "verify_entry",
]
