"""Command-line front end: ``icx <command> FILE [options]``.

Every command prints ``key: value`` lines (or JSON with ``--json``) and exits
with 0 (ok), 1 (violation) or 2 (error).
"""

from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from .checker import hull_report, is_integrally_convex_function, is_integrally_convex_set, local_search_minimize
from .config import init_icx
from .conjugacy import (
    biconjugate_report,
    conjugate_maximizers,
    conjugate_table,
    integral_conjugate,
    integral_subdifferential_nonempty,
)
from .dc import DcInstance, toland_singer
from .errors import (
    BiconjugateUnstableError,
    GenerationError,
    IntegerSearchLimitError,
    NotIntegrallyConvexError,
    PropertyViolationError,
)
from .fm_subgradient import fm_integer_subgradient
from .generators import generate_batch
from .instance_format import Instance, read_instance, write_instance
from .instances import corpus, verify_corpus
from .rationals import format_vector
from .reports import render_proof, render_result, render_trace
from .result import CommandResult
from .zfunction import ZFunction, ZSet, indicator

logger = logging.getLogger(__name__)

RUNTIME_ERRORS = (BiconjugateUnstableError, GenerationError, IntegerSearchLimitError)


def _as_function(instance: Instance) -> ZFunction:
    return indicator(instance) if isinstance(instance, ZSet) else instance


def _as_set(instance: Instance) -> ZSet:
    return instance if isinstance(instance, ZSet) else instance.domain


def _point(values: Optional[Sequence[int]], f: ZFunction, flag: str = "--at") -> tuple:
    if values is None:
        raise ValueError(f"{flag} is required")
    if len(values) != f.dim:
        raise ValueError(f"{flag} needs {f.dim} integers, got {len(values)}")
    return tuple(values)


def _order(values: Optional[Sequence[int]], dim: int) -> Optional[tuple]:
    """--order takes 1-based variable numbers."""

    if values is None:
        return None
    if sorted(values) != list(range(1, dim + 1)):
        raise ValueError(f"--order must be a permutation of 1..{dim}")
    return tuple(v - 1 for v in values)


def cmd_check(args: argparse.Namespace) -> CommandResult:
    instance = read_instance(args.file)
    kind = args.kind or ("set" if isinstance(instance, ZSet) else "fn")

    if kind == "set":
        verdict = is_integrally_convex_set(_as_set(instance), args.threads)
    else:
        verdict = is_integrally_convex_function(_as_function(instance), args.threads)

    payload = {"kind": kind, "dim": str(instance.dim), "is_ic": str(verdict.is_ic).lower()}

    if verdict.is_ic:
        return CommandResult(command="check", status="ok", payload=payload)

    witness = verdict.witness
    payload["witness_kind"] = witness.kind
    payload["witness_point"] = format_vector(witness.point)
    if witness.pair is not None:
        payload["witness_pair"] = " ".join(format_vector(p) for p in witness.pair)
    if witness.extension_value is not None:
        payload["extension_value"] = str(witness.extension_value)
        payload["average"] = str(witness.average)
    if verdict.reason:
        payload["reason"] = verdict.reason

    return CommandResult(command="check", status="violation", payload=payload, witness=witness.icx_dump())


def cmd_subgrad(args: argparse.Namespace) -> CommandResult:
    f = _as_function(read_instance(args.file))
    x = _point(args.at, f)
    order = _order(args.order, f.dim)

    payload = {"x": format_vector(x)}
    sections: Dict[str, str] = {}

    try:
        certificate = fm_integer_subgradient(f, x, order)
    except NotIntegrallyConvexError as exc:
        logger.info("Fourier-Motzkin construction failed: %s", exc)
        payload["fourier_motzkin"] = f"failed ({exc})"
    else:
        payload.update(
            {"p": format_vector(certificate.p), "method": "fourier-motzkin", "verified_points": str(certificate.verified_rows)}
        )
        if args.trace:
            sections["trace"] = render_trace(certificate.trace)
        return CommandResult(command="subgrad", status="ok", payload=payload, sections=sections)

    verdict = integral_subdifferential_nonempty(f, x)
    if verdict.proof is not None and (args.trace or not verdict.nonempty):
        sections["proof"] = render_proof(verdict.proof)

    if verdict.nonempty:
        payload.update({"p": format_vector(verdict.certificate.p), "method": verdict.method})
        return CommandResult(command="subgrad", status="ok", payload=payload, sections=sections)

    payload["error"] = "integral subdifferential is empty"
    return CommandResult(
        command="subgrad", status="error", payload=payload, witness=verdict.proof.icx_dump(), sections=sections
    )


def _split_box(values: Sequence[int], dim: int) -> tuple:
    if len(values) != 2 * dim:
        raise ValueError(f"--box needs {2 * dim} integers: the lower corner then the upper corner")
    return tuple(values[:dim]), tuple(values[dim:])


def cmd_conj(args: argparse.Namespace) -> CommandResult:
    f = _as_function(read_instance(args.file))

    if args.box is not None:
        lower, upper = _split_box(args.box, f.dim)
        table = conjugate_table(f, lower, upper, args.threads)
        payload = {
            "box": f"{format_vector(lower)} {format_vector(upper)}",
            "points": str(len(table.table)),
            "min": str(table.min_value),
            "max": str(table.max_value),
        }
        if args.csv:
            table.to_dataframe().to_csv(args.csv, index=False)
            payload["csv"] = str(args.csv)
        return CommandResult(command="conj", status="ok", payload=payload)

    p = _point(args.at, f)
    payload = {
        "p": format_vector(p),
        "conjugate": str(integral_conjugate(f, p)),
        "maximizers": " ".join(format_vector(x) for x in conjugate_maximizers(f, p)),
    }
    return CommandResult(command="conj", status="ok", payload=payload)


def cmd_biconj(args: argparse.Namespace) -> CommandResult:
    f = _as_function(read_instance(args.file))
    x = _point(args.at, f)
    report = biconjugate_report(f, x)

    payload = {
        "x": format_vector(x),
        "biconjugate": str(report.value),
        "f": str(report.f_value),
        "method": report.method,
        "gap": str(report.value != report.f_value).lower(),
    }
    if report.subgradient is not None:
        payload["subgradient"] = format_vector(report.subgradient)
    if report.separating_direction is not None:
        payload["separating_direction"] = format_vector(report.separating_direction)
    if report.search_bound is not None:
        payload["search_bound"] = str(report.search_bound)
        payload["maximizer"] = format_vector(report.maximizer)

    return CommandResult(command="biconj", status="ok", payload=payload)


def cmd_dc(args: argparse.Namespace) -> CommandResult:
    g = _as_function(read_instance(args.g))
    h = _as_function(read_instance(args.h))
    report = toland_singer(DcInstance(g=g, h=h), threads=args.threads)

    payload = {
        "primal": str(report.primal),
        "dual": str(report.dual),
        "primal_argmin": format_vector(report.primal_argmin),
        "equal": str(report.equal).lower(),
    }
    if report.dual_argmin is not None:
        payload["dual_argmin"] = format_vector(report.dual_argmin)
    if report.certificate is not None:
        payload["certificate"] = format_vector(report.certificate)
    if report.separating_direction is not None:
        payload["separating_direction"] = format_vector(report.separating_direction)

    if report.equal:
        return CommandResult(command="dc", status="ok", payload=payload)
    return CommandResult(command="dc", status="violation", payload=payload, witness=report.icx_dump())


def cmd_hull(args: argparse.Namespace) -> CommandResult:
    S = _as_set(read_instance(args.file))
    report = hull_report(S)
    verdict = is_integrally_convex_set(S, args.threads)

    payload = {
        "vertices": " ".join(format_vector(v) for v in report.vertices),
        "vertices_integral": str(report.all_vertices_integral).lower(),
        "edge_directions": " ".join(format_vector(d) for d in report.edge_primitive_directions),
        "directions_in_pm1": str(report.directions_in_pm1).lower(),
        "hole_free": str(report.hole_free).lower(),
        "facets": str(report.facet_rows),
        "is_ic": str(verdict.is_ic).lower(),
    }
    return CommandResult(command="hull", status="ok", payload=payload)


def cmd_minimize(args: argparse.Namespace) -> CommandResult:
    f = _as_function(read_instance(args.file))
    start = _point(args.start, f, "--from") if args.start is not None else f.domain_points[0]
    result = local_search_minimize(f, start)

    payload = {
        "start": format_vector(result.start),
        "minimizer": format_vector(result.minimizer),
        "value": str(result.value),
        "steps": str(result.steps),
        "certified": str(result.certified).lower(),
    }
    return CommandResult(command="minimize", status="ok", payload=payload)


def cmd_gen(args: argparse.Namespace) -> CommandResult:
    f = generate_batch(args.family, 1, args.dim, width=args.width, seed=args.seed)[0]
    write_instance(f, args.out, comment=f"{args.family} n={args.dim} width={args.width} seed={args.seed}")

    payload = {"family": args.family, "out": str(args.out), "points": str(len(f.table))}
    return CommandResult(command="gen", status="ok", payload=payload)


def cmd_corpus_verify(args: argparse.Namespace) -> CommandResult:
    entries = corpus(Path(args.dir)) if args.dir else corpus()
    reports = verify_corpus(entries)

    payload = {r.name: "ok" if r.passed else "; ".join(r.failures) for r in reports}
    failing = [r.icx_dump() for r in reports if not r.passed]

    if failing:
        return CommandResult(command="corpus-verify", status="violation", payload=payload, witness={"failing": failing})
    return CommandResult(command="corpus-verify", status="ok", payload=payload)


COMMANDS: Dict[str, Callable[[argparse.Namespace], CommandResult]] = {
    "check": cmd_check,
    "subgrad": cmd_subgrad,
    "conj": cmd_conj,
    "biconj": cmd_biconj,
    "dc": cmd_dc,
    "hull": cmd_hull,
    "minimize": cmd_minimize,
    "gen": cmd_gen,
    "corpus-verify": cmd_corpus_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the result as JSON")
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: ICX_THREADS or 1)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    parser = argparse.ArgumentParser(prog="icx", description="Exact tools for integrally convex functions on Z^n.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide integral convexity")
    p.add_argument("file")
    p.add_argument("--kind", choices=["set", "fn"], default=None)

    p = sub.add_parser("subgrad", parents=[common], help="integer subgradient at a point")
    p.add_argument("file")
    p.add_argument("--at", type=int, nargs="+", required=True)
    p.add_argument("--trace", action="store_true", help="print the back-substitution table")
    p.add_argument("--order", type=int, nargs="+", default=None, help="elimination order, 1-based")

    p = sub.add_parser("conj", parents=[common], help="integral conjugate at p or on a box")
    p.add_argument("file")
    p.add_argument("--at", type=int, nargs="+", default=None)
    p.add_argument("--box", type=int, nargs="+", default=None, help="lower corner then upper corner")
    p.add_argument("--csv", default=None, help="write the box table as CSV")

    p = sub.add_parser("biconj", parents=[common], help="integral biconjugate at a point")
    p.add_argument("file")
    p.add_argument("--at", type=int, nargs="+", required=True)

    p = sub.add_parser("dc", parents=[common], help="Toland-Singer duality for g - h")
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)

    p = sub.add_parser("hull", parents=[common], help="convex hull properties of a set or domain")
    p.add_argument("file")

    p = sub.add_parser("minimize", parents=[common], help="local search with a global certificate")
    p.add_argument("file")
    p.add_argument("--from", dest="start", type=int, nargs="+", default=None)

    p = sub.add_parser("gen", parents=[common], help="write a generated integrally convex function")
    p.add_argument("family", choices=["separable", "lnat", "random"])
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--width", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("corpus-verify", parents=[common], help="re-check every bundled expectation")
    p.add_argument("--dir", default=None, help="corpus directory with manifest.yaml")

    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def execute(args: argparse.Namespace) -> CommandResult:
    """Run one parsed command, mapping failures onto error and violation results."""

    try:
        init_icx(**({"threads": args.threads} if args.threads else {}))
        return COMMANDS[args.command](args)
    except PropertyViolationError as exc:
        return CommandResult(
            command=args.command,
            status="violation",
            payload={"violation": str(exc)},
            witness={"item": exc.item, "x": str(exc.x), "p": str(exc.p)},
        )
    except (ValidationError, ValueError, OSError, *RUNTIME_ERRORS) as exc:
        logger.debug("Command failed", exc_info=True)
        return CommandResult(command=args.command, status="error", payload={"error": str(exc)})


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)

    result = execute(args)

    if args.json:
        print(result.icx_dump_json())
    else:
        print(render_result(result), end="")

    return result.exit_code
