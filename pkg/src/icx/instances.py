"""The bundled corpus of worked examples and its expectation checks.

Entries live in ``corpus/manifest.yaml``; each names an instance file in the
same directory and a set of expected values that `verify_entry` recomputes.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple, Union

from pydantic import model_validator
from pydantic_core import PydanticCustomError

from .checker import IcVerdict, hull_report, is_integrally_convex_function, is_integrally_convex_set, local_search_minimize
from .commonmodel import CommonModel
from .conjugacy import integral_biconjugate, integral_conjugate, integral_subdifferential_nonempty
from .errors import UnboundedPolyhedronError
from .fm_subgradient import fm_bounded_vertex, fm_integer_subgradient
from .rationals import ZPoint, as_zpoint, format_rational, format_vector, parse_vector
from .tools.import_files import import_icx, import_yaml
from .zfunction import ZFunction, ZSet, indicator

logger = logging.getLogger(__name__)

CORPUS_DIR = Path(__file__).parent / "corpus"


class CorpusEntry(CommonModel):
    name: str
    kind: Literal["fn", "set"]
    data: Union[ZFunction, ZSet]
    expected: Dict[str, Any]
    note: Optional[str] = None
    file: Optional[str] = None

    @model_validator(mode="after")
    def kind_matches_data(self) -> "CorpusEntry":
        if (self.kind == "set") != isinstance(self.data, ZSet):
            raise PydanticCustomError(
                "corpus_kind", "Entry {name} is declared {kind} but holds other data", {"name": self.name, "kind": self.kind}
            )
        return self

    @property
    def function(self) -> ZFunction:
        """The entry as a function; sets become their indicator."""

        if isinstance(self.data, ZSet):
            return indicator(self.data)
        return self.data

    @property
    def domain(self) -> ZSet:
        if isinstance(self.data, ZSet):
            return self.data
        return self.data.domain


class EntryVerification(CommonModel):
    name: str
    checked: Tuple[str, ...]
    failures: Tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


@lru_cache(maxsize=None)
def _load_corpus(corpus_dir: Path) -> Tuple[CorpusEntry, ...]:
    records = import_yaml(corpus_dir / "manifest.yaml")
    instances = {path.relative_to(corpus_dir).as_posix(): data for path, data in import_icx(corpus_dir)}

    entries = []
    for record in records:
        if record.file not in instances:
            raise FileNotFoundError(f"Corpus entry {record.name} names {record.file}, which is not in {corpus_dir}")
        entries.append(
            CorpusEntry(
                name=record.name,
                kind=record.kind,
                data=instances[record.file],
                expected=record.expected,
                note=record.note,
                file=record.file,
            )
        )
    return tuple(entries)


def corpus(corpus_dir: Optional[Path] = None) -> List[CorpusEntry]:
    return list(_load_corpus(Path(corpus_dir or CORPUS_DIR)))


def corpus_entry(name: str) -> CorpusEntry:
    for entry in corpus():
        if entry.name == name:
            return entry
    raise KeyError(f"No corpus entry named {name!r}")


def _point(text: Any) -> ZPoint:
    return as_zpoint(parse_vector(str(text)))


def _verdict(entry: CorpusEntry) -> IcVerdict:
    if isinstance(entry.data, ZSet):
        return is_integrally_convex_set(entry.data)
    return is_integrally_convex_function(entry.data)


def _bounded_vertex_text(f: ZFunction, x: ZPoint) -> str:
    try:
        return format_vector(fm_bounded_vertex(f, x))
    except UnboundedPolyhedronError:
        return "unbounded"


def _pointwise(
    entry: CorpusEntry, key: str, compute: Callable[[ZPoint], str], render: Callable[[Any], str]
) -> List[Tuple[str, Optional[str]]]:
    results = []
    for at, expected in entry.expected[key].items():
        label = f"{key} at {at}"
        got = compute(_point(at))
        want = render(expected)
        results.append((label, None if got == want else f"{label}: expected {want}, got {got}"))
    return results


def verify_entry(entry: CorpusEntry) -> EntryVerification:
    """Recompute every expectation of `entry` and collect the mismatches."""

    f = entry.function
    expected = entry.expected
    results: List[Tuple[str, Optional[str]]] = []

    def compare(label: str, got: Any, want: Any) -> None:
        results.append((label, None if got == want else f"{label}: expected {want}, got {got}"))

    if {"is_ic", "witness_point", "witness_pair", "witness_values"} & set(expected):
        verdict = _verdict(entry)
        witness = verdict.witness

        if "is_ic" in expected:
            compare("is_ic", verdict.is_ic, bool(expected["is_ic"]))
        if "witness_point" in expected:
            got = format_vector(witness.point) if witness else None
            compare("witness_point", got, format_vector(parse_vector(str(expected["witness_point"]))))
        if "witness_pair" in expected:
            got = witness.pair if witness else None
            compare("witness_pair", got, tuple(_point(p) for p in expected["witness_pair"]))
        if "witness_values" in expected:
            got = [str(witness.extension_value), format_rational(witness.average)] if witness else None
            compare("witness_values", got, [format_rational(parse_vector(str(v))[0]) for v in expected["witness_values"]])

    if {"hole_free", "hull_integral", "directions_in_pm1"} & set(expected):
        report = hull_report(entry.domain)
        if "hole_free" in expected:
            compare("hole_free", report.hole_free, bool(expected["hole_free"]))
        if "hull_integral" in expected:
            compare("hull_integral", report.all_vertices_integral, bool(expected["hull_integral"]))
        if "directions_in_pm1" in expected:
            compare("directions_in_pm1", report.directions_in_pm1, bool(expected["directions_in_pm1"]))

    if "subgradient" in expected:
        results += _pointwise(
            entry,
            "subgradient",
            lambda x: format_vector(fm_integer_subgradient(f, x).p),
            lambda v: format_vector(_point(v)),
        )

    if "subdifferential_nonempty" in expected:
        results += _pointwise(
            entry,
            "subdifferential_nonempty",
            lambda x: str(integral_subdifferential_nonempty(f, x).nonempty),
            lambda v: str(bool(v)),
        )

    if "bounded_vertex" in expected:
        results += _pointwise(
            entry,
            "bounded_vertex",
            lambda x: _bounded_vertex_text(f, x),
            lambda v: "unbounded" if v == "unbounded" else format_vector(_point(v)),
        )

    if "conjugate" in expected:
        results += _pointwise(entry, "conjugate", lambda p: str(integral_conjugate(f, p)), str)

    if "biconjugate" in expected:
        results += _pointwise(entry, "biconjugate", lambda x: str(integral_biconjugate(f, x)), str)

    if "minimum" in expected:
        search = local_search_minimize(f, f.domain_points[0], certify=False)
        compare("minimum", f.min_value, int(expected["minimum"]))
        compare("local search minimum", search.value, int(expected["minimum"]))

    failures = tuple(message for _, message in results if message is not None)
    for message in failures:
        logger.warning("Corpus entry %s: %s", entry.name, message)

    return EntryVerification(name=entry.name, checked=tuple(label for label, _ in results), failures=failures)


def verify_corpus(entries: Optional[List[CorpusEntry]] = None) -> List[EntryVerification]:
    entries = corpus() if entries is None else entries
    reports = [verify_entry(entry) for entry in entries]
    logger.info("Verified %d corpus entries, %d failing.", len(reports), sum(not r.passed for r in reports))
    return reports
