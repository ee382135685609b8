"""The plain-text instance format.

    dim 3
    fn
    0 0 0 : 0
    1 1 0 : 1   # trailing comments are fine

`set` instances list one point per line without a value. Records may come in
any order; a point may appear only once.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from .errors import InstanceParseError
from .zfunction import ZFunction, ZSet

logger = logging.getLogger(__name__)

Instance = Union[ZFunction, ZSet]


def _meaningful_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((line_no, content))
    return lines


def _parse_ints(tokens: List[str], line_no: int) -> Tuple[int, ...]:
    try:
        return tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise InstanceParseError(f"expected integers, got {' '.join(tokens)!r}", line_no) from exc


def parse_instance(text: str) -> Instance:
    lines = _meaningful_lines(text)

    if len(lines) < 2:
        raise InstanceParseError("expected a 'dim <n>' line and a 'fn' or 'set' line", lines[0][0] if lines else 1)

    line_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "dim":
        raise InstanceParseError(f"expected 'dim <n>', got {header!r}", line_no)
    try:
        dim = int(parts[1])
    except ValueError as exc:
        raise InstanceParseError(f"dimension is not an integer: {parts[1]!r}", line_no) from exc
    if dim < 1:
        raise InstanceParseError(f"dimension must be positive, got {dim}", line_no)

    line_no, kind = lines[1]
    if kind not in ("fn", "set"):
        raise InstanceParseError(f"expected 'fn' or 'set', got {kind!r}", line_no)

    seen: Dict[Tuple[int, ...], int] = {}
    table: Dict[Tuple[int, ...], int] = {}

    for line_no, content in lines[2:]:
        if kind == "fn":
            if content.count(":") != 1:
                raise InstanceParseError("expected '<x1> ... <xn> : <value>'", line_no)
            left, right = content.split(":")
            point = _parse_ints(left.split(), line_no)
            value_tokens = right.split()
            if len(value_tokens) != 1:
                raise InstanceParseError("expected exactly one value after ':'", line_no)
            value = _parse_ints(value_tokens, line_no)[0]
        else:
            if ":" in content:
                raise InstanceParseError("set records carry no value", line_no)
            point = _parse_ints(content.split(), line_no)
            value = 0

        if len(point) != dim:
            raise InstanceParseError(f"point has {len(point)} coordinates, expected {dim}", line_no)
        if point in seen:
            raise InstanceParseError(f"duplicate point {point} (first on line {seen[point]})", line_no)

        seen[point] = line_no
        table[point] = value

    if not table:
        raise InstanceParseError("no records", lines[-1][0])

    try:
        if kind == "set":
            return ZSet(dim=dim, points=tuple(table))
        return ZFunction(dim=dim, table=table)
    except ValidationError as exc:
        raise InstanceParseError(str(exc)) from exc


def serialize_instance(instance: Instance) -> str:
    lines = [f"dim {instance.dim}"]

    if isinstance(instance, ZSet):
        lines.append("set")
        lines.extend(" ".join(str(c) for c in p) for p in instance.points)
    else:
        lines.append("fn")
        lines.extend(" ".join(str(c) for c in x) + f" : {v}" for x, v in instance.items())

    return "\n".join(lines) + "\n"


def read_instance(path: Union[str, Path]) -> Instance:
    path = Path(path)
    logger.debug("Reading instance %s", path)
    return parse_instance(path.read_text(encoding="utf-8"))


def write_instance(instance: Instance, path: Union[str, Path], comment: Optional[str] = None) -> None:
    text = serialize_instance(instance)
    if comment:
        text = "".join(f"# {line}\n" for line in comment.splitlines()) + text
    Path(path).write_text(text, encoding="utf-8")
