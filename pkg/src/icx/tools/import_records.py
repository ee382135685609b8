import logging
from copy import deepcopy
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, model_validator

logger = logging.getLogger(__name__)

CONTROL_KEYS = ["NAME", "FILE", "KIND", "NOTE"]

EXPECTATION_KEYS = [
    "is_ic",
    "witness_point",
    "witness_pair",
    "witness_values",
    "hole_free",
    "hull_integral",
    "directions_in_pm1",
    "subgradient",
    "subdifferential_nonempty",
    "bounded_vertex",
    "conjugate",
    "biconjugate",
    "minimum",
]


class CorpusRecordRaw(BaseModel):
    NAME: str
    FILE: str
    KIND: Literal["fn", "set"]
    NOTE: Optional[str] = None


class CorpusRecord(BaseModel):
    input_record: CorpusRecordRaw
    name: str
    file: str
    kind: Literal["fn", "set"]
    note: Optional[str] = None
    expected: Dict[str, Any]

    @model_validator(mode="before")
    @classmethod
    def populate_record_fields(cls, data: Any) -> Any:
        raw = data.get("input_record", {})
        if isinstance(raw, BaseModel):
            raw = raw.model_dump()

        if not data.get("name"):
            data["name"] = raw.get("NAME")

        if not data.get("file"):
            data["file"] = raw.get("FILE")

        if not data.get("kind"):
            data["kind"] = raw.get("KIND")

        if not data.get("note"):
            data["note"] = raw.get("NOTE")

        if not data.get("expected"):
            data["expected"] = {k: v for k, v in raw.items() if k not in CONTROL_KEYS}

        unknown = sorted(set(data["expected"]) - set(EXPECTATION_KEYS))
        if unknown:
            raise ValueError(f"Unknown expectation keys for {data['name']}: {unknown}")

        # the raw model only keeps the control keys
        data["input_record"] = {k: v for k, v in raw.items() if k in CONTROL_KEYS}

        return data


def _prepare_records(input_records: Union[List[Dict[str, Any]], Dict[str, Any]]) -> List[CorpusRecord]:
    if isinstance(input_records, dict):
        # a single record rather than a list
        raw_records = [input_records]
    else:
        raw_records = list(input_records)

    prepared = []

    for record in raw_records:
        if record is None:
            continue

        if "NAME" not in record.keys():
            raise ValueError(f"Corpus record does not have a NAME: {record}")

        prepared.append(CorpusRecord(input_record=record))

    return prepared


def import_records(records: list, validate_only: bool = False) -> List[CorpusRecord]:
    """Validate manifest records; with `validate_only` nothing is returned.

    Raises:
        ValueError: a duplicate name, a record without NAME, or an unknown expectation key.
    """

    fresh_records = deepcopy(records)
    prepared: List[CorpusRecord] = []

    for entry in fresh_records:
        prepared += _prepare_records(entry)

    names = [r.name for r in prepared]
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise ValueError(f"Duplicate corpus names: {duplicates}")

    logger.debug("Validated %d corpus records.", len(prepared))

    if validate_only is True:
        return []

    return prepared
