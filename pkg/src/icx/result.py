import json
from typing import Any, Dict, Literal, Optional

from pydantic import computed_field, model_validator
from pydantic_core import PydanticCustomError

from .commonmodel import CommonModel

Status = Literal["ok", "violation", "error"]

EXIT_CODES: Dict[str, int] = {"ok": 0, "violation": 1, "error": 2}


class CommandResult(CommonModel):
    """What a CLI command reports: a status, ordered key/value lines and optional evidence."""

    command: str
    status: Status
    payload: Dict[str, str] = {}
    witness: Optional[Dict[str, Any]] = None
    # pre-rendered blocks printed after the payload (traces, proofs)
    sections: Dict[str, str] = {}

    @model_validator(mode="after")
    def violation_has_witness(self) -> "CommandResult":
        if self.status == "violation" and self.witness is None:
            raise PydanticCustomError("violation_witness", "A violation must carry a witness", {})
        return self

    @computed_field  # type: ignore[misc]
    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def icx_dump_json(self, exclude: Optional[set] = None, exclude_none: bool = True, **kwargs: Any) -> str:
        data = self.model_dump(exclude=exclude, exclude_none=exclude_none, **kwargs)
        return json.dumps(data, indent=2)
