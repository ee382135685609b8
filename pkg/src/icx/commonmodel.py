import json
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict


class CommonModel(BaseModel):
    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        arbitrary_types_allowed=True,
    )

    def icx_dump(self, exclude: Optional[set] = None, exclude_none: bool = True, **kwargs: Any) -> dict:
        """Return a plain dict with exact rationals rendered as canonical strings.

        Returns:
            dict: json-compatible export of this record
        """

        # round-trip through pydantic's json mode so Fractions hit their serializers
        return json.loads(self.icx_dump_json(exclude=exclude, exclude_none=exclude_none, **kwargs))

    def icx_dump_json(self, exclude: Optional[set] = None, exclude_none: bool = True, **kwargs: Any) -> str:
        return self.model_dump_json(exclude_none=exclude_none, exclude=exclude, **kwargs)
