from __future__ import annotations

import logging
import os
from typing import Any, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, model_validator

logger = logging.getLogger(__name__)

_ENV_VARS = {
    "threads": "ICX_THREADS",
    "max_generator_attempts": "ICX_MAX_ATTEMPTS",
    "biconjugate_doublings": "ICX_BICONJUGATE_DOUBLINGS",
    "integer_search_limit": "ICX_INTEGER_SEARCH_LIMIT",
}


class IcxConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    threads: int = Field(default=1, ge=1)
    max_generator_attempts: int = Field(default=200, ge=1)
    biconjugate_doublings: int = Field(default=1, ge=1)
    integer_search_limit: int = Field(default=200_000, ge=1)

    @model_validator(mode="before")
    @classmethod
    def populate_defaults(cls, data: Any) -> Any:
        load_dotenv()

        if data is None:
            data = {}

        data = dict(data)

        for field_name, env_var in _ENV_VARS.items():
            if data.get(field_name) is None and os.getenv(env_var):
                data[field_name] = os.getenv(env_var)

        return data


_config: Optional[IcxConfig] = None


def init_icx(config: Optional[IcxConfig] = None, **kwargs: Any) -> IcxConfig:
    """Install the process-wide configuration.

    Keyword arguments override individual fields, e.g. ``init_icx(threads=4)``.
    """

    global _config

    if config is None:
        logger.info("No IcxConfig provided, using defaults and environment.")
        config = IcxConfig(**kwargs)

    elif kwargs:
        config = config.model_copy(update=kwargs)

    _config = config
    logger.info("icx initialized.")

    return _config


def get_config() -> IcxConfig:
    if _config is None:
        return init_icx()
    return _config
