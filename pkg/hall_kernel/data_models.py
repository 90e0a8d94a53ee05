"""
Data models for the Hall kernel command layer
"""

import re
from dataclasses import dataclass
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

ORDER_PATTERN = re.compile(r"^(length|lyndon|fibo|supergeom|sharp:[0-9]+)$")
OUTPUT_FORMATS = ("json", "csv", "text")
SUITES = ("oracle", "bounds", "structure", "identities", "families", "all")


@dataclass
class CommandMessage:
    """Command message data class"""
    command: str
    params: Dict[str, Any]


@dataclass
class ResponseMessage:
    """Response message data class"""
    success: bool
    data: Optional[Dict[str, Any]] = None
    message: Optional[str] = None
    error: Optional[str] = None


class RunConfig(BaseModel):
    """One CLI invocation, parsed strictly"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    command: str
    order: Optional[str] = None
    alphabet: Optional[int] = Field(default=None, ge=2)
    max_len: Optional[int] = Field(default=None, ge=1)
    max_n: Optional[int] = Field(default=None, ge=2)
    budget: Optional[int] = Field(default=None, ge=2)
    suite: str = "all"
    fmt: str = "json"
    stats: bool = False
    jobs: int = Field(default=1, ge=1)
    family: Optional[str] = None
    params: Dict[str, int] = Field(default_factory=dict)
    a: Optional[str] = None
    b: Optional[str] = None

    @field_validator("order")
    @classmethod
    def _known_order(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and not ORDER_PATTERN.match(value):
            raise ValueError(f"unknown order {value!r}; expected length, lyndon, fibo, supergeom or sharp:<n>")
        return value

    @field_validator("fmt")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in OUTPUT_FORMATS:
            raise ValueError(f"unknown format {value!r}; expected one of {', '.join(OUTPUT_FORMATS)}")
        return value

    @field_validator("suite")
    @classmethod
    def _known_suite(cls, value: str) -> str:
        if value not in SUITES:
            raise ValueError(f"unknown suite {value!r}; expected one of {', '.join(SUITES)}")
        return value

    def to_params(self) -> Dict[str, Any]:
        """Handler parameters: every field that was set"""
        return self.model_dump(exclude={"command"}, exclude_none=True)
