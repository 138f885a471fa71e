"""Run reports and their deterministic JSON serialization."""

import json
import math
from functools import lru_cache
from importlib import resources
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

SCHEMA_RESOURCE = "run_report.schema.json"


class Verdict(BaseModel):
    """One pass/fail outcome inside a RunReport"""

    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(alias="pass")
    detail: str = ""


class RunReport(BaseModel):
    """Everything a CLI invocation computed, in a form that serializes byte-stably"""

    command: str
    inputs: dict[str, Any] = Field(default_factory=dict)
    outputs: dict[str, Any] = Field(default_factory=dict)
    verdicts: list[Verdict] = Field(default_factory=list)
    timing_ms: int = 0

    def add_verdict(self, name: str, passed: bool, detail: str = "") -> None:
        self.verdicts.append(Verdict(name=name, passed=bool(passed), detail=detail))

    @property
    def all_passed(self) -> bool:
        return all(verdict.passed for verdict in self.verdicts)


def to_jsonable(value: Any) -> Any:
    """Recursively convert a value into plain JSON types.

    Complex numbers become {"re", "im"}; non-finite floats become None; pydantic models, numpy
    scalars and arrays, tuples and sets are unpacked.
    """
    if isinstance(value, BaseModel):
        return to_jsonable(value.model_dump(by_alias=True))
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, (set, frozenset)):
        return [to_jsonable(item) for item in sorted(value)]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.generic):
        return to_jsonable(value.item())
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, complex):
        return {"re": to_jsonable(value.real), "im": to_jsonable(value.imag)}
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if hasattr(value, "as_dict"):
        return to_jsonable(value.as_dict())
    return str(value)


def dumps(report: RunReport) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2)


@lru_cache(maxsize=1)
def load_schema() -> dict:
    """The JSON Schema every RunReport validates against."""
    text = resources.files("twisted_kernel.schemas").joinpath(SCHEMA_RESOURCE).read_text(encoding="utf-8")
    return json.loads(text)
