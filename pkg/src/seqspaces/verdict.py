"""Three-valued verdicts with certificates, and exact JSON encoding."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .core import format_scalar


class Status(enum.Enum):
    MEMBER = "member"
    NONMEMBER = "nonmember"
    INCONCLUSIVE = "inconclusive"

    @property
    def exit_code(self) -> int:
        return {"member": 0, "nonmember": 1, "inconclusive": 2}[self.value]


@dataclass(frozen=True)
class Verdict:
    """A decision plus the evidence behind it.

    Decided verdicts must carry a certificate; an Inconclusive verdict
    carries the bounded trace that failed to decide.
    """

    status: Status
    certificate: dict = field(default_factory=dict)
    trace: tuple = ()

    def __post_init__(self):
        if self.status is not Status.INCONCLUSIVE and not self.certificate:
            raise ValueError("a decided verdict needs a certificate")

    @property
    def decided(self) -> bool:
        return self.status is not Status.INCONCLUSIVE

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "certificate": jsonable(self.certificate),
            "trace": jsonable(list(self.trace)),
        }


def member(certificate: dict, trace=()) -> Verdict:
    return Verdict(Status.MEMBER, certificate, tuple(trace))


def nonmember(certificate: dict, trace=()) -> Verdict:
    return Verdict(Status.NONMEMBER, certificate, tuple(trace))


def inconclusive(reason: str, trace=()) -> Verdict:
    return Verdict(Status.INCONCLUSIVE, {"reason": reason}, tuple(trace))


def jsonable(obj: Any) -> Any:
    """Recursively replace Fractions by ``p/q`` strings and tuples by lists."""
    if isinstance(obj, Fraction):
        return format_scalar(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Verdict):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "literal"):
        lit = obj.literal
        return lit() if callable(lit) else lit
    return str(obj)


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, ensure_ascii=False)
