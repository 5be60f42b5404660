"""Check reports shared by every verification module."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

from .series import TruncatedSeries


@dataclass
class CheckReport:
    """Outcome of one verification; ``passed`` holds iff no residual terms remain.

    Numeric checks have no truncation; they carry ``truncation=None`` and put
    their tolerances and maxima into ``details``.
    """

    check_name: str
    preset: str
    truncation: tuple[int, int] | None
    residual_term_count: int
    elapsed: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.residual_term_count == 0

    def to_dict(self, include_time: bool = True) -> dict[str, Any]:
        kh, kw = self.truncation if self.truncation is not None else (None, None)
        out: dict[str, Any] = {
            "check": self.check_name,
            "preset": self.preset,
            "K_h": kh,
            "K_w": kw,
            "residual_terms": self.residual_term_count,
            "pass": self.passed,
        }
        if include_time:
            out["ms"] = int(round(self.elapsed * 1000))
        if self.details:
            out["details"] = self.details
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_json(self, include_time: bool = True) -> str:
        return json.dumps(self.to_dict(include_time), sort_keys=False, default=_jsonable)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        trunc = "" if self.truncation is None else f" K=({self.truncation[0]},{self.truncation[1]})"
        return f"{status} {self.check_name} [{self.preset}]{trunc} residual_terms={self.residual_term_count}"


def _jsonable(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, TruncatedSeries):
        return str(x)
    return str(x)


def _size(x) -> int:
    if isinstance(x, (int, float)):
        return 0 if x == 0 else 1
    if isinstance(x, TruncatedSeries):
        return len(x)
    return len(x.terms)


class Residuals:
    """Collects named residual elements and turns them into a CheckReport."""

    def __init__(self, check_name: str, preset: str, truncation):
        self.check_name = check_name
        self.preset = preset
        self.truncation = truncation
        self.parts: dict[str, int] = {}
        self.notes: list[str] = []
        self.info: dict[str, Any] = {}
        self._start = time.perf_counter()

    def add(self, name: str, residual) -> int:
        n = _size(residual)
        self.parts[name] = self.parts.get(name, 0) + n
        return n

    def equal(self, name: str, lhs, rhs) -> int:
        return self.add(name, lhs - rhs)

    def report(self) -> CheckReport:
        details = {"parts": dict(self.parts)}
        details.update(self.info)
        return CheckReport(
            check_name=self.check_name,
            preset=self.preset,
            truncation=self.truncation,
            residual_term_count=sum(self.parts.values()),
            elapsed=time.perf_counter() - self._start,
            details=details,
            notes=self.notes,
        )
