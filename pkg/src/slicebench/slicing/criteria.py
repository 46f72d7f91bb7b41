"""Slicing criteria and slice values."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import CriterionError

PROVENANCES = ("oracle", "llm", "human-verified")


@dataclass(frozen=True)
class SlicingCriterion:
    mode: str  # "static" | "dynamic"
    line: int
    variable: Optional[str] = None  # required for static, absent for dynamic

    def __post_init__(self):
        if self.mode not in ("static", "dynamic"):
            raise CriterionError(f"unknown slicing mode {self.mode!r}")
        if self.mode == "static" and not self.variable:
            raise CriterionError("static criteria need a variable")
        if self.mode == "dynamic" and self.variable:
            raise CriterionError("dynamic criteria take only a line")
        if self.line < 1:
            raise CriterionError(f"line numbers are 1-based, got {self.line}")


@dataclass(frozen=True)
class Slice:
    lines: tuple[int, ...]  # sorted, distinct
    criterion: Optional[SlicingCriterion] = None  # None for parsed predictions
    provenance: str = "oracle"

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(sorted(set(self.lines))))

    @property
    def line_set(self) -> frozenset[int]:
        return frozenset(self.lines)
