"""Total parser for slice responses.

Any byte string maps to either a Slice or a ParseFailure; nothing raises.
Markdown fences are stripped, then the first JSON object carrying an
"output" array wins. Out-of-range line numbers are dropped with a warning
while in-range ones are kept.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from ..slicing.criteria import Slice, SlicingCriterion
from ..source import SourceProgram

FAILURE_KINDS = (
    "MalformedJson",
    "MissingOutputField",
    "NonNumericLine",
    "EmptyOutput",
)

_FENCE = re.compile(r"^```[a-zA-Z0-9_-]*\s*\n?")


@dataclass(frozen=True)
class ParseFailure:
    kind: str
    detail: str = ""

    def __post_init__(self):
        if self.kind not in FAILURE_KINDS:
            raise ValueError(f"unknown failure kind {self.kind!r}")


@dataclass(frozen=True)
class LlmResponse:
    raw: str
    slice: Optional[Slice] = None
    failure: Optional[ParseFailure] = None
    warnings: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if (self.slice is None) == (self.failure is None):
            raise ValueError("exactly one of slice/failure must be set")

    @property
    def parse_failed(self) -> bool:
        return self.failure is not None


def strip_fences(text: str) -> str:
    text = text.strip()
    if not text.startswith("```"):
        return text
    text = _FENCE.sub("", text, count=1)
    if text.rstrip().endswith("```"):
        text = text.rstrip()[:-3]
    return text.strip()


def _candidate_objects(text: str):
    """Yield JSON values decoded at each '{' position, first-come order."""
    decoder = json.JSONDecoder()
    for pos, ch in enumerate(text):
        if ch != "{":
            continue
        try:
            value, _ = decoder.raw_decode(text, pos)
        except ValueError:
            continue
        yield value


def parse_slice_response(
    raw: Union[str, bytes],
    program: SourceProgram,
    criterion: Optional[SlicingCriterion] = None,
) -> LlmResponse:
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8", errors="replace")
    text = strip_fences(raw)

    holder = None
    saw_object = False
    for value in _candidate_objects(text):
        if isinstance(value, dict):
            saw_object = True
            if "output" in value:
                holder = value
                break
    if holder is None:
        if saw_object:
            return LlmResponse(
                raw=raw,
                failure=ParseFailure("MissingOutputField",
                                     "no JSON object carries an 'output' key"),
            )
        return LlmResponse(
            raw=raw,
            failure=ParseFailure("MalformedJson", "no JSON object found"),
        )

    output = holder["output"]
    if not isinstance(output, list):
        return LlmResponse(
            raw=raw,
            failure=ParseFailure("MissingOutputField", "'output' is not an array"),
        )

    lines: list[int] = []
    for item in output:
        if isinstance(item, bool):
            return LlmResponse(
                raw=raw,
                failure=ParseFailure("NonNumericLine", f"boolean entry {item!r}"),
            )
        if isinstance(item, int):
            lines.append(item)
            continue
        if isinstance(item, float) and item.is_integer():
            lines.append(int(item))
            continue
        if isinstance(item, str):
            candidate = item.strip()
            if re.fullmatch(r"[+-]?\d+", candidate):
                lines.append(int(candidate))
                continue
        return LlmResponse(
            raw=raw,
            failure=ParseFailure("NonNumericLine", f"entry {item!r} is not a line number"),
        )

    warnings = []
    in_range = []
    for n in lines:
        if 1 <= n <= program.line_count:
            in_range.append(n)
        else:
            warnings.append(f"line {n} outside 1..{program.line_count}, dropped")
    if not in_range:
        return LlmResponse(
            raw=raw,
            failure=ParseFailure("EmptyOutput", "no in-range line numbers"),
        )
    predicted = Slice(lines=tuple(sorted(set(in_range))), criterion=criterion,
                      provenance="llm")
    return LlmResponse(raw=raw, slice=predicted, warnings=tuple(warnings))
