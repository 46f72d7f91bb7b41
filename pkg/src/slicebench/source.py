"""Line-indexed source text."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SourceProgram:
    """A program plus its physical lines, indexed from 1.

    ``line(1)`` is the first line; joining ``lines`` with newlines
    reproduces ``text`` exactly.
    """

    id: str
    text: str
    lines: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.text.split("\n")))

    @property
    def line_count(self) -> int:
        return len(self.lines)

    def line(self, n: int) -> str:
        if not 1 <= n <= len(self.lines):
            raise IndexError(f"line {n} out of range 1..{len(self.lines)}")
        return self.lines[n - 1]

    def numbered(self) -> str:
        """Render with ``N: `` prefixes, the form used in prompts."""
        return "\n".join(f"{i}: {text}" for i, text in enumerate(self.lines, start=1))
