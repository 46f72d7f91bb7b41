"""Execution traces: ordered statement instances with def/use records."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..frontend.ast_nodes import Ast, Stmt


@dataclass
class TraceEntry:
    seq: int
    line: int
    stmt: Stmt
    defs: dict[str, str] = field(default_factory=dict)  # variable -> value snapshot
    uses: dict[str, int] = field(default_factory=dict)  # variable -> defining seq
    control_parent: Optional[int] = None
    role: str = "stmt"  # stmt | guard | call | return

    def as_record(self) -> dict:
        return {
            "seq": self.seq,
            "line": self.line,
            "kind": self.stmt.kind,
            "role": self.role,
            "defs": dict(sorted(self.defs.items())),
            "uses": dict(sorted(self.uses.items())),
            "control_parent": self.control_parent,
        }


@dataclass
class ExecutionTrace:
    ast: Ast
    entries: list[TraceEntry] = field(default_factory=list)
    returned: Optional[str] = None  # rendered value returned from the entry method

    def last_at(self, line: int) -> Optional[TraceEntry]:
        for entry in reversed(self.entries):
            if entry.line == line:
                return entry
        return None

    def lines_executed(self) -> frozenset[int]:
        return frozenset(e.line for e in self.entries)
