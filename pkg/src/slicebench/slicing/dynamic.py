"""Dynamic backward slicing over a recorded execution trace.

The criterion is a line; the slice is computed from the last trace entry
at that line, walking backward over data edges (each recorded use points
at the sequence number of the defining entry) and control edges (each
entry knows the guard instance that let it run). Lines never executed
cannot appear, except for the structural projection shared with the
static slicer.
"""

from __future__ import annotations

from ..errors import CriterionError, CriterionNotExecuted
from ..frontend.ast_nodes import Ast
from ..interp.trace import ExecutionTrace, TraceEntry
from .criteria import Slice, SlicingCriterion
from .static import STRUCTURAL_MODES, structural_lines_for


def dependence_closure(trace: ExecutionTrace, start: TraceEntry) -> set[int]:
    """Backward closure over use and control-parent edges; returns seqs."""
    entries = trace.entries
    seen: set[int] = set()
    work = [start.seq]
    while work:
        seq = work.pop()
        if seq in seen:
            continue
        seen.add(seq)
        entry = entries[seq]
        for dep_seq in entry.uses.values():
            if dep_seq not in seen:
                work.append(dep_seq)
        if entry.control_parent is not None and entry.control_parent not in seen:
            work.append(entry.control_parent)
    return seen


def dynamic_backward_slice(
    trace: ExecutionTrace,
    criterion: SlicingCriterion,
    structural_lines: str = "include",
) -> Slice:
    if criterion.mode != "dynamic":
        raise CriterionError("dynamic slicer needs a dynamic criterion")
    if structural_lines not in STRUCTURAL_MODES:
        raise CriterionError(f"unknown structural-lines mode {structural_lines!r}")
    ast = trace.ast
    start = trace.last_at(criterion.line)
    if start is None:
        raise CriterionNotExecuted(
            f"line {criterion.line} was never executed"
        )
    reached = dependence_closure(trace, start)
    lines = {trace.entries[seq].line for seq in reached}
    lines.add(criterion.line)
    if structural_lines == "include":
        methods = {trace.entries[seq].stmt.method for seq in reached
                   if trace.entries[seq].stmt.method}
        start_method = start.stmt.method
        if start_method:
            methods.add(start_method)
        lines |= structural_lines_for(ast, methods)
    lines = {n for n in lines if 1 <= n <= ast.line_count}
    return Slice(
        lines=tuple(sorted(lines)),
        criterion=criterion,
        provenance="oracle",
    )
