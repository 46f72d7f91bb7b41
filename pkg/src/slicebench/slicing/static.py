"""Backward static slicing over the program dependence graph.

The slice seeds on the statements that produce the criterion variable's
value at the criterion line: the statement itself when it writes the
variable, otherwise the definitions reaching it. The criterion statement's
control context is always traversed, its unrelated data inputs are not.
The criterion's anchor line is always in the output.
"""

from __future__ import annotations

from ..errors import CriterionError
from ..flow.pdg import Pdg
from ..frontend.ast_nodes import Ast, Stmt, walk_statements
from ..frontend.parser import statement_at
from .criteria import Slice, SlicingCriterion

STRUCTURAL_MODES = ("include", "exclude")


def backward_closure(pdg: Pdg, roots: set[str]) -> set[str]:
    """All nodes backward-reachable from roots over every edge kind."""
    seen = set(roots)
    stack = list(roots)
    while stack:
        key = stack.pop()
        for edge in pdg.in_edges(key):
            if edge.src not in seen:
                seen.add(edge.src)
                stack.append(edge.src)
    return seen


def defining_nodes_within(pdg: Pdg, stmt: Stmt, variable: str) -> set[str]:
    """Nodes inside stmt (itself included) whose own writes cover variable."""
    keys: set[str] = set()
    for nested in walk_statements(stmt):
        if variable in nested.own_defs:
            key = pdg.stmt_key(nested)
            if key in pdg.nodes:
                keys.add(key)
    return keys


def structural_lines_for(ast: Ast, methods: set[str]) -> set[int]:
    """Header lines of the given methods and of their enclosing classes."""
    lines: set[int] = set()
    for cls in ast.classes:
        for m in cls.methods:
            if m.name in methods:
                lines.add(m.header_line)
                lines.add(cls.line)
    return lines


def static_backward_slice(
    ast: Ast,
    pdg: Pdg,
    criterion: SlicingCriterion,
    structural_lines: str = "include",
) -> Slice:
    if criterion.mode != "static":
        raise CriterionError("static slicer needs a static criterion")
    if structural_lines not in STRUCTURAL_MODES:
        raise CriterionError(f"unknown structural-lines mode {structural_lines!r}")
    stmt = statement_at(ast, criterion.line)  # NotFound propagates
    variable = criterion.variable
    if variable not in (stmt.defs | stmt.uses):
        raise CriterionError(
            f"variable {variable!r} does not occur at line {criterion.line}"
        )

    anchor_key = pdg.stmt_key(stmt)
    roots = defining_nodes_within(pdg, stmt, variable)
    if not roots:
        # the statement only reads the variable: seed on the definitions
        # reaching it
        roots = {d for v, d in pdg.rd_in.get(anchor_key, frozenset()) if v == variable}
    # the criterion statement's execution context always matters
    if anchor_key in pdg.nodes:
        roots |= {e.src for e in pdg.in_edges(anchor_key) if e.kind == "control"}

    closure = backward_closure(pdg, roots)
    closure.add(anchor_key)

    lines: set[int] = set()
    methods: set[str] = set()
    for key in closure:
        node = pdg.nodes.get(key)
        if node is None:
            continue
        if node.kind == "stmt":
            lines.add(node.line)
            methods.add(node.method)
    lines.add(stmt.line)
    if stmt.method is not None:
        methods.add(stmt.method)
    if structural_lines == "include":
        lines |= structural_lines_for(ast, methods)
    lines = {n for n in lines if 1 <= n <= ast.line_count}
    return Slice(lines=tuple(sorted(lines)), criterion=criterion, provenance="oracle")
