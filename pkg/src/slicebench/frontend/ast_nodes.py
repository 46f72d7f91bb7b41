"""AST node definitions for the Java subset.

Statements carry their anchor (first) line, every physical line their own
tokens touch, and statement-level def/use sets. Compound statements
aggregate the def/use sets of their children; flow analysis re-derives
finer-grained sets from the expression trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

# ---------------------------------------------------------------------------
# expressions


@dataclass
class Expr:
    line: int = 0


@dataclass
class IntLit(Expr):
    value: int = 0


@dataclass
class FloatLit(Expr):
    value: float = 0.0


@dataclass
class StringLit(Expr):
    value: str = ""


@dataclass
class CharLit(Expr):
    value: str = ""


@dataclass
class BoolLit(Expr):
    value: bool = False


@dataclass
class NullLit(Expr):
    pass


@dataclass
class Name(Expr):
    name: str = ""


@dataclass
class ClassRef(Expr):
    """Identifier resolved to a class (receiver of a static call)."""

    name: str = ""


@dataclass
class ArrayIndex(Expr):
    base: Expr = None
    index: Expr = None


@dataclass
class FieldAccess(Expr):
    base: Expr = None
    name: str = ""


@dataclass
class MethodCall(Expr):
    receiver: Optional[Expr] = None  # None for unqualified calls
    name: str = ""
    args: list[Expr] = field(default_factory=list)


@dataclass
class NewObject(Expr):
    type_name: str = ""
    args: list[Expr] = field(default_factory=list)


@dataclass
class NewArray(Expr):
    elem_type: str = ""
    dims: list[Expr] = field(default_factory=list)  # empty exprs possible for new int[][]
    init: Optional["ArrayInit"] = None


@dataclass
class ArrayInit(Expr):
    values: list[Expr] = field(default_factory=list)


@dataclass
class Unary(Expr):
    op: str = ""
    operand: Expr = None
    prefix: bool = True


@dataclass
class Binary(Expr):
    op: str = ""
    left: Expr = None
    right: Expr = None


@dataclass
class Ternary(Expr):
    cond: Expr = None
    then: Expr = None
    other: Expr = None


@dataclass
class Cast(Expr):
    type_name: str = ""
    operand: Expr = None


@dataclass
class AssignExpr(Expr):
    """Assignment / compound assignment; statement position and for-updates only."""

    target: Expr = None  # Name or ArrayIndex
    op: str = "="
    value: Expr = None


# ---------------------------------------------------------------------------
# statements

STATEMENT_KINDS = {
    "decl", "assign", "if", "loop", "call", "return", "block", "import", "class-decl",
}


@dataclass
class Stmt:
    kind: str = ""
    line: int = 0  # anchor = first physical line
    end_line: int = 0
    content_lines: frozenset[int] = frozenset()  # lines holding this node's own tokens
    defs: frozenset[str] = frozenset()  # aggregate: own plus nested statements
    uses: frozenset[str] = frozenset()
    own_defs: frozenset[str] = frozenset()  # this node alone (guard only, for compounds)
    own_uses: frozenset[str] = frozenset()
    sid: int = -1  # assigned in parse order
    method: Optional[str] = None  # enclosing method name, None for top level

    @property
    def spanned_lines(self) -> range:
        return range(self.line, self.end_line + 1)


@dataclass
class ImportStmt(Stmt):
    module: str = ""

    def __post_init__(self):
        self.kind = "import"


@dataclass
class VarDecl(Stmt):
    type_name: str = ""
    declarators: list[tuple[str, Optional[Expr]]] = field(default_factory=list)

    def __post_init__(self):
        self.kind = "decl"


@dataclass
class AssignStmt(Stmt):
    expr: AssignExpr = None

    def __post_init__(self):
        self.kind = "assign"


@dataclass
class IncrStmt(Stmt):
    """Standalone ``x++;`` / ``--x;`` statement."""

    expr: Unary = None

    def __post_init__(self):
        self.kind = "assign"


@dataclass
class ExprStmt(Stmt):
    """Bare method-call statement."""

    expr: Expr = None

    def __post_init__(self):
        self.kind = "call"


@dataclass
class ReturnStmt(Stmt):
    value: Optional[Expr] = None

    def __post_init__(self):
        self.kind = "return"


@dataclass
class Block(Stmt):
    body: list[Stmt] = field(default_factory=list)

    def __post_init__(self):
        self.kind = "block"


@dataclass
class IfStmt(Stmt):
    cond: Expr = None
    then_body: Block = None
    else_body: Optional[Stmt] = None  # Block or nested IfStmt (else-if)

    def __post_init__(self):
        self.kind = "if"


@dataclass
class WhileStmt(Stmt):
    cond: Expr = None
    body: Block = None

    def __post_init__(self):
        self.kind = "loop"


@dataclass
class DoWhileStmt(Stmt):
    body: Block = None
    cond: Expr = None

    def __post_init__(self):
        self.kind = "loop"


@dataclass
class ForStmt(Stmt):
    init: Optional[Stmt] = None  # VarDecl or AssignStmt/IncrStmt
    cond: Optional[Expr] = None
    update: Optional[Stmt] = None  # AssignStmt or IncrStmt
    body: Block = None

    def __post_init__(self):
        self.kind = "loop"


@dataclass
class ForEachStmt(Stmt):
    var_type: str = ""
    var_name: str = ""
    iterable: Expr = None
    body: Block = None

    def __post_init__(self):
        self.kind = "loop"


@dataclass
class MethodDecl:
    """Not a statement: methods structure the class body."""

    name: str = ""
    class_name: str = ""
    return_type: str = ""
    params: list[tuple[str, str]] = field(default_factory=list)  # (type, name)
    body: Block = None
    header_line: int = 0
    header_lines: frozenset[int] = frozenset()
    end_line: int = 0


@dataclass
class ClassDeclStmt(Stmt):
    name: str = ""
    methods: list[MethodDecl] = field(default_factory=list)

    def __post_init__(self):
        self.kind = "class-decl"


@dataclass
class Ast:
    """Compilation unit with a flat textual-order statement index."""

    program_id: str = ""
    source_lines: tuple[str, ...] = ()
    imports: list[ImportStmt] = field(default_factory=list)
    classes: list[ClassDeclStmt] = field(default_factory=list)
    statements: list[Stmt] = field(default_factory=list)  # parse order, all kinds

    @property
    def line_count(self) -> int:
        return len(self.source_lines)

    @property
    def methods(self) -> dict[str, MethodDecl]:
        out = {}
        for cls in self.classes:
            for m in cls.methods:
                out[m.name] = m
        return out

    def method_of(self, stmt: Stmt) -> Optional[MethodDecl]:
        if stmt.method is None:
            return None
        return self.methods.get(stmt.method)

    def main_method(self) -> Optional[MethodDecl]:
        return self.methods.get("main")


def walk_statements(stmt: Stmt):
    """Yield stmt and every statement nested inside it, pre-order."""
    yield stmt
    if isinstance(stmt, Block):
        for s in stmt.body:
            yield from walk_statements(s)
    elif isinstance(stmt, IfStmt):
        yield from walk_statements(stmt.then_body)
        if stmt.else_body is not None:
            yield from walk_statements(stmt.else_body)
    elif isinstance(stmt, (WhileStmt, DoWhileStmt)):
        yield from walk_statements(stmt.body)
    elif isinstance(stmt, ForStmt):
        if stmt.init is not None:
            yield from walk_statements(stmt.init)
        if stmt.update is not None:
            yield from walk_statements(stmt.update)
        yield from walk_statements(stmt.body)
    elif isinstance(stmt, ForEachStmt):
        yield from walk_statements(stmt.body)
