"""Def/use resolution over parsed programs.

Every statement gets two pairs of sets:

- ``own_defs`` / ``own_uses``: the variables this node alone defines and
  reads. For compound statements that is the guard expression only; bodies
  carry their own nodes.
- ``defs`` / ``uses``: the aggregate over the statement and everything
  nested inside it, so an if-statement's def set covers both arms.

Only identifiers declared in an enclosing scope or as method parameters
appear in any set. Unresolved names (class references like ``Math``,
``System``) never do.

Mutation model: a method call on a receiver of mutable declared type
(collections, builders, arrays, unknown classes) both defines and uses the
receiver, since the call may rewrite its state; calls on immutable
receivers (String, boxed numerics) only use it. Passing a mutable variable
to a method defined in the same program also counts as a definition, since
the callee can mutate it through the reference.
"""

from __future__ import annotations

from .ast_nodes import (
    ArrayIndex,
    ArrayInit,
    AssignExpr,
    AssignStmt,
    Ast,
    Binary,
    Block,
    Cast,
    DoWhileStmt,
    Expr,
    ExprStmt,
    FieldAccess,
    ForEachStmt,
    ForStmt,
    IfStmt,
    IncrStmt,
    MethodCall,
    Name,
    NewArray,
    NewObject,
    ReturnStmt,
    Stmt,
    Ternary,
    Unary,
    VarDecl,
    WhileStmt,
)

IMMUTABLE_TYPES = {
    "int", "long", "double", "float", "boolean", "char", "byte", "short", "void",
    "String", "Integer", "Long", "Double", "Float", "Boolean", "Character",
    "Byte", "Short", "BigDecimal", "BigInteger",
}

def base_type(type_name: str) -> str:
    """Declared type without generic arguments: List<Integer> -> List."""
    cut = type_name.find("<")
    return type_name if cut < 0 else type_name[:cut]


def is_mutable_type(type_name: str) -> bool:
    if type_name.endswith("[]"):
        return True
    return base_type(type_name) not in IMMUTABLE_TYPES


class _Scope:
    """Lexical scope stack mapping variable name to declared type."""

    def __init__(self):
        self.frames: list[dict[str, str]] = []

    def push(self):
        self.frames.append({})

    def pop(self):
        self.frames.pop()

    def declare(self, name: str, type_name: str):
        self.frames[-1][name] = type_name

    def lookup(self, name: str) -> str | None:
        for frame in reversed(self.frames):
            if name in frame:
                return frame[name]
        return None


def root_variable(expr: Expr, scope: _Scope) -> str | None:
    """In-scope variable at the base of a receiver chain, if any."""
    while isinstance(expr, (ArrayIndex, FieldAccess)):
        expr = expr.base
    if isinstance(expr, Name) and scope.lookup(expr.name) is not None:
        return expr.name
    return None


class _Resolver:
    def __init__(self, ast: Ast):
        self.ast = ast
        self.user_methods = set(ast.methods.keys())

    def run(self):
        for cls in self.ast.classes:
            for method in cls.methods:
                scope = _Scope()
                scope.push()
                for ptype, pname in method.params:
                    scope.declare(pname, ptype)
                self.visit(method.body, scope)

    # -- expression walking ------------------------------------------------

    def collect(self, expr: Expr | None, scope: _Scope, uses: set[str], defs: set[str]):
        if expr is None:
            return
        if isinstance(expr, Name):
            if scope.lookup(expr.name) is not None:
                uses.add(expr.name)
        elif isinstance(expr, ArrayIndex):
            self.collect(expr.base, scope, uses, defs)
            self.collect(expr.index, scope, uses, defs)
        elif isinstance(expr, FieldAccess):
            self.collect(expr.base, scope, uses, defs)
        elif isinstance(expr, MethodCall):
            self.collect_call(expr, scope, uses, defs)
        elif isinstance(expr, NewObject):
            for arg in expr.args:
                self.collect(arg, scope, uses, defs)
        elif isinstance(expr, NewArray):
            for dim in expr.dims:
                self.collect(dim, scope, uses, defs)
            if expr.init is not None:
                self.collect(expr.init, scope, uses, defs)
        elif isinstance(expr, ArrayInit):
            for value in expr.values:
                self.collect(value, scope, uses, defs)
        elif isinstance(expr, Unary):
            if expr.op in ("++", "--"):
                self.collect_write(expr.operand, scope, uses, defs, also_use=True)
            else:
                self.collect(expr.operand, scope, uses, defs)
        elif isinstance(expr, Binary):
            self.collect(expr.left, scope, uses, defs)
            self.collect(expr.right, scope, uses, defs)
        elif isinstance(expr, Ternary):
            self.collect(expr.cond, scope, uses, defs)
            self.collect(expr.then, scope, uses, defs)
            self.collect(expr.other, scope, uses, defs)
        elif isinstance(expr, Cast):
            self.collect(expr.operand, scope, uses, defs)
        elif isinstance(expr, AssignExpr):
            self.collect_assign(expr, scope, uses, defs)
        # literals carry no variables

    def collect_call(self, call: MethodCall, scope: _Scope, uses: set[str], defs: set[str]):
        recv = call.receiver
        if recv is not None:
            root = root_variable(recv, scope)
            if root is not None and is_mutable_type(scope.lookup(root)):
                defs.add(root)
            # class-name receivers (Math, Integer, System.out) resolve to
            # nothing in scope and contribute no variables
            self.collect(recv, scope, uses, defs)
        for arg in call.args:
            self.collect(arg, scope, uses, defs)
            if recv is None and call.name in self.user_methods:
                if isinstance(arg, Name):
                    atype = scope.lookup(arg.name)
                    if atype is not None and is_mutable_type(atype):
                        defs.add(arg.name)

    def collect_write(self, target: Expr, scope: _Scope, uses: set[str], defs: set[str],
                      also_use: bool):
        """Assignment target: plain variable, or array element (whole-array def)."""
        if isinstance(target, Name):
            if scope.lookup(target.name) is not None:
                defs.add(target.name)
                if also_use:
                    uses.add(target.name)
        elif isinstance(target, ArrayIndex):
            # element update: other elements survive, so the array is also used
            root = root_variable(target.base, scope)
            if root is not None:
                defs.add(root)
                uses.add(root)
            self.collect(target.base, scope, uses, defs)
            self.collect(target.index, scope, uses, defs)

    def collect_assign(self, expr: AssignExpr, scope: _Scope, uses: set[str], defs: set[str]):
        compound = expr.op != "="
        self.collect(expr.value, scope, uses, defs)
        self.collect_write(expr.target, scope, uses, defs, also_use=compound)

    # -- statement visiting --------------------------------------------------

    def own_sets(self, stmt: Stmt, scope: _Scope) -> tuple[frozenset[str], frozenset[str]]:
        uses: set[str] = set()
        defs: set[str] = set()
        if isinstance(stmt, VarDecl):
            for name, init in stmt.declarators:
                self.collect(init, scope, uses, defs)
                scope.declare(name, stmt.type_name)
                defs.add(name)
        elif isinstance(stmt, (AssignStmt, IncrStmt, ExprStmt)):
            self.collect(stmt.expr, scope, uses, defs)
        elif isinstance(stmt, ReturnStmt):
            self.collect(stmt.value, scope, uses, defs)
        elif isinstance(stmt, IfStmt):
            self.collect(stmt.cond, scope, uses, defs)
        elif isinstance(stmt, (WhileStmt, DoWhileStmt, ForStmt)):
            self.collect(stmt.cond, scope, uses, defs)
        elif isinstance(stmt, ForEachStmt):
            self.collect(stmt.iterable, scope, uses, defs)
            defs.add(stmt.var_name)
        return frozenset(defs), frozenset(uses)

    def visit(self, stmt: Stmt, scope: _Scope) -> tuple[frozenset[str], frozenset[str]]:
        """Resolve stmt and children; returns aggregate (defs, uses)."""
        agg_defs: set[str] = set()
        agg_uses: set[str] = set()

        if isinstance(stmt, Block):
            scope.push()
            for child in stmt.body:
                d, u = self.visit(child, scope)
                agg_defs |= d
                agg_uses |= u
            scope.pop()
            stmt.own_defs = frozenset()
            stmt.own_uses = frozenset()
        elif isinstance(stmt, IfStmt):
            stmt.own_defs, stmt.own_uses = self.own_sets(stmt, scope)
            agg_defs |= stmt.own_defs
            agg_uses |= stmt.own_uses
            d, u = self.visit(stmt.then_body, scope)
            agg_defs |= d
            agg_uses |= u
            if stmt.else_body is not None:
                d, u = self.visit(stmt.else_body, scope)
                agg_defs |= d
                agg_uses |= u
        elif isinstance(stmt, WhileStmt):
            stmt.own_defs, stmt.own_uses = self.own_sets(stmt, scope)
            agg_defs |= stmt.own_defs
            agg_uses |= stmt.own_uses
            d, u = self.visit(stmt.body, scope)
            agg_defs |= d
            agg_uses |= u
        elif isinstance(stmt, DoWhileStmt):
            d, u = self.visit(stmt.body, scope)
            stmt.own_defs, stmt.own_uses = self.own_sets(stmt, scope)
            agg_defs |= stmt.own_defs | d
            agg_uses |= stmt.own_uses | u
        elif isinstance(stmt, ForStmt):
            scope.push()
            if stmt.init is not None:
                d, u = self.visit(stmt.init, scope)
                agg_defs |= d
                agg_uses |= u
            stmt.own_defs, stmt.own_uses = self.own_sets(stmt, scope)
            agg_defs |= stmt.own_defs
            agg_uses |= stmt.own_uses
            if stmt.update is not None:
                d, u = self.visit(stmt.update, scope)
                agg_defs |= d
                agg_uses |= u
            d, u = self.visit(stmt.body, scope)
            agg_defs |= d
            agg_uses |= u
            scope.pop()
        elif isinstance(stmt, ForEachStmt):
            scope.push()
            iter_uses: set[str] = set()
            iter_defs: set[str] = set()
            self.collect(stmt.iterable, scope, iter_uses, iter_defs)
            scope.declare(stmt.var_name, stmt.var_type)
            stmt.own_defs = frozenset(iter_defs | {stmt.var_name})
            stmt.own_uses = frozenset(iter_uses)
            agg_defs |= stmt.own_defs
            agg_uses |= stmt.own_uses
            d, u = self.visit(stmt.body, scope)
            agg_defs |= d
            agg_uses |= u
            scope.pop()
        else:
            stmt.own_defs, stmt.own_uses = self.own_sets(stmt, scope)
            agg_defs |= stmt.own_defs
            agg_uses |= stmt.own_uses

        stmt.defs = frozenset(agg_defs)
        stmt.uses = frozenset(agg_uses)
        return stmt.defs, stmt.uses


def resolve_def_use(ast: Ast) -> None:
    """Populate defs/uses and own_defs/own_uses on every statement in place."""
    _Resolver(ast).run()
