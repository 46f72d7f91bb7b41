"""Tree-walking interpreter with trace recording.

Every executed statement instance appends one trace entry; guards emit one
entry per evaluation. A user-method call adds a pre-order call entry (which
defines the parameters from the argument values) before the callee body
runs; the calling statement's own entry follows post-order and uses the
pseudo-variable "@ret" to point at the callee's return entry.

Mutable objects (arrays, lists) are tracked by identity so that mutations
made inside a callee are visible as definitions to later uses in the
caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from ..errors import JavaRuntimeError, NotFound, StepBudgetExceeded
from ..frontend.ast_nodes import (
    ArrayIndex,
    ArrayInit,
    AssignExpr,
    AssignStmt,
    Ast,
    Binary,
    Block,
    BoolLit,
    Cast,
    CharLit,
    DoWhileStmt,
    Expr,
    ExprStmt,
    FieldAccess,
    FloatLit,
    ForEachStmt,
    ForStmt,
    IfStmt,
    IncrStmt,
    IntLit,
    MethodCall,
    Name,
    NewArray,
    NewObject,
    NullLit,
    ReturnStmt,
    Stmt,
    StringLit,
    Ternary,
    Unary,
    VarDecl,
    WhileStmt,
)
from .trace import ExecutionTrace, TraceEntry
from .values import (
    INT_MAX,
    INT_MIN,
    JavaArray,
    JavaList,
    float_div,
    java_div,
    java_rem,
    new_array,
    render_value,
    wrap_int,
    zero_of,
)

DEFAULT_STEP_BUDGET = 1_000_000

LIST_TYPES = {"ArrayList", "LinkedList", "ArrayDeque", "Stack"}

CLASS_CONSTANTS = {
    ("Integer", "MAX_VALUE"): 2**31 - 1,
    ("Integer", "MIN_VALUE"): -(2**31),
    ("Long", "MAX_VALUE"): 2**63 - 1,
    ("Long", "MIN_VALUE"): -(2**63),
    ("Math", "PI"): math.pi,
}

_SYSTEM_OUT = object()  # receiver marker for println/print


class _Return(Exception):
    def __init__(self, value, seq: int):
        self.value = value
        self.seq = seq


@dataclass
class _Frame:
    vars: dict[str, object] = field(default_factory=dict)
    def_seq: dict[str, int] = field(default_factory=dict)


@dataclass
class _Ctx:
    """Per-statement evaluation record: reads, writes, mutated objects."""

    reads: dict[str, int] = field(default_factory=dict)
    writes: dict[str, object] = field(default_factory=dict)
    mutated: list[object] = field(default_factory=list)

    def note_ret(self, seq: int):
        key = "@ret"
        k = 2
        while key in self.reads:
            key = f"@ret:{k}"
            k += 1
        self.reads[key] = seq


class Interpreter:
    def __init__(self, ast: Ast, step_budget: int = DEFAULT_STEP_BUDGET):
        self.ast = ast
        self.budget = step_budget
        self.methods = ast.methods
        self.entries: list[TraceEntry] = []
        self.frames: list[_Frame] = []
        self.obj_def_seq: dict[int, int] = {}
        self.objects: dict[int, object] = {}  # keeps ids stable
        self.current_line = 0

    # -- trace plumbing ------------------------------------------------------

    @property
    def frame(self) -> _Frame:
        return self.frames[-1]

    def emit(
        self,
        stmt: Stmt,
        defs: dict[str, object],
        ctx: _Ctx,
        parent: Optional[int],
        role: str = "stmt",
        line: Optional[int] = None,
    ) -> int:
        if len(self.entries) >= self.budget:
            raise StepBudgetExceeded(self.budget)
        seq = len(self.entries)
        self.entries.append(TraceEntry(
            seq=seq,
            line=line if line is not None else stmt.line,
            stmt=stmt,
            defs={k: render_value(v) for k, v in defs.items()},
            uses=dict(ctx.reads),
            control_parent=parent,
            role=role,
        ))
        for name, value in defs.items():
            if name.startswith("@"):
                continue
            self.frame.def_seq[name] = seq
            self.track(value, seq)
        for obj in ctx.mutated:
            self.track(obj, seq)
        return seq

    def track(self, value, seq: int):
        if isinstance(value, (JavaArray, JavaList)):
            self.objects[id(value)] = value
            self.obj_def_seq[id(value)] = seq

    def last_def_seq(self, name: str, value) -> int:
        # -1 means "no defining entry", e.g. a parameter of the root call
        var_seq = self.frame.def_seq.get(name, -1)
        if isinstance(value, (JavaArray, JavaList)):
            return max(var_seq, self.obj_def_seq.get(id(value), -1))
        return var_seq

    def fail(self, message: str) -> JavaRuntimeError:
        return JavaRuntimeError(message, line=self.current_line, seq=len(self.entries))

    # -- statement execution ---------------------------------------------------

    def run_block(self, block: Block, parent: Optional[int]):
        for stmt in block.body:
            self.exec_stmt(stmt, parent)

    def exec_stmt(self, stmt: Stmt, parent: Optional[int]):
        self.current_line = stmt.line
        if isinstance(stmt, Block):
            self.run_block(stmt, parent)
        elif isinstance(stmt, VarDecl):
            ctx = _Ctx()
            defs: dict[str, object] = {}
            for name, init in stmt.declarators:
                if init is None:
                    value = zero_of(stmt.type_name)
                else:
                    value = self.eval(init, ctx, stmt, parent,
                                      decl_type=stmt.type_name)
                self.frame.vars[name] = value
                defs[name] = value
            defs.update(ctx.writes)
            self.emit(stmt, defs, ctx, parent)
        elif isinstance(stmt, AssignStmt):
            ctx = _Ctx()
            self.exec_assign(stmt.expr, ctx, stmt, parent)
            self.emit(stmt, dict(ctx.writes), ctx, parent)
        elif isinstance(stmt, IncrStmt):
            ctx = _Ctx()
            self.eval(stmt.expr, ctx, stmt, parent)
            self.emit(stmt, dict(ctx.writes), ctx, parent)
        elif isinstance(stmt, ExprStmt):
            ctx = _Ctx()
            self.eval(stmt.expr, ctx, stmt, parent)
            self.emit(stmt, dict(ctx.writes), ctx, parent)
        elif isinstance(stmt, ReturnStmt):
            ctx = _Ctx()
            value = None
            if stmt.value is not None:
                value = self.eval(stmt.value, ctx, stmt, parent)
            seq = self.emit(stmt, {"@ret": value}, ctx, parent, role="return")
            raise _Return(value, seq)
        elif isinstance(stmt, IfStmt):
            ctx = _Ctx()
            cond = self.truthy(self.eval(stmt.cond, ctx, stmt, parent))
            guard_seq = self.emit(stmt, dict(ctx.writes), ctx, parent, role="guard")
            if cond:
                self.run_block(stmt.then_body, guard_seq)
            elif stmt.else_body is not None:
                self.exec_stmt(stmt.else_body, guard_seq)
        elif isinstance(stmt, WhileStmt):
            while True:
                self.current_line = stmt.line
                ctx = _Ctx()
                cond = self.truthy(self.eval(stmt.cond, ctx, stmt, parent))
                guard_seq = self.emit(stmt, dict(ctx.writes), ctx, parent, role="guard")
                if not cond:
                    break
                self.run_block(stmt.body, guard_seq)
        elif isinstance(stmt, DoWhileStmt):
            body_parent = parent
            while True:
                self.run_block(stmt.body, body_parent)
                self.current_line = stmt.line
                ctx = _Ctx()
                cond = self.truthy(self.eval(stmt.cond, ctx, stmt, parent))
                guard_seq = self.emit(stmt, dict(ctx.writes), ctx, parent, role="guard")
                if not cond:
                    break
                body_parent = guard_seq
        elif isinstance(stmt, ForStmt):
            if stmt.init is not None:
                self.exec_stmt(stmt.init, parent)
            while True:
                self.current_line = stmt.line
                ctx = _Ctx()
                cond = True
                if stmt.cond is not None:
                    cond = self.truthy(self.eval(stmt.cond, ctx, stmt, parent))
                guard_seq = self.emit(stmt, dict(ctx.writes), ctx, parent, role="guard")
                if not cond:
                    break
                self.run_block(stmt.body, guard_seq)
                if stmt.update is not None:
                    self.exec_stmt(stmt.update, guard_seq)
        elif isinstance(stmt, ForEachStmt):
            ctx = _Ctx()
            iterable = self.eval(stmt.iterable, ctx, stmt, parent)
            if isinstance(iterable, (JavaArray, JavaList)):
                elements = list(iterable.elements)
            elif isinstance(iterable, str):
                elements = list(iterable)
            else:
                raise self.fail("enhanced for needs an array, list, or string")
            for element in elements:
                header_ctx = _Ctx()
                header_ctx.reads.update(ctx.reads)
                self.frame.vars[stmt.var_name] = element
                header_seq = self.emit(
                    stmt, {stmt.var_name: element}, header_ctx, parent, role="guard"
                )
                self.run_block(stmt.body, header_seq)
        else:
            raise self.fail(f"cannot execute statement kind {stmt.kind!r}")

    def exec_assign(self, expr: AssignExpr, ctx: _Ctx, stmt: Stmt, parent: Optional[int]):
        target = expr.target
        if isinstance(target, Name):
            value = self.eval(expr.value, ctx, stmt, parent)
            if expr.op != "=":
                old = self.read_var(target.name, ctx)
                value = self.binop(expr.op[:-1], old, value)
            self.frame.vars[target.name] = value
            ctx.writes[target.name] = value
        elif isinstance(target, ArrayIndex):
            arr = self.eval(target.base, ctx, stmt, parent)
            index = self.eval(target.index, ctx, stmt, parent)
            value = self.eval(expr.value, ctx, stmt, parent)
            if not isinstance(arr, JavaArray):
                raise self.fail("indexed assignment needs an array")
            if expr.op != "=":
                try:
                    old = arr.get(index)
                except IndexError:
                    raise self.fail(f"index {index} out of bounds for length {arr.length}")
                value = self.binop(expr.op[:-1], old, value)
            try:
                arr.set(index, value)
            except IndexError:
                raise self.fail(f"index {index} out of bounds for length {arr.length}")
            ctx.mutated.append(arr)
            root = self.root_name(target)
            if root is not None:
                ctx.writes[root] = self.frame.vars.get(root, arr)
        else:
            raise self.fail("assignment target must be a variable or array element")

    # -- expression evaluation ------------------------------------------------

    def read_var(self, name: str, ctx: _Ctx):
        if name not in self.frame.vars:
            raise self.fail(f"{name} is not defined")
        value = self.frame.vars[name]
        seq = self.last_def_seq(name, value)
        if seq >= 0:
            ctx.reads[name] = seq
        return value

    def root_name(self, expr: Expr) -> Optional[str]:
        while isinstance(expr, (ArrayIndex, FieldAccess)):
            expr = expr.base
        if isinstance(expr, Name) and expr.name in self.frame.vars:
            return expr.name
        return None

    def truthy(self, value) -> bool:
        if isinstance(value, bool):
            return value
        raise self.fail("condition did not evaluate to a boolean")

    def eval(self, expr: Expr, ctx: _Ctx, stmt: Stmt, parent: Optional[int],
             decl_type: str = ""):
        if isinstance(expr, IntLit):
            return wrap_int(expr.value)
        if isinstance(expr, FloatLit):
            return expr.value
        if isinstance(expr, StringLit):
            return expr.value
        if isinstance(expr, CharLit):
            return expr.value
        if isinstance(expr, BoolLit):
            return expr.value
        if isinstance(expr, NullLit):
            return None
        if isinstance(expr, Name):
            if expr.name in self.frame.vars:
                return self.read_var(expr.name, ctx)
            raise self.fail(f"{expr.name} is not defined")
        if isinstance(expr, ArrayIndex):
            arr = self.eval(expr.base, ctx, stmt, parent)
            index = self.eval(expr.index, ctx, stmt, parent)
            if isinstance(arr, JavaArray):
                try:
                    return arr.get(index)
                except IndexError:
                    raise self.fail(f"index {index} out of bounds for length {arr.length}")
            raise self.fail("indexing needs an array")
        if isinstance(expr, FieldAccess):
            return self.eval_field(expr, ctx, stmt, parent)
        if isinstance(expr, MethodCall):
            return self.eval_call(expr, ctx, stmt, parent)
        if isinstance(expr, NewObject):
            if expr.type_name in LIST_TYPES:
                if expr.args:
                    raise self.fail(f"{expr.type_name} constructor takes no arguments here")
                return JavaList()
            raise self.fail(f"cannot construct {expr.type_name}")
        if isinstance(expr, NewArray):
            if expr.init is not None:
                return self.eval(expr.init, ctx, stmt, parent, decl_type=expr.elem_type)
            dims = [self.eval(d, ctx, stmt, parent) for d in expr.dims if d is not None]
            if not dims or any(not isinstance(d, int) or isinstance(d, bool) for d in dims):
                raise self.fail("array dimensions must be integers")
            if any(d < 0 for d in dims):
                raise self.fail("negative array size")
            return new_array(expr.elem_type, dims)
        if isinstance(expr, ArrayInit):
            elem = decl_type.replace("[]", "") if decl_type else "int"
            values = [self.eval(v, ctx, stmt, parent, decl_type=elem)
                      for v in expr.values]
            return JavaArray(values)
        if isinstance(expr, Unary):
            return self.eval_unary(expr, ctx, stmt, parent)
        if isinstance(expr, Binary):
            return self.eval_binary(expr, ctx, stmt, parent)
        if isinstance(expr, Ternary):
            cond = self.truthy(self.eval(expr.cond, ctx, stmt, parent))
            chosen = expr.then if cond else expr.other
            return self.eval(chosen, ctx, stmt, parent)
        if isinstance(expr, Cast):
            value = self.eval(expr.operand, ctx, stmt, parent)
            return self.cast(expr.type_name, value)
        if isinstance(expr, AssignExpr):
            raise self.fail("assignment is a statement, not an expression, here")
        raise self.fail(f"cannot evaluate {type(expr).__name__}")

    def eval_field(self, expr: FieldAccess, ctx: _Ctx, stmt: Stmt, parent):
        if isinstance(expr.base, Name) and expr.base.name not in self.frame.vars:
            if expr.base.name == "System" and expr.name in ("out", "err"):
                return _SYSTEM_OUT
            const = CLASS_CONSTANTS.get((expr.base.name, expr.name))
            if const is not None:
                return const
            raise self.fail(f"unknown field {expr.base.name}.{expr.name}")
        base = self.eval(expr.base, ctx, stmt, parent)
        if isinstance(base, JavaArray) and expr.name == "length":
            return base.length
        raise self.fail(f"unknown field .{expr.name}")

    def eval_call(self, call: MethodCall, ctx: _Ctx, stmt: Stmt, parent):
        if call.receiver is None:
            if call.name in self.methods:
                return self.call_user(call, ctx, stmt, parent)
            raise self.fail(f"unknown method {call.name}")
        # static library receivers
        if isinstance(call.receiver, Name) and call.receiver.name not in self.frame.vars:
            cls = call.receiver.name
            args = [self.eval(a, ctx, stmt, parent) for a in call.args]
            return self.static_call(cls, call.name, args)
        receiver = self.eval(call.receiver, ctx, stmt, parent)
        args = [self.eval(a, ctx, stmt, parent) for a in call.args]
        if receiver is _SYSTEM_OUT:
            if call.name in ("println", "print"):
                return None
            raise self.fail(f"unknown method System.out.{call.name}")
        if isinstance(receiver, JavaList):
            try:
                result = receiver.call(call.name, args)
            except IndexError as exc:
                raise self.fail(f"index {exc.args[0]} out of bounds for list "
                                f"of size {len(receiver.elements)}")
            except KeyError:
                raise self.fail(f"unsupported list method {call.name}")
            if call.name in JavaList.MUTATORS:
                ctx.mutated.append(receiver)
                root = self.root_name(call.receiver)
                if root is not None:
                    ctx.writes[root] = receiver
            return result
        if isinstance(receiver, str):
            return self.string_call(receiver, call.name, args)
        raise self.fail(f"cannot call .{call.name} on {render_value(receiver)}")

    def static_call(self, cls: str, name: str, args: list):
        if cls == "Math":
            try:
                return self.math_call(name, args)
            except (TypeError, ValueError):
                raise self.fail(f"bad arguments to Math.{name}")
        raise self.fail(f"unknown method {cls}.{name}")

    def math_call(self, name: str, args: list):
        if name == "max":
            return max(args)
        if name == "min":
            return min(args)
        if name == "abs":
            a = args[0]
            return wrap_int(abs(a)) if isinstance(a, int) else abs(a)
        if name == "sqrt":
            a = float(args[0])
            return math.sqrt(a) if a >= 0 else math.nan
        if name == "pow":
            return float(args[0]) ** float(args[1])
        if name == "floor":
            return float(math.floor(args[0]))
        if name == "ceil":
            return float(math.ceil(args[0]))
        raise self.fail(f"unknown method Math.{name}")

    def string_call(self, receiver: str, name: str, args: list):
        if name == "length":
            return len(receiver)
        if name == "charAt":
            index = args[0]
            if not 0 <= index < len(receiver):
                raise self.fail(f"string index {index} out of bounds for length {len(receiver)}")
            return receiver[index]
        if name == "substring":
            start = args[0]
            end = args[1] if len(args) > 1 else len(receiver)
            if not 0 <= start <= end <= len(receiver):
                raise self.fail(f"substring range {start}..{end} out of bounds")
            return receiver[start:end]
        if name == "equals":
            return receiver == args[0]
        if name == "isEmpty":
            return len(receiver) == 0
        if name == "indexOf":
            return receiver.find(args[0])
        if name == "contains":
            return args[0] in receiver
        raise self.fail(f"unsupported string method {name}")

    def call_user(self, call: MethodCall, ctx: _Ctx, stmt: Stmt, parent):
        method = self.methods[call.name]
        if len(call.args) != len(method.params):
            raise self.fail(
                f"{call.name} expects {len(method.params)} arguments, got {len(call.args)}"
            )
        arg_ctx = _Ctx()
        args = [self.eval(a, arg_ctx, stmt, parent) for a in call.args]
        defs = {pname: value for (_, pname), value in zip(method.params, args)}
        frame = _Frame()
        for (_, pname), value in zip(method.params, args):
            frame.vars[pname] = value
        # frame pushed first so the parameter defs land in the callee frame
        self.frames.append(frame)
        call_seq = self.emit(stmt, defs, arg_ctx, parent, role="call")
        try:
            self.run_block(method.body, call_seq)
            value, ret_seq = None, None
        except _Return as ret:
            value, ret_seq = ret.value, ret.seq
        finally:
            self.frames.pop()
        if ret_seq is not None:
            ctx.note_ret(ret_seq)
        return value

    def eval_unary(self, expr: Unary, ctx: _Ctx, stmt: Stmt, parent):
        if expr.op in ("++", "--"):
            delta = 1 if expr.op == "++" else -1
            target = expr.operand
            if isinstance(target, Name):
                old = self.read_var(target.name, ctx)
                new = self.binop("+", old, delta)
                self.frame.vars[target.name] = new
                ctx.writes[target.name] = new
                return new if expr.prefix else old
            if isinstance(target, ArrayIndex):
                arr = self.eval(target.base, ctx, stmt, parent)
                index = self.eval(target.index, ctx, stmt, parent)
                if not isinstance(arr, JavaArray):
                    raise self.fail("increment target must be a variable or array element")
                try:
                    old = arr.get(index)
                    new = self.binop("+", old, delta)
                    arr.set(index, new)
                except IndexError:
                    raise self.fail(f"index {index} out of bounds for length {arr.length}")
                ctx.mutated.append(arr)
                root = self.root_name(target)
                if root is not None:
                    ctx.writes[root] = self.frame.vars.get(root, arr)
                return new if expr.prefix else old
            raise self.fail("increment target must be a variable or array element")
        value = self.eval(expr.operand, ctx, stmt, parent)
        if expr.op == "-":
            return wrap_int(-value) if isinstance(value, int) and not isinstance(value, bool) \
                else -value
        if expr.op == "+":
            return value
        if expr.op == "!":
            return not self.truthy(value)
        if expr.op == "~":
            if isinstance(value, bool) or not isinstance(value, int):
                raise self.fail("~ needs an integer")
            return wrap_int(~value)
        raise self.fail(f"unknown unary operator {expr.op}")

    def eval_binary(self, expr: Binary, ctx: _Ctx, stmt: Stmt, parent):
        if expr.op == "&&":
            left = self.truthy(self.eval(expr.left, ctx, stmt, parent))
            if not left:
                return False
            return self.truthy(self.eval(expr.right, ctx, stmt, parent))
        if expr.op == "||":
            left = self.truthy(self.eval(expr.left, ctx, stmt, parent))
            if left:
                return True
            return self.truthy(self.eval(expr.right, ctx, stmt, parent))
        left = self.eval(expr.left, ctx, stmt, parent)
        right = self.eval(expr.right, ctx, stmt, parent)
        return self.binop(expr.op, left, right)

    def binop(self, op: str, left, right):
        if op == "==":
            return self.same(left, right)
        if op == "!=":
            return not self.same(left, right)
        if op == "+" and (isinstance(left, str) or isinstance(right, str)):
            ls = left if isinstance(left, str) else render_value(left)
            rs = right if isinstance(right, str) else render_value(right)
            return ls + rs
        if isinstance(left, bool) and isinstance(right, bool):
            if op == "&":
                return left and right
            if op == "|":
                return left or right
            if op == "^":
                return left != right
        if not self.numeric(left) or not self.numeric(right):
            raise self.fail(f"operator {op} needs numeric operands")
        if op in ("<", "<=", ">", ">="):
            return {"<": left < right, "<=": left <= right,
                    ">": left > right, ">=": left >= right}[op]
        if isinstance(left, float) or isinstance(right, float):
            a, b = float(left), float(right)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            if op == "/":
                return float_div(a, b)
            if op == "%":
                try:
                    return math.fmod(a, b)
                except ValueError:  # 0.0 divisor or infinite dividend
                    return math.nan
            raise self.fail(f"operator {op} needs integer operands")
        a, b = left, right
        if op == "+":
            return wrap_int(a + b)
        if op == "-":
            return wrap_int(a - b)
        if op == "*":
            return wrap_int(a * b)
        if op == "/":
            if b == 0:
                raise self.fail("/ by zero")
            return java_div(a, b)
        if op == "%":
            if b == 0:
                raise self.fail("/ by zero")
            return java_rem(a, b)
        if op == "&":
            return wrap_int(a & b)
        if op == "|":
            return wrap_int(a | b)
        if op == "^":
            return wrap_int(a ^ b)
        if op == "<<":
            return wrap_int(a << (b & 63))
        if op == ">>":
            return wrap_int(a >> (b & 63))
        raise self.fail(f"unknown operator {op}")

    @staticmethod
    def numeric(value) -> bool:
        return isinstance(value, (int, float)) and not isinstance(value, bool)

    def same(self, left, right) -> bool:
        # reference semantics for objects, value semantics for primitives
        if isinstance(left, (JavaArray, JavaList)) or isinstance(right, (JavaArray, JavaList)):
            return left is right
        return left == right

    def cast(self, type_name: str, value):
        if type_name in ("int", "long", "short", "byte"):
            if isinstance(value, float):
                if math.isnan(value):
                    return 0
                # narrowing a float saturates at the integer range bounds
                if value >= float(INT_MAX):
                    return INT_MAX
                if value <= float(INT_MIN):
                    return INT_MIN
                return int(value)  # truncation toward zero
            if isinstance(value, int) and not isinstance(value, bool):
                return wrap_int(value)
            raise self.fail(f"cannot cast {render_value(value)} to {type_name}")
        if type_name in ("double", "float"):
            if self.numeric(value):
                return float(value)
            raise self.fail(f"cannot cast {render_value(value)} to {type_name}")
        if type_name == "boolean":
            if isinstance(value, bool):
                return value
            raise self.fail("cannot cast to boolean")
        raise self.fail(f"unsupported cast to {type_name}")


def execute(ast: Ast, step_budget: int = DEFAULT_STEP_BUDGET) -> ExecutionTrace:
    """Run main() to completion, recording the trace.

    Raises NotFound without a main method, StepBudgetExceeded past the
    budget, JavaRuntimeError on arithmetic/index faults.
    """
    main = ast.main_method()
    if main is None:
        raise NotFound("program has no main method")
    interp = Interpreter(ast, step_budget)
    interp.frames.append(_Frame())
    for ptype, pname in main.params:
        # a harness-style main takes no inputs; arrays default to empty
        interp.frame.vars[pname] = JavaArray([]) if ptype.endswith("[]") else zero_of(ptype)
    returned = None
    try:
        interp.run_block(main.body, None)
    except _Return as ret:
        returned = ret.value
    return ExecutionTrace(
        ast=ast, entries=interp.entries, returned=render_value(returned)
    )
