"""Recursive-descent parser producing line-anchored ASTs.

parse_program is total: any byte input yields either an Ast or a
ParseError naming the offending position and construct.
"""

from __future__ import annotations

from typing import Optional

from ..errors import NotFound, ParseError
from .ast_nodes import (
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
    ClassDeclStmt,
    DoWhileStmt,
    Expr,
    ExprStmt,
    FieldAccess,
    FloatLit,
    ForEachStmt,
    ForStmt,
    IfStmt,
    ImportStmt,
    IncrStmt,
    IntLit,
    MethodCall,
    MethodDecl,
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
from .defuse import resolve_def_use
from .lexer import UNSUPPORTED_KEYWORDS, Token, tokenize

PRIMITIVE_TYPES = {"int", "long", "double", "float", "boolean", "char", "void"}
MODIFIERS = {"public", "private", "protected", "static", "final"}

ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%="}

# binary operator precedence, loosest first
_BINARY_LEVELS = [
    ["||"],
    ["&&"],
    ["|"],
    ["^"],
    ["&"],
    ["==", "!="],
    ["<", ">", "<=", ">="],
    ["<<", ">>"],
    ["+", "-"],
    ["*", "/", "%"],
]


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.sid_counter = 0
        self.statements: list[Stmt] = []
        self.current_method: Optional[str] = None

    # -- token plumbing ----------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        i = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[i]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, kind: str, value: Optional[str] = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (value is None or tok.value == value)

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        tok = self.peek()
        if not self.at(kind, value):
            want = value if value is not None else kind
            self.error(f"unexpected {describe(tok)}", expected=repr(want))
        return self.advance()

    def error(self, message: str, expected: str = ""):
        tok = self.peek()
        self.check_unsupported(tok)
        raise ParseError(message, tok.line, tok.column, expected)

    def check_unsupported(self, tok: Token):
        if tok.kind == "ident" and tok.value in UNSUPPORTED_KEYWORDS:
            raise ParseError(
                f"unsupported construct: {tok.value!r} is outside the Java subset",
                tok.line, tok.column,
            )
        if tok.kind == "op" and tok.value == "->":
            raise ParseError(
                "unsupported construct: lambda expressions are outside the Java subset",
                tok.line, tok.column,
            )

    def lines_between(self, start_idx: int, end_idx: int) -> frozenset[int]:
        return frozenset(t.line for t in self.tokens[start_idx:end_idx])

    def new_sid(self) -> int:
        self.sid_counter += 1
        return self.sid_counter - 1

    def register(self, stmt: Stmt) -> Stmt:
        stmt.sid = self.new_sid()
        stmt.method = self.current_method
        self.statements.append(stmt)
        return stmt

    # -- toplevel ----------------------------------------------------------

    def parse_compilation_unit(self, program_id: str, source: str) -> Ast:
        imports: list[ImportStmt] = []
        classes: list[ClassDeclStmt] = []
        while self.at("keyword", "import"):
            imports.append(self.parse_import())
        while not self.at("eof"):
            classes.append(self.parse_class())
        if not classes:
            self.error("no class declaration found", expected="'class'")
        ast = Ast(
            program_id=program_id,
            source_lines=tuple(source.split("\n")),
            imports=imports,
            classes=classes,
            statements=self.statements,
        )
        resolve_def_use(ast)
        return ast

    def parse_import(self) -> ImportStmt:
        start = self.pos
        first = self.expect("keyword", "import")
        parts = [self.expect("ident").value]
        while self.at("op", "."):
            self.advance()
            if self.at("op", "*"):
                parts.append(self.advance().value)
                break
            parts.append(self.expect("ident").value)
        last = self.expect("op", ";")
        stmt = ImportStmt(
            line=first.line,
            end_line=last.line,
            content_lines=self.lines_between(start, self.pos),
            module=".".join(parts),
        )
        return self.register(stmt)

    def parse_class(self) -> ClassDeclStmt:
        start = self.pos
        first = self.peek()
        while self.peek().kind == "keyword" and self.peek().value in MODIFIERS:
            self.advance()
        self.check_unsupported(self.peek())
        self.expect("keyword", "class")
        name = self.expect("ident").value
        header_end = self.pos
        self.expect("op", "{")
        stmt = ClassDeclStmt(
            line=first.line,
            end_line=first.line,
            content_lines=self.lines_between(start, header_end),
            name=name,
        )
        self.register(stmt)
        methods = []
        while not self.at("op", "}"):
            methods.append(self.parse_method(name))
        last = self.expect("op", "}")
        stmt.methods = methods
        stmt.end_line = last.line
        return stmt

    def parse_method(self, class_name: str) -> MethodDecl:
        start = self.pos
        first = self.peek()
        while self.peek().kind == "keyword" and self.peek().value in MODIFIERS:
            self.advance()
        self.check_unsupported(self.peek())
        return_type = self.parse_type()
        name = self.expect("ident").value
        self.expect("op", "(")
        params: list[tuple[str, str]] = []
        while not self.at("op", ")"):
            if params:
                self.expect("op", ",")
            ptype = self.parse_type()
            pname = self.expect("ident").value
            params.append((ptype, pname))
        self.expect("op", ")")
        header_end = self.pos
        prev_method = self.current_method
        self.current_method = name
        body = self.parse_block()
        self.current_method = prev_method
        return MethodDecl(
            name=name,
            class_name=class_name,
            return_type=return_type,
            params=params,
            body=body,
            header_line=first.line,
            header_lines=self.lines_between(start, header_end),
            end_line=body.end_line,
        )

    def parse_type(self) -> str:
        tok = self.peek()
        self.check_unsupported(tok)
        if tok.kind == "keyword" and tok.value in PRIMITIVE_TYPES:
            base = self.advance().value
        elif tok.kind == "ident":
            base = self.advance().value
            if self.at("op", "<"):
                base += self.parse_generic_suffix()
        else:
            self.error(f"unexpected {describe(tok)}", expected="a type name")
        while self.at("op", "[") and self.peek(1).kind == "op" and self.peek(1).value == "]":
            self.advance()
            self.advance()
            base += "[]"
        return base

    def parse_generic_suffix(self) -> str:
        # raw source of <...>, diamonds included; depth-matched, not interpreted
        parts = [self.expect("op", "<").value]
        depth = 1
        while depth > 0:
            tok = self.advance()
            if tok.kind == "eof":
                self.error("unterminated generic type argument", expected="'>'")
            if tok.kind == "op" and tok.value == "<":
                depth += 1
            elif tok.kind == "op" and tok.value == ">":
                depth -= 1
            elif tok.kind == "op" and tok.value == ">>":
                depth -= 2
            parts.append(tok.value)
        return "".join(parts)

    def looks_like_decl(self) -> bool:
        """Type IDENT ... at statement position."""
        tok = self.peek()
        if tok.kind == "keyword" and tok.value in PRIMITIVE_TYPES:
            return True
        if tok.kind != "ident":
            return False
        nxt = self.peek(1)
        if nxt.kind == "ident":
            return True  # List x / ArrayList y
        if nxt.kind == "op" and nxt.value == "<":
            # Foo<...> ident — distinguish from a comparison "a < b"
            return self.generic_closes_before_statement_end()
        if nxt.kind == "op" and nxt.value == "[":
            # int[] a / ident[] a vs indexing a[i]
            after = self.peek(2)
            return after.kind == "op" and after.value == "]"
        return False

    def generic_closes_before_statement_end(self) -> bool:
        depth = 0
        i = self.pos + 1
        while i < len(self.tokens):
            tok = self.tokens[i]
            if tok.kind == "op" and tok.value == "<":
                depth += 1
            elif tok.kind == "op" and tok.value == ">":
                depth -= 1
                if depth == 0:
                    nxt = self.tokens[i + 1] if i + 1 < len(self.tokens) else None
                    return nxt is not None and nxt.kind == "ident"
            elif tok.kind == "op" and tok.value == ">>":
                depth -= 2
                if depth <= 0:
                    nxt = self.tokens[i + 1] if i + 1 < len(self.tokens) else None
                    return nxt is not None and nxt.kind == "ident"
            elif tok.kind == "op" and tok.value in (";", "{", "}"):
                return False
            elif tok.kind == "eof":
                return False
            i += 1
        return False

    # -- statements --------------------------------------------------------

    def parse_block(self) -> Block:
        start = self.pos
        first = self.expect("op", "{")
        body = []
        while not self.at("op", "}"):
            if self.at("eof"):
                self.error("unterminated block", expected="'}'")
            body.append(self.parse_statement())
        last = self.expect("op", "}")
        blk = Block(
            line=first.line,
            end_line=last.line,
            content_lines=frozenset(),  # braces are not slicable content
            body=body,
        )
        return self.register(blk)

    def parse_statement(self) -> Stmt:
        tok = self.peek()
        self.check_unsupported(tok)
        if tok.kind == "op" and tok.value == "{":
            return self.parse_block()
        if tok.kind == "keyword":
            if tok.value == "if":
                return self.parse_if()
            if tok.value == "for":
                return self.parse_for()
            if tok.value == "while":
                return self.parse_while()
            if tok.value == "do":
                return self.parse_do_while()
            if tok.value == "return":
                return self.parse_return()
            if tok.value == "import":
                self.error("import declarations must precede the class body")
        if self.looks_like_decl():
            return self.parse_var_decl()
        return self.parse_expr_statement()

    def parse_if(self) -> IfStmt:
        start = self.pos
        first = self.expect("keyword", "if")
        self.expect("op", "(")
        cond = self.parse_expression()
        header_end_tok = self.expect("op", ")")
        header_lines = self.lines_between(start, self.pos)
        stmt = IfStmt(
            line=first.line,
            end_line=header_end_tok.line,
            content_lines=header_lines,
            cond=cond,
        )
        self.register(stmt)
        stmt.then_body = self.parse_body_as_block()
        stmt.end_line = stmt.then_body.end_line
        if self.at("keyword", "else"):
            else_tok = self.advance()
            stmt.content_lines = stmt.content_lines | {else_tok.line}
            if self.at("keyword", "if"):
                stmt.else_body = self.parse_if()
            else:
                stmt.else_body = self.parse_body_as_block()
            stmt.end_line = stmt.else_body.end_line
        return stmt

    def parse_body_as_block(self) -> Block:
        """Brace blocks parse as-is; single statements wrap into a block."""
        if self.at("op", "{"):
            return self.parse_block()
        inner = self.parse_statement()
        blk = Block(
            line=inner.line,
            end_line=inner.end_line,
            content_lines=frozenset(),
            body=[inner],
        )
        return self.register(blk)

    def parse_while(self) -> WhileStmt:
        start = self.pos
        first = self.expect("keyword", "while")
        self.expect("op", "(")
        cond = self.parse_expression()
        self.expect("op", ")")
        stmt = WhileStmt(
            line=first.line,
            end_line=first.line,
            content_lines=self.lines_between(start, self.pos),
            cond=cond,
        )
        self.register(stmt)
        stmt.body = self.parse_body_as_block()
        stmt.end_line = stmt.body.end_line
        return stmt

    def parse_do_while(self) -> DoWhileStmt:
        start = self.pos
        first = self.expect("keyword", "do")
        stmt = DoWhileStmt(
            line=first.line,
            end_line=first.line,
            content_lines=frozenset({first.line}),
        )
        self.register(stmt)
        stmt.body = self.parse_body_as_block()
        while_start = self.pos
        self.expect("keyword", "while")
        self.expect("op", "(")
        stmt.cond = self.parse_expression()
        self.expect("op", ")")
        last = self.expect("op", ";")
        stmt.content_lines = stmt.content_lines | self.lines_between(while_start, self.pos)
        stmt.end_line = last.line
        return stmt

    def parse_for(self) -> Stmt:
        start = self.pos
        first = self.expect("keyword", "for")
        self.expect("op", "(")
        # enhanced for: "for (Type name : expr)"
        if self.looks_like_decl():
            save = self.pos
            var_type = self.parse_type()
            if self.at("ident") and self.peek(1).kind == "op" and self.peek(1).value == ":":
                var_name = self.advance().value
                self.advance()  # ':'
                iterable = self.parse_expression()
                self.expect("op", ")")
                stmt = ForEachStmt(
                    line=first.line,
                    end_line=first.line,
                    content_lines=self.lines_between(start, self.pos),
                    var_type=var_type,
                    var_name=var_name,
                    iterable=iterable,
                )
                self.register(stmt)
                stmt.body = self.parse_body_as_block()
                stmt.end_line = stmt.body.end_line
                return stmt
            self.pos = save
        stmt = ForStmt(line=first.line, end_line=first.line, content_lines=frozenset())
        self.register(stmt)
        if not self.at("op", ";"):
            if self.looks_like_decl():
                stmt.init = self.parse_var_decl()
            else:
                stmt.init = self.parse_simple_assignment(terminator=";")
        else:
            self.advance()  # empty init: consume ';'
        if not self.at("op", ";"):
            stmt.cond = self.parse_expression()
        self.expect("op", ";")
        if not self.at("op", ")"):
            stmt.update = self.parse_simple_assignment(terminator=")")
        self.expect("op", ")")
        stmt.content_lines = self.lines_between(start, self.pos)
        stmt.body = self.parse_body_as_block()
        stmt.end_line = stmt.body.end_line
        return stmt

    def parse_simple_assignment(self, terminator: str) -> Stmt:
        """Assignment / increment inside a for header; does not consume the terminator
        unless it is ';' in init position."""
        start = self.pos
        first = self.peek()
        expr = self.parse_statement_expression()
        lines = self.lines_between(start, self.pos)
        if terminator == ";":
            last = self.expect("op", ";")
            end_line = last.line
        else:
            end_line = self.tokens[self.pos - 1].line
        if isinstance(expr, AssignExpr):
            stmt = AssignStmt(line=first.line, end_line=end_line, content_lines=lines, expr=expr)
        elif isinstance(expr, Unary) and expr.op in ("++", "--"):
            stmt = IncrStmt(line=first.line, end_line=end_line, content_lines=lines, expr=expr)
        else:
            raise ParseError(
                "for-header clause must be an assignment or increment",
                first.line, first.column,
            )
        return self.register(stmt)

    def parse_var_decl(self) -> VarDecl:
        start = self.pos
        first = self.peek()
        type_name = self.parse_type()
        declarators: list[tuple[str, Optional[Expr]]] = []
        while True:
            name_tok = self.expect("ident")
            name = name_tok.value
            if self.at("op", "[") and self.peek(1).value == "]":
                raise ParseError(
                    "array brackets belong on the type, not the variable name, in this subset",
                    name_tok.line, name_tok.column,
                )
            init: Optional[Expr] = None
            if self.at("op", "="):
                self.advance()
                if self.at("op", "{"):
                    init = self.parse_array_initializer()
                else:
                    init = self.parse_expression()
            declarators.append((name, init))
            if self.at("op", ","):
                self.advance()
                continue
            break
        last = self.expect("op", ";")
        stmt = VarDecl(
            line=first.line,
            end_line=last.line,
            content_lines=self.lines_between(start, self.pos),
            type_name=type_name,
            declarators=declarators,
        )
        return self.register(stmt)

    def parse_array_initializer(self) -> ArrayInit:
        first = self.expect("op", "{")
        values = []
        while not self.at("op", "}"):
            if values:
                self.expect("op", ",")
            if self.at("op", "{"):
                values.append(self.parse_array_initializer())
            else:
                values.append(self.parse_expression())
        self.expect("op", "}")
        return ArrayInit(line=first.line, values=values)

    def parse_return(self) -> ReturnStmt:
        start = self.pos
        first = self.expect("keyword", "return")
        value = None
        if not self.at("op", ";"):
            value = self.parse_expression()
        last = self.expect("op", ";")
        stmt = ReturnStmt(
            line=first.line,
            end_line=last.line,
            content_lines=self.lines_between(start, self.pos),
            value=value,
        )
        return self.register(stmt)

    def parse_expr_statement(self) -> Stmt:
        start = self.pos
        first = self.peek()
        expr = self.parse_statement_expression()
        last = self.expect("op", ";")
        lines = self.lines_between(start, self.pos)
        if isinstance(expr, AssignExpr):
            stmt = AssignStmt(line=first.line, end_line=last.line, content_lines=lines, expr=expr)
        elif isinstance(expr, Unary) and expr.op in ("++", "--"):
            stmt = IncrStmt(line=first.line, end_line=last.line, content_lines=lines, expr=expr)
        elif isinstance(expr, (MethodCall, NewObject)):
            stmt = ExprStmt(line=first.line, end_line=last.line, content_lines=lines, expr=expr)
        else:
            raise ParseError(
                "expression statement must be a call, assignment, or increment",
                first.line, first.column,
            )
        return self.register(stmt)

    # -- expressions ---------------------------------------------------------

    def parse_statement_expression(self) -> Expr:
        """Expression in statement position; assignments allowed here only."""
        expr = self.parse_expression()
        tok = self.peek()
        if tok.kind == "op" and tok.value in ASSIGN_OPS:
            if not isinstance(expr, (Name, ArrayIndex)):
                self.error("assignment target must be a variable or array element")
            op = self.advance().value
            if self.at("op", "{"):
                value = self.parse_array_initializer()
            else:
                value = self.parse_expression()
            return AssignExpr(line=expr.line, target=expr, op=op, value=value)
        return expr

    def parse_expression(self) -> Expr:
        return self.parse_ternary()

    def parse_ternary(self) -> Expr:
        cond = self.parse_binary(0)
        if self.at("op", "?"):
            self.advance()
            then = self.parse_expression()
            self.expect("op", ":")
            other = self.parse_expression()
            return Ternary(line=cond.line, cond=cond, then=then, other=other)
        return cond

    def parse_binary(self, level: int) -> Expr:
        if level >= len(_BINARY_LEVELS):
            return self.parse_unary()
        left = self.parse_binary(level + 1)
        ops = _BINARY_LEVELS[level]
        while self.peek().kind == "op" and self.peek().value in ops:
            op = self.advance().value
            right = self.parse_binary(level + 1)
            left = Binary(line=left.line, op=op, left=left, right=right)
        return left

    def parse_unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.value in ("-", "+", "!", "~"):
            self.advance()
            operand = self.parse_unary()
            return Unary(line=tok.line, op=tok.value, operand=operand, prefix=True)
        if tok.kind == "op" and tok.value in ("++", "--"):
            self.advance()
            operand = self.parse_unary()
            return Unary(line=tok.line, op=tok.value, operand=operand, prefix=True)
        # cast to a primitive type: "(int) expr"
        if (
            tok.kind == "op" and tok.value == "("
            and self.peek(1).kind == "keyword"
            and self.peek(1).value in PRIMITIVE_TYPES - {"void"}
            and self.peek(2).kind == "op" and self.peek(2).value == ")"
        ):
            self.advance()
            type_name = self.advance().value
            self.advance()
            operand = self.parse_unary()
            return Cast(line=tok.line, type_name=type_name, operand=operand)
        return self.parse_postfix()

    def parse_postfix(self) -> Expr:
        expr = self.parse_primary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value == ".":
                self.advance()
                name = self.expect("ident").value
                if self.at("op", "("):
                    args = self.parse_args()
                    expr = MethodCall(line=expr.line, receiver=expr, name=name, args=args)
                else:
                    expr = FieldAccess(line=expr.line, base=expr, name=name)
            elif tok.kind == "op" and tok.value == "[":
                self.advance()
                index = self.parse_expression()
                self.expect("op", "]")
                expr = ArrayIndex(line=expr.line, base=expr, index=index)
            elif tok.kind == "op" and tok.value in ("++", "--"):
                self.advance()
                expr = Unary(line=expr.line, op=tok.value, operand=expr, prefix=False)
            else:
                return expr

    def parse_args(self) -> list[Expr]:
        self.expect("op", "(")
        args = []
        while not self.at("op", ")"):
            if args:
                self.expect("op", ",")
            args.append(self.parse_expression())
        self.expect("op", ")")
        return args

    def parse_primary(self) -> Expr:
        tok = self.peek()
        self.check_unsupported(tok)
        if tok.kind == "int":
            self.advance()
            return IntLit(line=tok.line, value=int(tok.value))
        if tok.kind == "float":
            self.advance()
            return FloatLit(line=tok.line, value=float(tok.value))
        if tok.kind == "string":
            self.advance()
            return StringLit(line=tok.line, value=unescape(tok.value[1:-1]))
        if tok.kind == "char":
            self.advance()
            return CharLit(line=tok.line, value=unescape(tok.value[1:-1]))
        if tok.kind == "keyword":
            if tok.value in ("true", "false"):
                self.advance()
                return BoolLit(line=tok.line, value=tok.value == "true")
            if tok.value == "null":
                self.advance()
                return NullLit(line=tok.line)
            if tok.value == "new":
                return self.parse_new()
        if tok.kind == "ident":
            self.advance()
            if self.at("op", "("):
                args = self.parse_args()
                return MethodCall(line=tok.line, receiver=None, name=tok.value, args=args)
            return Name(line=tok.line, name=tok.value)
        if tok.kind == "op" and tok.value == "(":
            if self.paren_starts_lambda():
                raise ParseError(
                    "unsupported construct: lambda expressions are outside the Java subset",
                    tok.line, tok.column,
                )
            self.advance()
            expr = self.parse_expression()
            self.expect("op", ")")
            return expr
        self.error(f"unexpected {describe(tok)}", expected="an expression")

    def paren_starts_lambda(self) -> bool:
        """True when the '(' at the cursor opens a lambda parameter list."""
        depth = 0
        i = self.pos
        while i < len(self.tokens):
            tok = self.tokens[i]
            if tok.kind == "op" and tok.value == "(":
                depth += 1
            elif tok.kind == "op" and tok.value == ")":
                depth -= 1
                if depth == 0:
                    nxt = self.tokens[i + 1] if i + 1 < len(self.tokens) else None
                    return nxt is not None and nxt.kind == "op" and nxt.value == "->"
            elif tok.kind == "eof":
                return False
            i += 1
        return False

    def parse_new(self) -> Expr:
        first = self.expect("keyword", "new")
        tok = self.peek()
        if tok.kind == "keyword" and tok.value in PRIMITIVE_TYPES - {"void"}:
            elem = self.advance().value
        else:
            elem = self.expect("ident").value
            if self.at("op", "<"):
                self.parse_generic_suffix()
        if self.at("op", "("):
            args = self.parse_args()
            return NewObject(line=first.line, type_name=elem, args=args)
        if self.at("op", "["):
            dims = []
            while self.at("op", "["):
                self.advance()
                if self.at("op", "]"):
                    self.advance()
                    dims.append(None)
                else:
                    dims.append(self.parse_expression())
                    self.expect("op", "]")
            init = None
            if self.at("op", "{"):
                init = self.parse_array_initializer()
            return NewArray(line=first.line, elem_type=elem, dims=dims, init=init)
        self.error("expected constructor arguments or array dimensions after 'new'")


def unescape(raw: str) -> str:
    return (
        raw.replace("\\n", "\n")
        .replace("\\t", "\t")
        .replace('\\"', '"')
        .replace("\\'", "'")
        .replace("\\\\", "\\")
    )


def describe(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    return f"{tok.kind} {tok.value!r}"


def parse_program(source: str, program_id: str = "<memory>") -> Ast:
    """Parse source text into an Ast, raising ParseError for out-of-subset input."""
    if isinstance(source, bytes):
        source = source.decode("utf-8", errors="replace")
    tokens = tokenize(source)
    return _Parser(tokens).parse_compilation_unit(program_id, source)


def try_parse_program(source: str, program_id: str = "<memory>"):
    """Totality wrapper: returns (Ast, None) or (None, ParseError)."""
    try:
        return parse_program(source, program_id), None
    except ParseError as exc:
        return None, exc
    except RecursionError:
        return None, ParseError("expression nesting too deep", 1, 1)


def statement_at(ast: Ast, line: int) -> Stmt:
    """The statement anchored at or spanning ``line``.

    Ties resolve to the earliest statement in textual order. Blank,
    comment-only, and brace-only lines raise NotFound.
    """
    for stmt in ast.statements:
        if stmt.kind == "block":
            continue
        if stmt.line == line:
            return stmt
    for stmt in ast.statements:
        if stmt.kind == "block":
            continue
        if line in stmt.content_lines:
            return stmt
    raise NotFound(f"no statement at line {line}")
