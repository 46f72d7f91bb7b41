"""Lexer, parser, and def/use resolution for the Java subset."""

from __future__ import annotations

from .ast_nodes import Ast, MethodDecl, Stmt
from .parser import parse_program, statement_at, try_parse_program

__all__ = ["Ast", "MethodDecl", "Stmt", "parse_program", "statement_at", "try_parse_program"]
