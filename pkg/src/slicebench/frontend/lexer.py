"""Tokenizer for the Java subset.

Comments and string/char literal *contents* are lexed and discarded from
any later def/use analysis; only their positions survive (so multi-line
comments still advance the line counter).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ParseError

KEYWORDS = {
    "class", "public", "private", "protected", "static", "final",
    "int", "long", "double", "float", "boolean", "char", "void",
    "if", "else", "for", "while", "do", "return", "new", "import",
    "true", "false", "null",
}

# Constructs that exist in Java but sit outside the subset; naming them
# produces a clearer ParseError than a generic "unexpected token".
UNSUPPORTED_KEYWORDS = {
    "switch", "case", "default", "try", "catch", "finally", "throw",
    "throws", "synchronized", "interface", "enum", "extends",
    "implements", "abstract", "instanceof", "package", "break",
    "continue", "lambda",
}

TWO_CHAR_OPS = {
    "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=", "-=", "*=", "/=", "%=", "<<", ">>", "->",
}
ONE_CHAR_OPS = set("+-*/%<>=!&|^~?:.,;()[]{}")


@dataclass(frozen=True)
class Token:
    kind: str  # ident | keyword | int | float | string | char | op | eof
    value: str
    line: int
    column: int

    def __repr__(self):
        return f"Token({self.kind}, {self.value!r}, {self.line}:{self.column})"


def tokenize(source: str) -> list[Token]:
    """Produce the token stream, raising ParseError on unlexable input."""
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(source)

    def error(msg, expected=""):
        raise ParseError(msg, line, col, expected)

    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        if source.startswith("/*", i):
            end = source.find("*/", i + 2)
            if end == -1:
                error("unterminated block comment")
            skipped = source[i:end + 2]
            newlines = skipped.count("\n")
            if newlines:
                line += newlines
                col = len(skipped) - skipped.rfind("\n")
            else:
                col += len(skipped)
            i = end + 2
            continue
        start_line, start_col = line, col
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            j = i
            is_float = False
            while j < n and (source[j].isdigit() or source[j] == "."):
                if source[j] == ".":
                    if is_float:
                        break
                    # distinguish "1.5" from "1.foo()"
                    if j + 1 < n and not source[j + 1].isdigit():
                        break
                    is_float = True
                j += 1
            text = source[i:j]
            if j < n and source[j] in "LlDdFf":
                # numeric suffixes are accepted and dropped
                if source[j] in "DdFf":
                    is_float = True
                j += 1
            tokens.append(Token("float" if is_float else "int", text, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            kind = "keyword" if word in KEYWORDS else "ident"
            tokens.append(Token(kind, word, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            while j < n and source[j] != '"':
                if source[j] == "\\":
                    j += 1
                if source[j] == "\n":
                    error("unterminated string literal")
                j += 1
            if j >= n:
                error("unterminated string literal")
            tokens.append(Token("string", source[i:j + 1], start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch == "'":
            j = i + 1
            if j < n and source[j] == "\\":
                j += 1
            j += 1
            if j >= n or source[j] != "'":
                error("unterminated char literal")
            tokens.append(Token("char", source[i:j + 1], start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        two = source[i:i + 2]
        if two in TWO_CHAR_OPS:
            tokens.append(Token("op", two, start_line, start_col))
            i += 2
            col += 2
            continue
        if ch in ONE_CHAR_OPS:
            tokens.append(Token("op", ch, start_line, start_col))
            i += 1
            col += 1
            continue
        error(f"unexpected character {ch!r}")

    tokens.append(Token("eof", "", line, col))
    return tokens
