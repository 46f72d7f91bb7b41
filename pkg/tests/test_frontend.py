"""Parser, statement resolution, and def/use tests."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _util import wrap_snippet
from slicebench.errors import NotFound, ParseError
from slicebench.frontend import parse_program, statement_at, try_parse_program
from slicebench.frontend.ast_nodes import IfStmt


def test_empty_class():
    ast = parse_program("public class A {}", "empty")
    assert len(ast.classes) == 1
    assert ast.classes[0].name == "A"
    assert ast.classes[0].methods == []


def test_conditional_def_set_spans_both_arms():
    source, off = wrap_snippet(
        """
        if (target[i] > free) {
            req += target[i] - free;
            free = target[i];
        } else if (target[i] < free) {
            free = target[i];
        }
        """,
        params="int[] target, int i, int free, int req",
    )
    ast = parse_program(source, "b1")
    stmt = statement_at(ast, off + 1)
    assert isinstance(stmt, IfStmt)
    assert stmt.else_body is not None
    assert stmt.defs == {"req", "free"}
    assert {"target", "i", "free"} <= stmt.uses
    # the guard alone defines nothing
    assert stmt.own_defs == frozenset()
    assert stmt.own_uses == {"target", "i", "free"}


def test_loop_body_updates_both_accumulators():
    source, off = wrap_snippet(
        """
        for (int num : nums) {
            sum = sum.add(BigDecimal.valueOf(num).divide(BigDecimal.valueOf(2)));
            queue.add(BigDecimal.valueOf(-num));
        }
        """,
        params="int[] nums, BigDecimal sum, Queue<BigDecimal> queue",
    )
    ast = parse_program(source, "b2")
    header = statement_at(ast, off + 1)
    assert header.own_defs == {"num"}
    assert header.own_uses == {"nums"}
    sum_stmt = statement_at(ast, off + 2)
    # BigDecimal is immutable: receiver is read, not written; assignment writes
    assert sum_stmt.defs == {"sum"}
    assert sum_stmt.uses == {"sum", "num"}
    queue_stmt = statement_at(ast, off + 3)
    # mutable receiver: add() rewrites the queue's state
    assert queue_stmt.defs == {"queue"}
    assert queue_stmt.uses == {"queue", "num"}


def test_collection_calls_define_and_use_receiver():
    source, off = wrap_snippet(
        """
        List<Integer> numbers = new ArrayList<>();
        numbers.add(5);
        numbers.remove(0);
        int size = numbers.size();
        """,
    )
    ast = parse_program(source, "b3")
    assert statement_at(ast, off + 1).defs == {"numbers"}
    add = statement_at(ast, off + 2)
    assert add.defs == {"numbers"} and add.uses == {"numbers"}
    remove = statement_at(ast, off + 3)
    assert remove.defs == {"numbers"} and remove.uses == {"numbers"}
    size = statement_at(ast, off + 4)
    assert size.defs == {"size", "numbers"}
    assert size.uses == {"numbers"}


def test_multiline_ternary_resolves_to_anchor():
    source, off = wrap_snippet(
        """
        result[i] =
        s.length() > (intLength + 1) / 2
            ? -1
            : someFunction(s, intLength);
        """,
        params="int[] result, int i, String s, int intLength",
    )
    ast = parse_program(source, "c1")
    anchor = statement_at(ast, off + 1)
    for line in range(off + 1, off + 5):
        assert statement_at(ast, line) is anchor
    assert anchor.line == off + 1
    assert anchor.end_line == off + 4
    assert anchor.content_lines == frozenset(range(off + 1, off + 5))
    assert anchor.defs == {"result"}
    assert anchor.uses == {"result", "i", "s", "intLength"}


def test_nested_loops_with_prefix_decrement():
    source, off = wrap_snippet(
        """
        for (int z = m - 1; z >= 0; --z) {
            for (int i = 0; i <= z; ++i) {
                int y = z - i;
            }
        }
        """,
        params="int m",
    )
    ast = parse_program(source, "c2")
    outer = statement_at(ast, off + 1)
    assert outer.kind == "loop"
    assert outer.defs == {"z", "i", "y"}
    inner = statement_at(ast, off + 2)
    assert inner.kind == "loop"
    assert inner.uses == {"z", "i"}
    y_decl = statement_at(ast, off + 3)
    assert y_decl.defs == {"y"} and y_decl.uses == {"z", "i"}


@pytest.mark.parametrize(
    "snippet",
    [
        "Runnable r = () -> 1;",
        "int y = apply(x -> x + 1);",
    ],
)
def test_lambda_is_rejected_by_name(snippet):
    source, _ = wrap_snippet(snippet, params="int x")
    with pytest.raises(ParseError) as exc:
        parse_program(source, "lambda")
    assert "lambda" in str(exc.value)


@pytest.mark.parametrize(
    "snippet, construct",
    [
        ("try { int x = 1; } catch (Exception e) {}", "try"),
        ("switch (x) { default: }", "switch"),
        ("throw new RuntimeException();", "throw"),
        ("while (true) { break; }", "break"),
    ],
)
def test_out_of_subset_keywords_are_named(snippet, construct):
    source, _ = wrap_snippet(snippet, params="int x")
    with pytest.raises(ParseError) as exc:
        parse_program(source, "reject")
    assert construct in str(exc.value)
    assert exc.value.line > 0


def test_statement_at_blank_comment_and_brace_lines():
    source = (
        "public class A {\n"          # 1
        "    public static void run() {\n"  # 2
        "        int x = 1;\n"        # 3
        "\n"                          # 4 blank
        "        // a comment\n"      # 5
        "        int y = x + 1;\n"    # 6
        "    }\n"                     # 7 brace-only
        "}\n"
    )
    ast = parse_program(source, "gaps")
    assert statement_at(ast, 3).defs == {"x"}
    for line in (4, 5, 7):
        with pytest.raises(NotFound):
            statement_at(ast, line)


def test_two_statements_on_one_line_resolve_to_earliest():
    source, off = wrap_snippet("int a = 1; int b = a + 1;")
    ast = parse_program(source, "tie")
    stmt = statement_at(ast, off + 1)
    assert stmt.defs == {"a"}
    siblings = [s for s in ast.statements if s.line == off + 1 and s.kind == "decl"]
    assert len(siblings) == 2
    assert stmt is min(siblings, key=lambda s: s.sid)


def test_undeclared_identifiers_stay_out_of_def_use():
    source, off = wrap_snippet("int x = Math.max(1, 2);")
    ast = parse_program(source, "scope")
    stmt = statement_at(ast, off + 1)
    assert stmt.defs == {"x"}
    assert stmt.uses == frozenset()


def test_imports_and_do_while_and_2d_arrays():
    source = (
        "import java.util.List;\n"
        "public class A {\n"
        "    public static int run(int n) {\n"
        "        int[][] grid = new int[2][2];\n"
        "        int i = 0;\n"
        "        do {\n"
        "            grid[0][1] = grid[0][1] + n;\n"
        "            i++;\n"
        "        } while (i < 2);\n"
        "        return grid[0][1];\n"
        "    }\n"
        "}\n"
    )
    ast = parse_program(source, "misc")
    assert ast.imports[0].module == "java.util.List"
    update = statement_at(ast, 7)
    assert update.defs == {"grid"}
    assert update.uses == {"grid", "n"}
    loop = statement_at(ast, 6)
    assert loop.kind == "loop"
    assert loop.uses == {"grid", "n", "i"}
    assert 9 in loop.content_lines  # while-clause line belongs to the loop


def test_anchor_line_holds_first_token():
    source, _ = wrap_snippet(
        """
        int total = 0;
        for (int k = 0; k < 4; k++) {
            total +=
                k * 2;
        }
        """,
    )
    ast = parse_program(source, "fidelity")
    for stmt in ast.statements:
        if stmt.kind in ("block",):
            continue
        assert 1 <= stmt.line <= ast.line_count
        assert ast.source_lines[stmt.line - 1].strip() != ""


def test_mutable_argument_to_user_method_counts_as_definition():
    source = (
        "public class A {\n"
        "    public static void fill(List<Integer> xs) {\n"
        "        xs.add(1);\n"
        "    }\n"
        "    public static int run() {\n"
        "        List<Integer> xs = new ArrayList<>();\n"
        "        fill(xs);\n"
        "        return xs.size();\n"
        "    }\n"
        "}\n"
    )
    ast = parse_program(source, "mutarg")
    call = statement_at(ast, 7)
    assert call.defs == {"xs"} and call.uses == {"xs"}


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=200))
def test_parser_totality_arbitrary_text(text):
    ast, err = try_parse_program(text, "fuzz")
    assert (ast is None) != (err is None)
    if err is not None:
        assert err.line >= 1


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.sampled_from(
            [
                "int a = 1;",
                "a = a + 2;",
                "a++;",
                "if (a > 0) { a = a - 1; }",
                "while (a > 0) { a--; }",
                "for (int j = 0; j < 2; j++) { a += j; }",
                "int[] xs = {1, 2, 3};",
                "a = xs[0] + xs.length;",
            ]
        ),
        min_size=1,
        max_size=8,
    )
)
def test_generated_snippets_parse_and_resolve(stmts):
    body = "int[] xs = {9};\n" + "\n".join(stmts)
    source, off = wrap_snippet(body, params="int a")
    ast = parse_program(source, "gen")
    for stmt in ast.statements:
        if stmt.kind in ("block", "import", "class-decl"):
            continue
        for name in stmt.defs | stmt.uses:
            assert name.isidentifier()
    assert statement_at(ast, off + 1).defs == {"xs"}
