"""
Prompt construction and response parsing
========================================

Render the slice-request prompt under each strategy, then push a few
model answers (well-formed and broken) through the response parser.
"""

from slicebench.llm import (
    PromptSpec,
    build_prompt,
    default_example,
    parse_slice_response,
)
from slicebench.slicing import SlicingCriterion
from slicebench.source import SourceProgram

program = SourceProgram(id="demo", text="""public class Demo {
    public static int main() {
        int a = 2;
        int b = a + 3;
        return b;
    }
}""")
criterion = SlicingCriterion(mode="static", line=5, variable="b")

# ## Three prompting strategies

for strategy in ("zero_shot", "one_shot", "one_shot_cot"):
    prompt = build_prompt(PromptSpec(
        mode="static", strategy=strategy, program=program,
        criterion=criterion, example=default_example("static", strategy)))
    print(f"--- {strategy}: {len(prompt)} chars ---")
print()
print(build_prompt(PromptSpec(
    mode="static", strategy="zero_shot", program=program,
    criterion=criterion, example=None)))

# ## Parsing what comes back

answers = [
    '{"output": ["3", "4", "5"]}',            # clean
    '```json\n{"output": ["4", "5"]}\n```',   # fenced, still fine
    'Sure! The slice is {"output": ["5"]}',   # leading prose tolerated
    '{"output": ["5", "99"]}',                # out-of-range line dropped
    '{"lines": [5]}',                         # wrong field name
    '{"output": ["line five"]}',              # not a number
]
for raw in answers:
    result = parse_slice_response(raw, program)
    if result.parse_failed:
        print(f"{raw!r:48} -> FAILED {result.failure.kind}")
    else:
        note = f" (warnings: {len(result.warnings)})" if result.warnings else ""
        print(f"{raw!r:48} -> lines {list(result.slice.lines)}{note}")
