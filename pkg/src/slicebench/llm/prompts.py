"""Prompt construction from the frozen templates.

Templates live under assets/prompts/ with three substitution tokens:
<<EXAMPLE>> (worked example block, empty for zero-shot), <<CRITERION>>,
and <<PROGRAM>> (the numbered snippet). Substitution is byte-deterministic
so built prompts can be compared against golden files.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Optional

from ..errors import TemplateError
from ..slicing.criteria import SlicingCriterion
from ..source import SourceProgram

MODES = ("static", "dynamic")
STRATEGIES = ("zero_shot", "one_shot", "one_shot_cot")

TOKENS = ("<<EXAMPLE>>", "<<CRITERION>>", "<<PROGRAM>>")

# the worked example shipped with the templates: criterion (sum, 10) for
# static, line 10 for dynamic; both slices agree on this program
EXAMPLE_SLICE_LINES = (1, 2, 3, 4, 5, 6, 7, 8, 10)
EXAMPLE_STATIC_CRITERION = "(sum, 10)"
EXAMPLE_DYNAMIC_CRITERION = "10"


def _asset(name: str) -> str:
    path = resources.files("slicebench").joinpath("assets", "prompts", name)
    return path.read_text(encoding="utf-8")


@dataclass(frozen=True)
class ShotExample:
    code: str
    criterion_text: str
    output_lines: tuple[int, ...]
    reasoning: str = ""


@dataclass(frozen=True)
class PromptSpec:
    mode: str
    strategy: str
    program: SourceProgram
    criterion: SlicingCriterion
    example: Optional[ShotExample] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise TemplateError(f"unknown mode {self.mode!r}")
        if self.strategy not in STRATEGIES:
            raise TemplateError(f"unknown strategy {self.strategy!r}")
        if self.criterion.mode != self.mode:
            raise TemplateError(
                f"criterion mode {self.criterion.mode!r} does not match prompt mode"
            )
        if self.strategy == "zero_shot":
            if self.example is not None:
                raise TemplateError("zero-shot prompts take no example")
        else:
            if self.example is None:
                raise TemplateError(f"{self.strategy} needs a worked example")
            if not self.example.code or not self.example.output_lines:
                raise TemplateError("example needs code and an output slice")
            if self.strategy == "one_shot_cot" and not self.example.reasoning:
                raise TemplateError("one_shot_cot needs example reasoning")


def render_criterion(criterion: SlicingCriterion) -> str:
    if criterion.mode == "static":
        return f"({criterion.variable}, {criterion.line})"
    return str(criterion.line)


def render_output_json(lines) -> str:
    ordered = sorted(set(int(n) for n in lines))
    inner = ", ".join(f'"{n}"' for n in ordered)
    return '{"output": [' + inner + "]}"


def number_lines(text: str) -> str:
    stripped = text.rstrip("\n")
    return "\n".join(
        f"{i}: {line}" for i, line in enumerate(stripped.split("\n"), start=1)
    )


def render_example_block(example: ShotExample, with_reasoning: bool) -> str:
    parts = [
        "Example:",
        "",
        "Code Snippet:",
        number_lines(example.code),
        "",
        "Slicing Criterion:",
        example.criterion_text,
        "",
    ]
    if with_reasoning:
        parts += ["Reasoning:", example.reasoning.rstrip("\n"), ""]
    parts.append("Output: " + render_output_json(example.output_lines))
    return "\n".join(parts) + "\n\n"


def escape_template_tokens(text: str) -> str:
    """Rewrite literal substitution tokens so they survive templating."""
    for token in TOKENS:
        text = text.replace(token, "<[" + token[2:-2] + "]>")
    return text


def _reject_tokens(text: str, origin: str):
    for token in TOKENS:
        if token in text:
            raise TemplateError(
                f"{origin} contains the template token {token}; "
                "escape it with escape_template_tokens first"
            )


def default_example(mode: str, strategy: str) -> Optional[ShotExample]:
    """The shipped worked example, with reasoning only when CoT asks."""
    if strategy == "zero_shot":
        return None
    code = _asset("example_program.txt")
    reasoning = ""
    if strategy == "one_shot_cot":
        reasoning = _asset(f"reasoning_{mode}.txt")
    criterion_text = (
        EXAMPLE_STATIC_CRITERION if mode == "static" else EXAMPLE_DYNAMIC_CRITERION
    )
    return ShotExample(
        code=code,
        criterion_text=criterion_text,
        output_lines=EXAMPLE_SLICE_LINES,
        reasoning=reasoning,
    )


def build_prompt(spec: PromptSpec) -> str:
    template = _asset(f"{spec.mode}_template.txt")
    program_text = spec.program.numbered()
    criterion_text = render_criterion(spec.criterion)
    _reject_tokens(program_text, "program text")
    _reject_tokens(criterion_text, "criterion text")
    if spec.example is None:
        example_block = ""
    else:
        _reject_tokens(spec.example.code, "example code")
        _reject_tokens(spec.example.reasoning, "example reasoning")
        example_block = render_example_block(
            spec.example, with_reasoning=spec.strategy == "one_shot_cot"
        )
    text = template.replace("<<EXAMPLE>>", example_block)
    text = text.replace("<<CRITERION>>", criterion_text)
    text = text.replace("<<PROGRAM>>", program_text)
    for token in TOKENS:
        if token in text:
            raise TemplateError(f"template token {token} survived substitution")
    return text
