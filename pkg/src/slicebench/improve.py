"""Prompt-improvement strategies: crafted examples and iterative feedback.

Two routes to a better answer on a failing task.  The crafted route
swaps the worked example of the chain-of-thought prompt for one that
exercises the dominant failure categories; everything outside the
example block stays byte-identical.  The iterative route appends a
human reviewer's category-level feedback to the original prompt and
asks again.  Feedback names taxonomy categories and quotes the model's
own prior answer; it never contains ground-truth line numbers, so a
measured improvement reflects guidance rather than oracle leakage.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from importlib import resources
from typing import Callable, Mapping, Optional, Sequence, Union

from .errors import (
    BaselineMissing,
    CategoryGap,
    MissingLabel,
    TemplateError,
)
from .llm.parsing import LlmResponse
from .llm.prompts import PromptSpec, ShotExample, build_prompt
from .metrics import TaskScore, format_pct
from .taxonomy import (
    FailureLabel,
    FaultLocation,
    LabelStore,
    RootCause,
    select_failures,
)

IMPROVEMENT_MODES = ("crafted", "iterative")

# restated verbatim in feedback when the failure was a malformed answer
OUTPUT_FORMAT_REMINDER = (
    "As a reminder, you must respond with an array of line numbers in "
    "plain JSON without any markdown in the following format:\n"
    '{"output": ["line_number1", "line_number2"]}'
)


@dataclass(frozen=True)
class CraftedExample:
    code: str
    criterion_text: str
    reasoning: str
    output_lines: tuple[int, ...]
    covered_categories: frozenset[RootCause]
    covered_locations: frozenset[FaultLocation]
    location_note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "output_lines",
                           tuple(sorted(set(self.output_lines))))
        object.__setattr__(self, "covered_categories",
                           frozenset(self.covered_categories))
        object.__setattr__(self, "covered_locations",
                           frozenset(self.covered_locations))


def default_crafted_example() -> CraftedExample:
    blob = (resources.files("slicebench") / "assets" / "prompts"
            / "crafted_example.json").read_text(encoding="utf-8")
    raw = json.loads(blob)
    return CraftedExample(
        code=raw["code"],
        criterion_text=raw["criterion"],
        reasoning=raw["reasoning"],
        output_lines=tuple(raw["output_lines"]),
        covered_categories=frozenset(RootCause(v)
                                     for v in raw["covered_categories"]),
        covered_locations=frozenset(FaultLocation(v)
                                    for v in raw["covered_locations"]),
        location_note=raw["location_note"],
    )


def craft_enhanced_prompt(spec: PromptSpec, example: CraftedExample) -> str:
    """Chain-of-thought prompt with the worked example swapped out."""
    if spec.strategy != "one_shot_cot":
        raise TemplateError(
            "enhanced crafting layers on the one_shot_cot baseline, "
            f"not {spec.strategy}"
        )
    if RootCause.COMPLEX_CONTROL_FLOW not in example.covered_categories:
        raise CategoryGap("crafted example must exercise ComplexControlFlow")
    if (FaultLocation.VARIABLE_DECLARATIONS_AND_ASSIGNMENTS
            not in example.covered_locations):
        raise CategoryGap(
            "crafted example must note VariableDeclarationsAndAssignments"
        )
    shot = ShotExample(code=example.code,
                       criterion_text=example.criterion_text,
                       output_lines=example.output_lines,
                       reasoning=example.reasoning)
    return build_prompt(replace(spec, example=shot))


def _location_phrase(label: FailureLabel) -> str:
    names = sorted(loc.display for loc in label.locations)
    if len(names) == 1:
        return names[0]
    return ", ".join(names[:-1]) + " and " + names[-1]


def _cause_name(label: FailureLabel) -> str:
    if label.sub_kind is not None:
        return (f"{label.root_cause.display} - {label.sub_kind.display} "
                f"({label.root_cause.code})")
    return f"{label.root_cause.display} ({label.root_cause.code})"


def _scrub_numbers(text: str) -> str:
    # free-text notes must not smuggle line numbers into the feedback
    return re.sub(r"\b\d+\b", "#", text)


def feedback_stanza(prior_answer: str, label: FailureLabel) -> str:
    """Category-level review feedback; introduces no line numbers of its own."""
    lines = [
        "Feedback:",
        "Your previous answer was:",
        prior_answer.strip(),
        "",
        "A human review found that slice incorrect.",
        f"- root cause: failure to capture {_location_phrase(label)} "
        f"arising from {_cause_name(label)}.",
        "- fault locations: " + ", ".join(
            f"{loc.display} ({loc.code})"
            for loc in sorted(label.locations, key=lambda l: l.code)) + ".",
    ]
    if label.notes:
        lines.append(f"- reviewer notes: {_scrub_numbers(label.notes)}")
    if label.sub_kind is not None and label.sub_kind.value == "JsonParsing":
        lines.append(OUTPUT_FORMAT_REMINDER)
    lines.append(
        "Generate the backward slice again, correcting for the categories "
        "named above."
    )
    return "\n".join(lines)


def iterative_reprompt(original_prompt: str,
                       prior: Union[LlmResponse, str],
                       feedback: Optional[FailureLabel]) -> str:
    """Original prompt plus review feedback, completion cue kept last."""
    if feedback is None:
        raise MissingLabel("iterative reprompting needs a recorded label")
    prior_answer = prior.raw if isinstance(prior, LlmResponse) else prior
    stanza = feedback_stanza(prior_answer, feedback)
    cue = "Output:\n"
    if original_prompt.endswith(cue):
        body = original_prompt[:-len(cue)]
        return f"{body}{stanza}\n\n{cue}"
    return f"{original_prompt}\n\n{stanza}\n"


@dataclass(frozen=True)
class IterationRecord:
    task_id: str
    index: int
    prior_answer: str
    feedback: FailureLabel
    new_prompt: str
    new_answer: str
    new_score: Optional[TaskScore] = None

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("iteration indices start at 1")
        if self.feedback.task_id != self.task_id:
            raise ValueError("feedback label belongs to a different task")

    def to_record(self) -> dict:
        return {
            "task_id": self.task_id,
            "index": self.index,
            "prior_answer": self.prior_answer,
            "feedback": self.feedback.to_record(),
            "new_prompt": self.new_prompt,
            "new_answer": self.new_answer,
            "acc_d": self.new_score.acc_d if self.new_score else None,
        }


class IterationLog:
    """Per-task reprompt history; indices must stay consecutive."""

    def __init__(self):
        self._per_task: dict[str, list[IterationRecord]] = {}

    def record(self, rec: IterationRecord) -> IterationRecord:
        held = self._per_task.setdefault(rec.task_id, [])
        if rec.index != len(held) + 1:
            raise ValueError(
                f"iteration {rec.index} out of order for {rec.task_id}; "
                f"expected {len(held) + 1}"
            )
        held.append(rec)
        return rec

    def iterations_for(self, task_id: str) -> list[IterationRecord]:
        return list(self._per_task.get(task_id, ()))

    def next_index(self, task_id: str) -> int:
        return len(self._per_task.get(task_id, ())) + 1


@dataclass(frozen=True)
class ImprovementRow:
    model: str
    vanilla: float  # fractions in [0,1]
    improved: float

    @property
    def delta(self) -> float:
        return self.improved - self.vanilla

    def rendered(self) -> dict:
        return {
            "model": self.model,
            "vanilla": format_pct(self.vanilla),
            "improved": format_pct(self.improved),
            "delta": f"{self.delta * 100.0:+.2f}",
        }


def run_improvement_experiment(
    mode: str,
    baseline: Mapping[str, Sequence[TaskScore]],
    rerun: Callable[[str, str], Optional[TaskScore]],
    labels: Optional[LabelStore] = None,
) -> list[ImprovementRow]:
    """Re-run failing tasks and report (vanilla, improved, delta) per model.

    The crafted route retries every failing task; the iterative route
    retries only tasks with a recorded label.  A rerun returning None
    keeps the baseline score for that task.
    """
    if mode not in IMPROVEMENT_MODES:
        raise ValueError(f"unknown improvement mode {mode!r}")
    if not baseline or any(not scores for scores in baseline.values()):
        raise BaselineMissing("no baseline results to improve on")

    rows = []
    for model, scores in baseline.items():
        failed = set(select_failures(list(scores)))
        if mode == "iterative":
            if labels is None:
                failed = set()
            else:
                failed = {t for t in failed
                          if labels.effective_label(t) is not None}
        merged = []
        for score in scores:
            if score.task_id in failed:
                retried = rerun(model, score.task_id)
                merged.append(retried if retried is not None else score)
            else:
                merged.append(score)
        vanilla = sum(s.acc_d for s in scores) / len(scores)
        improved = sum(s.acc_d for s in merged) / len(merged)
        rows.append(ImprovementRow(model=model, vanilla=vanilla,
                                   improved=improved))
    return rows


def reference_improvement_report() -> list[dict]:
    """Previously published improvement bars, rendered to two decimals."""
    blob = (resources.files("slicebench") / "assets" / "reference"
            / "published_accuracy.json").read_text(encoding="utf-8")
    table = json.loads(blob)["improvement"]
    rows = []
    for model, cells in table.items():
        if not isinstance(cells, dict):
            continue  # skip the note entry
        row = {"model": model, "baseline": f"{cells['baseline']:.2f}",
               "crafted": f"{cells['crafted']:.2f}"}
        row["iterative"] = (f"{cells['iterative']:.2f}"
                            if cells["iterative"] is not None else None)
        rows.append(row)
    return rows
