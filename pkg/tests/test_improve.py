"""Crafted-example prompts, iterative feedback, and improvement arithmetic."""

from __future__ import annotations

import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slicebench.errors import (
    BaselineMissing,
    CategoryGap,
    MissingLabel,
    TemplateError,
)
from slicebench.flow.pdg import build_pdg
from slicebench.frontend.parser import parse_program
from slicebench.improve import (
    CraftedExample,
    ImprovementRow,
    IterationLog,
    IterationRecord,
    craft_enhanced_prompt,
    default_crafted_example,
    feedback_stanza,
    iterative_reprompt,
    reference_improvement_report,
    run_improvement_experiment,
)
from slicebench.llm.prompts import PromptSpec, default_example
from slicebench.metrics import TaskScore
from slicebench.slicing import SlicingCriterion, static_backward_slice
from slicebench.source import SourceProgram
from slicebench.taxonomy import FailureLabel, FaultLocation, LabelStore, \
    ModelConstraintKind, RootCause

A1 = FaultLocation.CONDITIONAL_STATEMENTS
A2 = FaultLocation.LOOP_CONSTRUCTS
A4 = FaultLocation.VARIABLE_DECLARATIONS_AND_ASSIGNMENTS

SAMPLE = SourceProgram(id="sample", text="""public class Sample {
    public static int main() {
        int a = 2;
        int b = a + 3;
        return b;
    }
}""")


def _cot_spec() -> PromptSpec:
    crit = SlicingCriterion(mode="static", line=5, variable="b")
    return PromptSpec(mode="static", strategy="one_shot_cot", program=SAMPLE,
                      criterion=crit,
                      example=default_example("static", "one_shot_cot"))


def _label(task="t1", root=RootCause.LOGIC_CONDITIONAL, locs=(A1,),
           sub=None, notes=""):
    return FailureLabel(task_id=task, root_cause=root,
                        locations=frozenset(locs), reviewer="alice",
                        sub_kind=sub, notes=notes)


# -- crafted example ------------------------------------------------------------


def test_default_crafted_example_slice_agrees_with_the_slicer():
    example = default_crafted_example()
    ast = parse_program(example.code)
    pdg = build_pdg(ast)
    match = re.fullmatch(r"\((\w+), (\d+)\)", example.criterion_text)
    crit = SlicingCriterion(mode="static", line=int(match.group(2)),
                            variable=match.group(1))
    truth = static_backward_slice(ast, pdg, crit)
    assert truth.lines == example.output_lines
    assert RootCause.COMPLEX_CONTROL_FLOW in example.covered_categories
    assert A4 in example.covered_locations
    assert example.location_note


def test_crafted_prompt_contains_the_example_verbatim_and_is_deterministic():
    example = default_crafted_example()
    first = craft_enhanced_prompt(_cot_spec(), example)
    second = craft_enhanced_prompt(_cot_spec(), example)
    assert first == second
    assert example.reasoning in first
    assert "int waste = 100;" in first
    assert '"16"' in first  # crafted output rendered in the example block


def test_crafted_prompt_differs_from_vanilla_only_in_the_example_block():
    vanilla = __import__("slicebench.llm.prompts", fromlist=["build_prompt"]) \
        .build_prompt(_cot_spec())
    crafted = craft_enhanced_prompt(_cot_spec(), default_crafted_example())
    marker = "Task:\n\nNow, based on the provided Java program"
    v_head, v_sep, v_tail = vanilla.partition(marker)
    c_head, c_sep, c_tail = crafted.partition(marker)
    assert v_sep and c_sep
    assert v_tail == c_tail  # everything after the example block identical
    v_prefix = v_head.split("Example:")[0]
    c_prefix = c_head.split("Example:")[0]
    assert v_prefix == c_prefix  # everything before it identical too
    assert v_head != c_head


def test_crafted_prompt_requires_cot_baseline_and_category_coverage():
    example = default_crafted_example()
    crit = SlicingCriterion(mode="static", line=5, variable="b")
    one_shot = PromptSpec(mode="static", strategy="one_shot", program=SAMPLE,
                          criterion=crit,
                          example=default_example("static", "one_shot"))
    with pytest.raises(TemplateError):
        craft_enhanced_prompt(one_shot, example)

    no_c2 = CraftedExample(
        code=example.code, criterion_text=example.criterion_text,
        reasoning=example.reasoning, output_lines=example.output_lines,
        covered_categories=frozenset({RootCause.LOGIC_LOOP}),
        covered_locations=example.covered_locations)
    with pytest.raises(CategoryGap):
        craft_enhanced_prompt(_cot_spec(), no_c2)

    no_a4 = CraftedExample(
        code=example.code, criterion_text=example.criterion_text,
        reasoning=example.reasoning, output_lines=example.output_lines,
        covered_categories=example.covered_categories,
        covered_locations=frozenset({A2}))
    with pytest.raises(CategoryGap):
        craft_enhanced_prompt(_cot_spec(), no_a4)


# -- iterative feedback ------------------------------------------------------------


def test_feedback_names_categories_in_human_terms():
    prior = '{"output": ["3", "5"]}'
    stanza = feedback_stanza(prior, _label())
    assert prior in stanza
    assert "root cause: failure to capture Conditional Statements" in stanza
    assert "Conditional Logic (B1)" in stanza
    assert "Conditional Statements (A1)" in stanza


def test_reprompt_appends_feedback_and_keeps_the_completion_cue_last():
    from slicebench.llm.prompts import build_prompt
    original = build_prompt(_cot_spec())
    new = iterative_reprompt(original, '{"output": ["5"]}', _label())
    assert new.endswith("Output:\n")
    assert new.startswith(original[:-len("Output:\n")])
    assert "Feedback:" in new
    with pytest.raises(MissingLabel):
        iterative_reprompt(original, '{"output": ["5"]}', None)


def test_json_parsing_feedback_restates_the_output_format():
    label = _label(root=RootCause.MODEL_CONSTRAINT,
                   sub=ModelConstraintKind.JSON_PARSING, locs=(A4,))
    stanza = feedback_stanza("the slice is lines three and five", label)
    assert '{"output": ["line_number1", "line_number2"]}' in stanza
    assert "Model Constraint - JSON Parsing (MC)" in stanza
    # non-parsing labels do not restate it
    plain = feedback_stanza("x", _label())
    assert '"line_number1"' not in plain


def test_feedback_never_leaks_ground_truth_lines():
    prior = '{"output": ["3"]}'
    truth = {3, 12, 47}
    stanza = feedback_stanza(prior, _label(notes="misses lines 12 and 47"))
    body = stanza.replace(prior, "")
    leaked = {int(n) for n in re.findall(r"\b\d+\b", body)}
    assert not (leaked & truth)


@settings(max_examples=100, deadline=None)
@given(
    prior_lines=st.sets(st.integers(1, 99), max_size=5),
    notes=st.text(alphabet="abc 0123456789", max_size=30),
    root=st.sampled_from(list(RootCause)),
    locs=st.sets(st.sampled_from(list(FaultLocation)), min_size=1, max_size=3),
)
def test_feedback_introduces_no_standalone_numbers(prior_lines, notes, root, locs):
    prior = '{"output": [' + ", ".join(f'"{n}"' for n in sorted(prior_lines)) + "]}"
    sub = (ModelConstraintKind.JSON_PARSING
           if root is RootCause.MODEL_CONSTRAINT else None)
    label = FailureLabel(task_id="t", root_cause=root,
                         locations=frozenset(locs), reviewer="r",
                         sub_kind=sub, notes=notes)
    stanza = feedback_stanza(prior, label)
    introduced = {int(n) for n in re.findall(r"\b\d+\b", stanza.replace(prior, ""))}
    assert introduced <= prior_lines


# -- iteration bookkeeping -----------------------------------------------------------


def test_iteration_log_enforces_consecutive_indices():
    log = IterationLog()
    rec = IterationRecord(task_id="t1", index=1, prior_answer="x",
                          feedback=_label(), new_prompt="p", new_answer="y")
    log.record(rec)
    assert log.next_index("t1") == 2
    with pytest.raises(ValueError):
        log.record(IterationRecord(task_id="t1", index=3, prior_answer="y",
                                   feedback=_label(), new_prompt="p",
                                   new_answer="z"))
    log.record(IterationRecord(task_id="t1", index=2, prior_answer="y",
                               feedback=_label(), new_prompt="p",
                               new_answer="z"))
    assert [r.index for r in log.iterations_for("t1")] == [1, 2]
    assert log.iterations_for("other") == []


def test_iteration_record_validation():
    with pytest.raises(ValueError):
        IterationRecord(task_id="t1", index=0, prior_answer="x",
                        feedback=_label(), new_prompt="p", new_answer="y")
    with pytest.raises(ValueError):
        IterationRecord(task_id="t1", index=1, prior_answer="x",
                        feedback=_label(task="other"), new_prompt="p",
                        new_answer="y")
    rec = IterationRecord(task_id="t1", index=1, prior_answer="x",
                          feedback=_label(), new_prompt="p", new_answer="y")
    assert rec.to_record()["feedback"]["root_cause"] == "LogicConditional"


# -- experiment arithmetic ------------------------------------------------------------


def _baseline_96_of_100():
    scores = [TaskScore(task_id=f"t{i:03d}", exact_match=True, acc_d=1.0)
              for i in range(96)]
    scores += [TaskScore(task_id=f"t{i:03d}", exact_match=False, acc_d=0.0)
               for i in range(96, 100)]
    return scores


def test_fixing_four_of_hundred_reports_plus_four_points():
    baseline = {"GPT-4o": _baseline_96_of_100()}

    def rerun(model, task_id):
        return TaskScore(task_id=task_id, exact_match=True, acc_d=1.0)

    rows = run_improvement_experiment("crafted", baseline, rerun)
    assert len(rows) == 1
    row = rows[0]
    assert row.rendered() == {"model": "GPT-4o", "vanilla": "96.00",
                              "improved": "100.00", "delta": "+4.00"}


def test_iterative_mode_reruns_only_labeled_tasks():
    baseline = {"m": [
        TaskScore(task_id="a", exact_match=False, acc_d=0.5),
        TaskScore(task_id="b", exact_match=False, acc_d=0.5),
        TaskScore(task_id="c", exact_match=True, acc_d=1.0),
    ]}
    store = LabelStore()
    store.register_tasks(baseline["m"])
    store.record_label(_label(task="a"))
    calls = []

    def rerun(model, task_id):
        calls.append(task_id)
        return TaskScore(task_id=task_id, exact_match=True, acc_d=1.0)

    rows = run_improvement_experiment("iterative", baseline, rerun, labels=store)
    assert calls == ["a"]
    assert rows[0].delta == pytest.approx(0.5 / 3)


def test_iterative_mode_with_no_labels_changes_nothing():
    baseline = {"m": [TaskScore(task_id="a", exact_match=False, acc_d=0.5)]}

    def rerun(model, task_id):
        raise AssertionError("nothing should be rerun")

    rows = run_improvement_experiment("iterative", baseline, rerun,
                                      labels=LabelStore())
    assert rows[0].delta == 0.0


def test_rerun_returning_none_keeps_the_baseline_score():
    baseline = {"m": [TaskScore(task_id="a", exact_match=False, acc_d=0.25)]}
    rows = run_improvement_experiment("crafted", baseline,
                                      lambda model, task: None)
    assert rows[0].vanilla == rows[0].improved == 0.25


def test_baseline_required():
    with pytest.raises(BaselineMissing):
        run_improvement_experiment("crafted", {}, lambda m, t: None)
    with pytest.raises(BaselineMissing):
        run_improvement_experiment("crafted", {"m": []}, lambda m, t: None)
    with pytest.raises(ValueError):
        run_improvement_experiment("mystery", {"m": [
            TaskScore(task_id="a", exact_match=True, acc_d=1.0)
        ]}, lambda m, t: None)


def test_reference_report_renders_published_bars():
    rows = {r["model"]: r for r in reference_improvement_report()}
    assert rows["GPT-4o"] == {"model": "GPT-4o", "baseline": "60.84",
                              "crafted": "64.19", "iterative": "64.28"}
    assert rows["GPT-3.5 Turbo"]["crafted"] == "54.19"
    assert rows["GPT-3.5 Turbo"]["iterative"] is None
    assert rows["Llama-2-7B-Chat"]["baseline"] == "18.03"
    assert rows["Gemma-7B"]["crafted"] == "46.04"
