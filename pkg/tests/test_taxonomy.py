"""Failure-label taxonomy, store semantics, and summary conservation."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slicebench.errors import NotAFailure, UnknownTask, UnresolvedDisagreement
from slicebench.metrics import TaskScore
from slicebench.taxonomy import (
    Distribution,
    FailureLabel,
    FaultLocation,
    LabelStore,
    ModelConstraintKind,
    RootCause,
    distribution,
    flow_csv,
    flow_map,
    select_failures,
)

A1 = FaultLocation.CONDITIONAL_STATEMENTS
A2 = FaultLocation.LOOP_CONSTRUCTS
A4 = FaultLocation.VARIABLE_DECLARATIONS_AND_ASSIGNMENTS


def _label(task="t1", root=RootCause.COMPLEX_CONTROL_FLOW, locs=(A2, A4),
           reviewer="alice", sub=None, notes=""):
    return FailureLabel(task_id=task, root_cause=root,
                        locations=frozenset(locs), reviewer=reviewer,
                        sub_kind=sub, notes=notes)


def _failing_scores(*ids):
    return [TaskScore(task_id=i, exact_match=False, acc_d=0.5) for i in ids]


def _reference_store() -> LabelStore:
    path = resources.files("slicebench") / "assets" / "reference" / "reference_labels.jsonl"
    return LabelStore(path=Path(str(path)))


# -- enumerations ----------------------------------------------------------------


def test_codes_and_display_names():
    assert RootCause.LOGIC_CONDITIONAL.code == "B1"
    assert RootCause.COMPLEX_CONTROL_FLOW.code == "C2"
    assert RootCause.MODEL_CONSTRAINT.code == "MC"
    assert FaultLocation.IMPORTS.code == "A6"
    assert A4.display == "Variable Declarations and Assignments"
    assert ModelConstraintKind.JSON_PARSING.display == "JSON Parsing"
    assert len(RootCause) == 6 and len(FaultLocation) == 6
    assert len(ModelConstraintKind) == 3


def test_label_validation():
    with pytest.raises(ValueError):
        _label(locs=())  # empty location set
    with pytest.raises(ValueError):
        _label(root=RootCause.MODEL_CONSTRAINT)  # missing sub-kind
    with pytest.raises(ValueError):
        _label(sub=ModelConstraintKind.JSON_PARSING)  # sub-kind without MC
    ok = _label(root=RootCause.MODEL_CONSTRAINT,
                sub=ModelConstraintKind.CONTEXT_WINDOW)
    assert ok.sub_kind is ModelConstraintKind.CONTEXT_WINDOW


@settings(max_examples=100, deadline=None)
@given(
    root=st.sampled_from(list(RootCause)),
    locs=st.sets(st.sampled_from(list(FaultLocation)), min_size=1),
    sub=st.sampled_from(list(ModelConstraintKind)),
    notes=st.text(max_size=40),
)
def test_serialization_round_trips_every_variant(root, locs, sub, notes):
    kind = sub if root is RootCause.MODEL_CONSTRAINT else None
    label = FailureLabel(task_id="t", root_cause=root,
                         locations=frozenset(locs), reviewer="r",
                         sub_kind=kind, notes=notes)
    back = FailureLabel.from_record(label.to_record())
    assert back.same_judgment(label)
    assert back.notes == notes


def test_unknown_strings_rejected_at_ingestion():
    record = _label().to_record()
    record["root_cause"] = "CosmicRays"
    with pytest.raises(ValueError):
        FailureLabel.from_record(record)
    record = _label().to_record()
    record["locations"] = ["Lambdas"]
    with pytest.raises(ValueError):
        FailureLabel.from_record(record)


# -- failure selection ----------------------------------------------------------


def test_select_failures_keeps_stable_order():
    scores = [
        TaskScore(task_id="a", exact_match=True, acc_d=1.0),
        TaskScore(task_id="b", exact_match=False, acc_d=0.9),
        TaskScore(task_id="c", exact_match=False, acc_d=0.0, parse_failed=True),
        TaskScore(task_id="d", exact_match=False, acc_d=1.0),  # superset slice
    ]
    assert select_failures(scores) == ["b", "c"]
    assert select_failures([]) == []


# -- label store ------------------------------------------------------------------


def test_record_label_versions_per_reviewer(tmp_path):
    store = LabelStore(path=tmp_path / "labels.jsonl")
    store.register_tasks(_failing_scores("t1"))
    first = store.record_label(_label())
    second = store.record_label(_label(root=RootCause.LOGIC_LOOP))
    assert (first.version, second.version) == (1, 2)
    assert store.effective_label("t1").root_cause is RootCause.LOGIC_LOOP

    reread = LabelStore(path=tmp_path / "labels.jsonl")
    assert [l.version for l in reread.labels_for("t1")] == [1, 2]
    assert reread.effective_label("t1").root_cause is RootCause.LOGIC_LOOP


def test_unknown_task_and_not_a_failure():
    store = LabelStore()
    store.register_tasks([
        TaskScore(task_id="ok", exact_match=True, acc_d=1.0),
        TaskScore(task_id="bad", exact_match=False, acc_d=0.2),
    ])
    with pytest.raises(UnknownTask):
        store.record_label(_label(task="missing"))
    with pytest.raises(NotAFailure):
        store.record_label(_label(task="ok"))
    store.record_label(_label(task="bad"))


def test_disagreement_blocks_summaries_until_resolution(tmp_path):
    store = LabelStore(path=tmp_path / "labels.jsonl")
    store.register_tasks(_failing_scores("t1"))
    store.record_label(_label(reviewer="alice"))
    store.record_label(_label(reviewer="bob", root=RootCause.LOGIC_LOOP))
    assert store.has_disagreement("t1")
    assert store.effective_label("t1") is None
    with pytest.raises(UnresolvedDisagreement) as exc:
        distribution(store)
    assert "t1" in str(exc.value)

    store.record_resolution(_label(reviewer="alice", notes="consensus"))
    assert not store.has_disagreement("t1")
    dist = distribution(store)
    assert dist.total == 1
    assert dist.root_causes == {"ComplexControlFlow": 1}

    reread = LabelStore(path=tmp_path / "labels.jsonl")
    assert not reread.has_disagreement("t1")
    assert reread.effective_label("t1").notes == "consensus"


def test_agreeing_reviewers_do_not_flag():
    store = LabelStore()
    store.register_tasks(_failing_scores("t1"))
    store.record_label(_label(reviewer="alice"))
    store.record_label(_label(reviewer="bob"))
    assert not store.has_disagreement("t1")
    assert store.effective_label("t1") is not None


def test_store_is_append_only_on_disk(tmp_path):
    path = tmp_path / "labels.jsonl"
    store = LabelStore(path=path)
    store.register_tasks(_failing_scores("t1"))
    store.record_label(_label())
    lines_before = path.read_text().count("\n")
    store.record_label(_label(root=RootCause.LOGIC_LOOP))
    lines_after = path.read_text().count("\n")
    assert lines_after == lines_before + 1


def test_resolution_requires_existing_labels():
    store = LabelStore()
    with pytest.raises(UnknownTask):
        store.record_resolution(_label(task="never-labeled"))


# -- summaries ---------------------------------------------------------------------


def test_distribution_and_flow_of_small_store():
    store = LabelStore()
    store.register_tasks(_failing_scores("t1", "t2", "t3"))
    store.record_label(_label(task="t1", locs=(A2,)))
    store.record_label(_label(task="t2", locs=(A4,)))
    store.record_label(_label(task="t3", root=RootCause.LOGIC_CONDITIONAL,
                              locs=(A1,)))
    dist = distribution(store)
    assert dist.total == 3
    assert dist.root_causes == {"ComplexControlFlow": 2, "LogicConditional": 1}
    assert dist.locations == {"LoopConstructs": 1,
                              "VariableDeclarationsAndAssignments": 1,
                              "ConditionalStatements": 1}
    triples = flow_map(store)
    assert len(triples) == 3
    assert all(count == 1 for _, _, count in triples)


def test_flow_csv_shape():
    store = LabelStore()
    store.register_tasks(_failing_scores("t1"))
    store.record_label(_label(task="t1", locs=(A2, A4)))
    text = flow_csv(store)
    lines = text.strip().split("\n")
    assert lines[0] == "root_cause,location,count"
    assert len(lines) == 3  # one row per location membership


@settings(max_examples=60, deadline=None)
@given(st.lists(
    st.tuples(
        st.sampled_from(list(RootCause)),
        st.sets(st.sampled_from(list(FaultLocation)), min_size=1, max_size=3),
        st.sampled_from(list(ModelConstraintKind)),
    ),
    min_size=1, max_size=20,
))
def test_conservation_between_distribution_and_flow(plan):
    store = LabelStore()
    store.register_tasks(_failing_scores(*[f"t{i}" for i in range(len(plan))]))
    for i, (root, locs, sub) in enumerate(plan):
        kind = sub if root is RootCause.MODEL_CONSTRAINT else None
        store.record_label(FailureLabel(
            task_id=f"t{i}", root_cause=root, locations=frozenset(locs),
            reviewer="r", sub_kind=kind,
        ))
    dist = distribution(store)
    triples = flow_map(store)
    assert sum(dist.root_causes.values()) == dist.total == len(plan)
    assert sum(count for _, _, count in triples) == sum(dist.locations.values())
    assert sum(dist.model_constraints.values()) == dist.root_causes.get(
        "ModelConstraint", 0)
    assert all(count > 0 for _, _, count in triples)


# -- reference dataset ---------------------------------------------------------------


def test_reference_dataset_headline_counts():
    store = _reference_store()
    dist = distribution(store)
    assert dist.total == 92
    assert dist.root_causes["ComplexControlFlow"] == 39
    assert dist.locations["VariableDeclarationsAndAssignments"] == 78
    assert sum(dist.root_causes.values()) == 92


def test_reference_dataset_full_breakdown():
    dist = distribution(_reference_store())
    assert dist.root_causes == {
        "ComplexControlFlow": 39,
        "LogicConditional": 14,
        "LogicLoop": 11,
        "LogicMethodInvocation": 9,
        "AmbiguityInCode": 8,
        "ModelConstraint": 11,
    }
    assert dist.model_constraints == {
        "ContextWindow": 3, "IntermixedText": 4, "JsonParsing": 4,
    }
    assert dist.locations == {
        "ConditionalStatements": 22,
        "LoopConstructs": 45,
        "MethodInvocationsAndReturns": 9,
        "VariableDeclarationsAndAssignments": 78,
        "ClassDeclarations": 4,
        "Imports": 3,
    }


def test_reference_dataset_heaviest_flows():
    triples = flow_map(_reference_store())
    assert triples[0] == ("ComplexControlFlow",
                          "VariableDeclarationsAndAssignments", 35)
    assert triples[1] == ("ComplexControlFlow", "LoopConstructs", 34)
    total_memberships = sum(count for _, _, count in triples)
    dist = distribution(_reference_store())
    assert total_memberships == sum(dist.locations.values()) == 161
