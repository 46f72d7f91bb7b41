"""Dataset ingestion, oracle generation, experiment runs, and the HTTP API."""

from __future__ import annotations

import json
import threading
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from slicebench.errors import (
    CriterionMismatch,
    MissingCriterion,
    RateLimited,
)
from slicebench.harness import (
    ExperimentConfig,
    ExperimentRecord,
    GroundTruthCache,
    aggregate_records,
    build_report,
    build_state,
    create_app,
    diff_lines,
    gen_ground_truth,
    ingest_dataset,
    ingest_one,
    load_records,
    mode_stat_test,
    record_key,
    rescore_records,
    run_experiment,
)
from slicebench.harness.ground_truth import truth_key
from slicebench.llm import Gateway, model_config, render_output_json
from slicebench.llm.client import CallResult, estimate_tokens
from slicebench.source import SourceProgram
from slicebench.taxonomy import LabelStore

import importlib.resources as resources

CORPUS = Path(str(resources.files("slicebench"))) / "assets" / "corpus"


def _result(text: str, prompt: str) -> CallResult:
    return CallResult(text=text, latency_s=0.0, retry_count=0,
                      prompt_tokens_est=estimate_tokens(prompt),
                      provider="test")


class EchoTruth:
    """Answers every task with its exact ground-truth slice."""

    name = "echo"

    def __init__(self, truth):
        self.truth = truth
        self.calls = 0

    def complete(self, prompt, config, task_id=None):
        self.calls += 1
        return _result(render_output_json(self.truth[task_id]), prompt)


class DropLast:
    """Answers with the truth minus its last line (when it has two or more)."""

    name = "drop"

    def __init__(self, truth):
        self.truth = truth

    def complete(self, prompt, config, task_id=None):
        lines = list(self.truth[task_id])
        kept = lines[:-1] if len(lines) > 1 else lines
        return _result(render_output_json(kept), prompt)


class Scripted:
    """Per-task behaviors: a string answers, an exception instance raises."""

    name = "scripted"

    def __init__(self, behaviors, default="{}"):
        self.behaviors = behaviors
        self.default = default

    def complete(self, prompt, config, task_id=None):
        action = self.behaviors.get(task_id, self.default)
        if isinstance(action, Exception):
            raise action
        return _result(action, prompt)


@pytest.fixture(scope="module")
def corpus_tasks():
    return ingest_dataset(CORPUS).tasks


@pytest.fixture(scope="module")
def corpus_truth(corpus_tasks):
    results = gen_ground_truth(corpus_tasks)
    assert all(r.ok for r in results.values())
    return {task_id: r.lines for task_id, r in results.items()}


def _config(tmp_path, **overrides) -> ExperimentConfig:
    defaults = dict(
        dataset_dir=CORPUS,
        models=(model_config("GPT-4o"),),
        strategies=("one_shot_cot",),
        modes=("static", "dynamic"),
        runs=1,
        out_path=tmp_path / "results.jsonl",
    )
    defaults.update(overrides)
    return ExperimentConfig(**defaults)


# ingestion


def test_corpus_ingests_completely(corpus_tasks):
    result = ingest_dataset(CORPUS)
    assert len(result.tasks) == 40
    assert sum(1 for t in result.tasks if t.mode == "static") == 20
    assert sum(1 for t in result.tasks if t.mode == "dynamic") == 20
    assert result.skipped == []
    assert len(result.manifest) == 20


def test_missing_sidecar_skips_only_that_program(tmp_path):
    programs = tmp_path / "programs"
    criteria = tmp_path / "criteria"
    programs.mkdir()
    criteria.mkdir()
    good = (CORPUS / "programs" / "running_total.java").read_text()
    (programs / "running_total.java").write_text(good)
    (criteria / "running_total.json").write_text(
        (CORPUS / "criteria" / "running_total.json").read_text())
    (programs / "orphan.java").write_text(good)

    result = ingest_dataset(tmp_path)
    assert [t.task_id for t in result.tasks] == ["running_total:static",
                                                 "running_total:dynamic"]
    (skipped,) = result.skipped
    assert skipped["id"] == "orphan"
    assert "MissingCriterion" in skipped["reason"]


def test_criterion_variable_absent_at_line_is_rejected(tmp_path):
    programs = tmp_path / "programs"
    criteria = tmp_path / "criteria"
    programs.mkdir()
    criteria.mkdir()
    (programs / "p.java").write_text(
        (CORPUS / "programs" / "running_total.java").read_text())
    spec = json.loads((CORPUS / "criteria" / "running_total.json").read_text())
    spec["static"]["variable"] = "phantom"
    (criteria / "p.json").write_text(json.dumps(spec))

    with pytest.raises(CriterionMismatch):
        ingest_one(programs / "p.java", criteria)


def test_dynamic_criterion_must_be_a_main_return(tmp_path):
    programs = tmp_path / "programs"
    criteria = tmp_path / "criteria"
    programs.mkdir()
    criteria.mkdir()
    (programs / "p.java").write_text(
        (CORPUS / "programs" / "running_total.java").read_text())
    spec = json.loads((CORPUS / "criteria" / "running_total.json").read_text())
    spec["dynamic"]["line"] = 3  # a declaration, not the return
    (criteria / "p.json").write_text(json.dumps(spec))

    with pytest.raises(CriterionMismatch):
        ingest_one(programs / "p.java", criteria)


def test_unparseable_program_reported_and_skipped(tmp_path):
    programs = tmp_path / "programs"
    criteria = tmp_path / "criteria"
    programs.mkdir()
    criteria.mkdir()
    (programs / "broken.java").write_text("public class Broken { int x = }")
    (criteria / "broken.json").write_text(
        json.dumps({"static": {"variable": "x", "line": 1}}))
    good = (CORPUS / "programs" / "running_total.java").read_text()
    (programs / "running_total.java").write_text(good)
    (criteria / "running_total.json").write_text(
        (CORPUS / "criteria" / "running_total.json").read_text())

    result = ingest_dataset(tmp_path)
    assert len(result.tasks) == 2
    (skipped,) = result.skipped
    assert skipped["id"] == "broken"
    assert "ParseError" in skipped["reason"]


# ground truth


def test_straight_line_program_has_equal_static_and_dynamic_truth(tmp_path):
    source = (
        "public class Straight {\n"
        "    public static int main() {\n"
        "        int a = 2;\n"
        "        int b = a * 3;\n"
        "        return b;\n"
        "    }\n"
        "}\n"
    )
    programs = tmp_path / "programs"
    criteria = tmp_path / "criteria"
    programs.mkdir()
    criteria.mkdir()
    (programs / "straight.java").write_text(source)
    (criteria / "straight.json").write_text(json.dumps({
        "static": {"variable": "b", "line": 5},
        "dynamic": {"line": 5},
    }))
    tasks = ingest_dataset(tmp_path).tasks
    truth = gen_ground_truth(tasks)
    assert truth["straight:static"].lines == truth["straight:dynamic"].lines


def test_corpus_holds_strict_dynamic_containment(corpus_tasks, corpus_truth):
    strict = 0
    for task in corpus_tasks:
        if task.mode != "dynamic":
            continue
        static_lines = set(corpus_truth[f"{task.program.id}:static"])
        dynamic_lines = set(corpus_truth[task.task_id])
        assert dynamic_lines <= static_lines
        if dynamic_lines < static_lines:
            strict += 1
    assert strict >= 3


def test_cache_hit_skips_recomputation(corpus_tasks):
    cache = GroundTruthCache()
    first = gen_ground_truth(corpus_tasks, cache)
    assert cache.misses == len(corpus_tasks)
    assert cache.hits == 0
    second = gen_ground_truth(corpus_tasks, cache)
    assert cache.hits == len(corpus_tasks)
    assert all(second[t.task_id].from_cache for t in corpus_tasks)
    assert {k: v.lines for k, v in first.items()} == \
        {k: v.lines for k, v in second.items()}


def test_cache_file_round_trips(tmp_path, corpus_tasks):
    path = tmp_path / "truth_cache.json"
    gen_ground_truth(corpus_tasks[:4], GroundTruthCache(path))
    reloaded = GroundTruthCache(path)
    assert len(reloaded) == 4
    key = truth_key(corpus_tasks[0])
    assert reloaded.get(key) is not None
    assert reloaded.hits == 1


def test_truth_errors_recorded_without_halting(tmp_path):
    # the second return is never executed, so its dynamic criterion fails
    source = (
        "public class Early {\n"
        "    public static int main() {\n"
        "        int x = 1;\n"
        "        if (x > 0) {\n"
        "            return x;\n"
        "        }\n"
        "        return 0;\n"
        "    }\n"
        "}\n"
    )
    programs = tmp_path / "programs"
    criteria = tmp_path / "criteria"
    programs.mkdir()
    criteria.mkdir()
    (programs / "early.java").write_text(source)
    (criteria / "early.json").write_text(json.dumps({
        "dynamic": {"line": 7},
    }))
    good = (CORPUS / "programs" / "running_total.java").read_text()
    (programs / "running_total.java").write_text(good)
    (criteria / "running_total.json").write_text(
        (CORPUS / "criteria" / "running_total.json").read_text())

    truth = gen_ground_truth(ingest_dataset(tmp_path).tasks)
    assert not truth["early:dynamic"].ok
    assert "CriterionNotExecuted" in truth["early:dynamic"].error
    assert truth["running_total:static"].ok


# runner


def test_echo_provider_scores_perfectly(tmp_path, corpus_truth):
    config = _config(tmp_path, runs=2)
    summary = run_experiment(config, Gateway(provider=EchoTruth(corpus_truth)))
    assert summary.new_count == 80
    for agg in aggregate_records(summary.records).values():
        rendered = agg.rendered()
        assert rendered["acc_d"] == "100.00"
        assert rendered["acc_em"] == "100.00"


def test_dropped_line_scores_as_recall_fraction(tmp_path, corpus_truth):
    config = _config(tmp_path, modes=("static",))
    summary = run_experiment(config, Gateway(provider=DropLast(corpus_truth)))
    for record in summary.records:
        n = len(record.truth_lines)
        expected = (n - 1) / n if n > 1 else 1.0
        assert abs(record.acc_d - expected) < 1e-4
        assert record.exact_match == (n == 1)


def test_interrupted_run_resumes_without_duplicates(tmp_path, corpus_truth):
    config = _config(tmp_path, runs=2, max_in_flight=1)
    echo = EchoTruth(corpus_truth)
    killed_after = 13

    class Dying:
        name = "dying"

        def complete(self, prompt, config, task_id=None):
            if echo.calls >= killed_after:
                raise KeyboardInterrupt("simulated kill")
            return echo.complete(prompt, config, task_id=task_id)

    with pytest.raises(KeyboardInterrupt):
        run_experiment(config, Gateway(provider=Dying()))
    partial = load_records(config.out_path)
    assert 0 < len(partial) < 80

    summary = run_experiment(config, Gateway(provider=echo))
    keys = [r.key for r in summary.records]
    assert len(keys) == 80
    assert len(set(keys)) == 80
    assert summary.resumed_count == len(partial)
    # completed records were not re-run
    assert echo.calls == killed_after + (80 - len(partial))


def test_provider_failures_become_scored_records(tmp_path, corpus_truth):
    behaviors = {
        "running_total:static": RateLimited("throttled after retries"),
        "two_sum_brute:static": "the slice is lines 1 through 4",
        "fizz_count:static": render_output_json(
            corpus_truth["fizz_count:static"]),
    }
    config = _config(tmp_path, modes=("static",))
    summary = run_experiment(
        config, Gateway(provider=Scripted(behaviors, default='{"output": []}')))
    by_task = {r.task_id: r for r in summary.records}
    assert by_task["running_total:static"].failure_kind == "RateLimited"
    assert by_task["running_total:static"].acc_d == 0.0
    assert by_task["two_sum_brute:static"].failure_kind == "MalformedJson"
    assert by_task["fizz_count:static"].failure_kind is None
    assert by_task["fizz_count:static"].exact_match
    assert by_task["list_ops:static"].failure_kind == "EmptyOutput"
    assert len(summary.records) == 20


def test_context_overflow_is_preflighted_per_record(tmp_path, corpus_truth):
    config = _config(
        tmp_path, modes=("static",),
        models=(model_config("tiny", context_window=40),))
    summary = run_experiment(config, Gateway(provider=EchoTruth(corpus_truth)))
    assert len(summary.records) == 20
    assert all(r.failure_kind == "ContextOverflow" for r in summary.records)


def test_record_jsonl_round_trip(tmp_path, corpus_truth):
    config = _config(tmp_path, modes=("dynamic",))
    summary = run_experiment(config, Gateway(provider=DropLast(corpus_truth)))
    reloaded = load_records(config.out_path)
    assert [r.to_json_line() for r in reloaded] == \
        [r.to_json_line() for r in summary.records]
    sample = reloaded[0]
    assert sample.key == record_key(sample.model, sample.strategy, sample.mode,
                                    sample.task_id, sample.run)


# reporting


def test_rescoring_reproduces_stored_scores(tmp_path, corpus_truth):
    config = _config(tmp_path)
    summary = run_experiment(config, Gateway(provider=DropLast(corpus_truth)))
    rescored = rescore_records(summary.records)
    assert [r.to_json_line() for r in rescored] == \
        [r.to_json_line() for r in summary.records]


def test_report_tables_and_stat_test(tmp_path, corpus_truth):
    config = _config(tmp_path, strategies=("zero_shot", "one_shot_cot"))
    summary = run_experiment(config, Gateway(provider=DropLast(corpus_truth)))
    report = build_report(summary.records)
    assert len(report["tables"]["static"]) == 2
    assert len(report["tables"]["dynamic"]) == 2
    for row in report["tables"]["static"]:
        assert set(row) == {"model", "mode", "strategy", "runs",
                            "acc_d", "acc_em"}
    assert len(report["improvement_reference"]) == 4
    stat = report["stat_test"]
    assert stat is not None and "u_statistic" in stat
    assert 0.0 <= stat["p_value"] <= 1.0
    assert report["record_count"] == 80


def test_stat_test_absent_with_single_mode(tmp_path, corpus_truth):
    config = _config(tmp_path, modes=("static",))
    summary = run_experiment(config, Gateway(provider=DropLast(corpus_truth)))
    assert mode_stat_test(summary.records) is None


def test_config_file_round_trip(tmp_path):
    path = tmp_path / "experiment.json"
    path.write_text(json.dumps({
        "dataset_dir": str(CORPUS),
        "models": [{"name": "GPT-4o"}, {"name": "Gemma-7B", "temperature": 0.3}],
        "strategies": ["zero_shot"],
        "modes": ["static"],
        "runs": 5,
        "out_path": str(tmp_path / "r.jsonl"),
    }))
    config = ExperimentConfig.from_file(path)
    assert config.runs == 5
    assert config.models[1].temperature == 0.3
    assert config.models[0].context_window == 8 * 1024

    with pytest.raises(ValueError):
        ExperimentConfig(dataset_dir=CORPUS, models=(),
                         out_path=tmp_path / "r.jsonl")
    with pytest.raises(ValueError):
        ExperimentConfig(dataset_dir=CORPUS, models=(model_config("m"),),
                         strategies=("few_shot",),
                         out_path=tmp_path / "r.jsonl")


# HTTP service


@pytest.fixture()
def triage(tmp_path, corpus_tasks, corpus_truth):
    behaviors = {}
    for task in corpus_tasks:
        lines = list(corpus_truth[task.task_id])
        if task.task_id == "fizz_count:static":
            behaviors[task.task_id] = render_output_json(lines)  # a pass
        else:
            behaviors[task.task_id] = render_output_json(
                lines[:-1] if len(lines) > 1 else lines)
    config = _config(tmp_path, modes=("static",))
    summary = run_experiment(config, Gateway(provider=Scripted(behaviors)))

    fixer = EchoTruth(corpus_truth)
    store = LabelStore(tmp_path / "labels.jsonl")
    state = build_state(corpus_tasks, corpus_truth, summary.records, store,
                        gateway=Gateway(provider=fixer))
    return TestClient(create_app(state)), state


def test_failed_queue_sorted_worst_first(triage):
    client, _ = triage
    body = client.get("/api/tasks", params={"failed": "true"}).json()
    scores = [row["acc_d"] for row in body["tasks"]]
    assert scores == sorted(scores)
    assert body["total"] == 19  # the echoed task passes
    assert all(row["acc_d"] < 1.0 for row in body["tasks"])
    everything = client.get("/api/tasks").json()
    assert everything["total"] == 20
    assert everything["failed"] == 19


def test_task_detail_diff_partitions_lines(triage):
    client, state = triage
    body = client.get("/api/tasks/binary_search:static").json()
    truth = set(body["truth_lines"])
    predicted = set(body["predicted_lines"])
    diff = body["diff"]
    assert set(diff["both"]) == truth & predicted
    assert set(diff["missed"]) == truth - predicted
    assert set(diff["over"]) == predicted - truth
    assert body["criterion"]["variable"] == "found"
    assert body["source"].startswith("public class BinarySearch")


def test_unknown_task_is_404(triage):
    client, _ = triage
    assert client.get("/api/tasks/ghost:static").status_code == 404
    response = client.post("/api/tasks/ghost:static/label",
                           json={"reviewer": "r1", "root_cause": "C2",
                                 "locations": ["A2"]})
    assert response.status_code == 404


def test_label_flow_with_conflict_and_resolution(triage):
    client, state = triage
    task_id = "binary_search:static"
    first = client.post(f"/api/tasks/{task_id}/label", json={
        "reviewer": "r1", "root_cause": "C2", "locations": ["A2", "A4"],
    })
    assert first.status_code == 201
    assert first.json()["label"]["root_cause"] == "ComplexControlFlow"

    conflict = client.post(f"/api/tasks/{task_id}/label", json={
        "reviewer": "r2", "root_cause": "B1", "locations": ["A1"],
    })
    assert conflict.status_code == 409
    detail = conflict.json()["detail"]
    assert detail["stored"] is True
    assert set(detail["latest"]) == {"r1", "r2"}

    # open disagreement blocks both summaries and reprompts
    report = client.get("/api/report").json()
    assert report["distribution"]["error"]
    assert report["distribution"]["open_tasks"] == [task_id]
    assert client.post(f"/api/tasks/{task_id}/reprompt").status_code == 409

    resolved = client.post(f"/api/tasks/{task_id}/resolve", json={
        "reviewer": "moderator", "root_cause": "C2", "locations": ["A2"],
    })
    assert resolved.status_code == 201
    assert resolved.json()["disagreement"] is False
    detail = client.get(f"/api/tasks/{task_id}").json()
    assert detail["effective_label"]["root_cause"] == "ComplexControlFlow"
    assert detail["effective_label"]["locations"] == ["LoopConstructs"]


def test_labeling_a_passing_task_is_rejected(triage):
    client, _ = triage
    response = client.post("/api/tasks/fizz_count:static/label", json={
        "reviewer": "r1", "root_cause": "C2", "locations": ["A2"],
    })
    assert response.status_code == 400


def test_label_validation_failures_are_422(triage):
    client, _ = triage
    task = "two_sum_brute:static"
    bad_cause = client.post(f"/api/tasks/{task}/label", json={
        "reviewer": "r1", "root_cause": "Z9", "locations": ["A1"],
    })
    assert bad_cause.status_code == 422
    no_location = client.post(f"/api/tasks/{task}/label", json={
        "reviewer": "r1", "root_cause": "B1", "locations": [],
    })
    assert no_location.status_code == 422
    missing_sub_kind = client.post(f"/api/tasks/{task}/label", json={
        "reviewer": "r1", "root_cause": "MC", "locations": ["A4"],
    })
    assert missing_sub_kind.status_code == 422


def test_reprompt_requires_label_then_records_iteration(triage):
    client, _ = triage
    task_id = "palindrome_check:static"
    assert client.post(f"/api/tasks/{task_id}/reprompt").status_code == 400

    labeled = client.post(f"/api/tasks/{task_id}/label", json={
        "reviewer": "r1", "root_cause": "B2", "locations": ["A2"],
        "notes": "loop body skipped",
    })
    assert labeled.status_code == 201

    reprompted = client.post(f"/api/tasks/{task_id}/reprompt")
    assert reprompted.status_code == 201
    body = reprompted.json()
    assert body["iteration"] == 1
    assert body["exact_match"] is True
    assert body["diff"]["missed"] == []

    iterations = client.get(f"/api/tasks/{task_id}/iterations").json()
    assert len(iterations["iterations"]) == 1
    row = iterations["iterations"][0]
    assert row["index"] == 1
    assert row["feedback"]["root_cause"] == "LogicLoop"
    assert row["exact_match"] is True

    # the fix moves the task out of the pending queue; the original
    # score stays visible as first_acc_d
    queue = client.get("/api/tasks", params={"failed": True}).json()
    ids = [r["task_id"] for r in queue["tasks"]]
    assert task_id not in ids
    fixed = client.get(f"/api/tasks/{task_id}").json()
    assert fixed["acc_d"] == 1.0 and fixed["first_acc_d"] < 1.0
    assert fixed["iterations"] == 1

    # a second round keeps indices consecutive
    assert client.post(f"/api/tasks/{task_id}/reprompt").json()["iteration"] == 2


def test_report_distribution_reflects_labels(triage):
    client, _ = triage
    client.post("/api/tasks/two_sum_brute:static/label", json={
        "reviewer": "r1", "root_cause": "C2", "locations": ["A2", "A4"],
    })
    client.post("/api/tasks/max_subarray:static/label", json={
        "reviewer": "r1", "root_cause": "MC", "sub_kind": "JsonParsing",
        "locations": ["A4"],
    })
    report = client.get("/api/report").json()
    dist = report["distribution"]
    assert dist["total"] == 2
    assert dist["root_causes"] == {"ComplexControlFlow": 1,
                                   "ModelConstraint": 1}
    assert dist["model_constraints"] == {"JsonParsing": 1}
    assert dist["locations"]["VariableDeclarationsAndAssignments"] == 2
    flows = {(row["root_cause"], row["location"]): row["count"]
             for row in report["flow_map"]}
    assert flows[("ComplexControlFlow", "LoopConstructs")] == 1
    assert report["tables"]["static"]


def test_label_survives_restart_via_store_file(tmp_path, corpus_tasks,
                                               corpus_truth):
    config = _config(tmp_path, modes=("static",))
    summary = run_experiment(config,
                             Gateway(provider=DropLast(corpus_truth)))
    store_path = tmp_path / "labels.jsonl"

    state = build_state(corpus_tasks, corpus_truth, summary.records,
                        LabelStore(store_path))
    client = TestClient(create_app(state))
    assert client.post("/api/tasks/list_ops:static/label", json={
        "reviewer": "r1", "root_cause": "B3", "locations": ["A3"],
    }).status_code == 201

    # a fresh process sees the durable label
    state2 = build_state(corpus_tasks, corpus_truth, summary.records,
                         LabelStore(store_path))
    client2 = TestClient(create_app(state2))
    detail = client2.get("/api/tasks/list_ops:static").json()
    assert detail["effective_label"]["root_cause"] == "LogicMethodInvocation"


def test_diff_lines_partition_is_exact():
    diff = diff_lines([1, 2, 3, 5], [2, 3, 8])
    assert diff == {"both": [2, 3], "missed": [1, 5], "over": [8]}
    assert diff_lines([4], None) == {"both": [], "missed": [4], "over": []}


# command line


def test_cli_slice_commands_print_prompt_format(capsys):
    from slicebench.cli import main

    program = CORPUS / "programs" / "branch_chooser.java"
    expected = json.loads((CORPUS / "expected" / "branch_chooser.json")
                          .read_text())
    assert main(["slice-static", str(program),
                 "--var", "out", "--line", "12"]) == 0
    assert capsys.readouterr().out.strip() == render_output_json(
        expected["static"])

    assert main(["slice-dynamic", str(program), "--line", "12"]) == 0
    assert capsys.readouterr().out.strip() == render_output_json(
        expected["dynamic"])


def test_cli_slice_error_paths_exit_nonzero(tmp_path, capsys):
    from slicebench.cli import main

    program = CORPUS / "programs" / "branch_chooser.java"
    assert main(["slice-static", str(program),
                 "--var", "ghost", "--line", "12"]) == 2
    assert "CriterionError" in capsys.readouterr().err


def test_cli_pipeline_with_mock_fixtures(tmp_path, corpus_tasks, corpus_truth,
                                         capsys):
    from slicebench.cli import main

    fixtures = tmp_path / "fixtures" / "demo"
    fixtures.mkdir(parents=True)
    for task in corpus_tasks:
        (fixtures / f"{task.task_id}.txt").write_text(
            render_output_json(corpus_truth[task.task_id]))
    config_path = tmp_path / "experiment.json"
    config_path.write_text(json.dumps({
        "dataset_dir": str(CORPUS),
        "models": [{"name": "GPT-4o"}],
        "strategies": ["one_shot_cot"],
        "modes": ["static"],
        "runs": 1,
        "out_path": str(tmp_path / "results.jsonl"),
    }))

    assert main(["run", "--config", str(config_path),
                 "--mock-fixtures", str(tmp_path / "fixtures"),
                 "--mock-experiment", "demo"]) == 0
    row = json.loads(capsys.readouterr().out.strip().splitlines()[0])
    assert row["acc_d"] == "100.00" and row["acc_em"] == "100.00"

    assert main(["score", "--in", str(tmp_path / "results.jsonl"),
                 "--check"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["aggregates"][0]["acc_em"] == "100.00"


def test_cli_ingest_and_ground_truth(tmp_path, capsys):
    from slicebench.cli import main

    assert main(["ingest", str(CORPUS)]) == 0
    body = json.loads(capsys.readouterr().out)
    assert len(body["tasks"]) == 40
    assert all(entry["status"] == "ok" for entry in body["manifest"])

    cache = tmp_path / "cache.json"
    assert main(["ground-truth", str(CORPUS), "--cache", str(cache)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["branch_chooser:static"]["lines"] == \
        [1, 2, 3, 4, 5, 7, 8, 10, 12]
    assert cache.exists()
