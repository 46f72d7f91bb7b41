"""HTTP triage service: failure review, labeling, and iterative reprompts.

The browser UI consumes only these endpoints. Label writes hit the
append-only store (and its backing file) before the response is sent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from fastapi import Body, FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles

from ..errors import (
    MissingLabel,
    NotAFailure,
    SliceBenchError,
    UnknownTask,
)
from ..improve import IterationLog, IterationRecord, iterative_reprompt
from ..llm import (
    Gateway,
    ModelConfig,
    PromptSpec,
    build_prompt,
    default_example,
    model_config,
    parse_slice_response,
)
from ..metrics import score_task
from ..taxonomy import (
    FailureLabel,
    FaultLocation,
    LabelStore,
    ModelConstraintKind,
    RootCause,
)
from .report import build_report
from .tasks import ExperimentRecord, SliceTask


def diff_lines(truth: Sequence[int],
               predicted: Optional[Sequence[int]]) -> dict:
    """Three-way partition of lines by slice membership."""
    t = set(truth)
    p = set(predicted or ())
    return {
        "both": sorted(t & p),
        "missed": sorted(t - p),
        "over": sorted(p - t),
    }


def _parse_root_cause(raw: str) -> RootCause:
    for cause in RootCause:
        if raw in (cause.value, cause.code, cause.display):
            return cause
    raise ValueError(f"unknown root cause {raw!r}")


def _parse_sub_kind(raw: Optional[str]) -> Optional[ModelConstraintKind]:
    if raw is None:
        return None
    for kind in ModelConstraintKind:
        if raw in (kind.value, kind.display):
            return kind
    raise ValueError(f"unknown model-constraint kind {raw!r}")


def _parse_location(raw: str) -> FaultLocation:
    for loc in FaultLocation:
        if raw in (loc.value, loc.code, loc.display):
            return loc
    raise ValueError(f"unknown fault location {raw!r}")


def _label_json(label: FailureLabel) -> dict:
    return label.to_record()


@dataclass
class TriageState:
    """Everything the endpoints read or mutate, assembled up front."""

    tasks: dict[str, SliceTask]
    truth: dict[str, tuple[int, ...]]
    current: dict[str, ExperimentRecord]
    labels: LabelStore
    gateway: Optional[Gateway] = None
    iterations: IterationLog = field(default_factory=IterationLog)
    models: dict[str, ModelConfig] = field(default_factory=dict)

    def model_for(self, record: ExperimentRecord) -> ModelConfig:
        return self.models.get(record.model) or model_config(record.model)


def build_state(
    tasks: Sequence[SliceTask],
    truth: dict[str, tuple[int, ...]],
    records: Sequence[ExperimentRecord],
    labels: LabelStore,
    gateway: Optional[Gateway] = None,
    *,
    model: Optional[str] = None,
    strategy: Optional[str] = None,
    models: Sequence[ModelConfig] = (),
) -> TriageState:
    """One review target per task: the latest run under the given filter."""
    current: dict[str, ExperimentRecord] = {}
    for record in records:
        if model is not None and record.model != model:
            continue
        if strategy is not None and record.strategy != strategy:
            continue
        held = current.get(record.task_id)
        if held is None or record.run >= held.run:
            current[record.task_id] = record
    labels.register_tasks([r.score() for r in current.values()])
    return TriageState(
        tasks={t.task_id: t for t in tasks},
        truth=dict(truth),
        current=current,
        labels=labels,
        gateway=gateway,
        models={m.name: m for m in models},
    )


def _task_row(state: TriageState, record: ExperimentRecord) -> dict:
    effective = state.labels.effective_label(record.task_id)
    iterations = state.iterations.iterations_for(record.task_id)
    # the queue and headline score track the latest reprompt, not the
    # original run; a task fixed by iteration leaves the pending queue
    acc_d, exact_match = record.acc_d, record.exact_match
    parse_failed = record.parse_failed
    if iterations and iterations[-1].new_score is not None:
        latest = iterations[-1].new_score
        acc_d, exact_match = latest.acc_d, latest.exact_match
        parse_failed = latest.parse_failed
    return {
        "task_id": record.task_id,
        "program_id": record.program_id,
        "mode": record.mode,
        "strategy": record.strategy,
        "model": record.model,
        "run": record.run,
        "acc_d": acc_d,
        "exact_match": exact_match,
        "parse_failed": parse_failed,
        "first_acc_d": record.acc_d,
        "failure_kind": record.failure_kind,
        "labeled": effective is not None,
        "label_count": len(state.labels.labels_for(record.task_id)),
        "disagreement": state.labels.has_disagreement(record.task_id),
        "iterations": len(iterations),
    }


def create_app(state: TriageState,
               static_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="slicebench triage")

    def _record_or_404(task_id: str) -> ExperimentRecord:
        record = state.current.get(task_id)
        if record is None:
            raise HTTPException(status_code=404,
                                detail=f"no such task: {task_id}")
        return record

    @app.get("/api/tasks")
    def list_tasks(failed: bool = False) -> dict:
        rows = [_task_row(state, record)
                for record in state.current.values()]
        if failed:
            rows = [row for row in rows if row["acc_d"] < 1.0]
            rows.sort(key=lambda row: (row["acc_d"], row["task_id"]))
        else:
            rows.sort(key=lambda row: row["task_id"])
        labeled = sum(1 for row in rows if row["labeled"])
        return {
            "tasks": rows,
            "total": len(rows),
            "labeled": labeled,
            "failed": sum(1 for row in rows if row["acc_d"] < 1.0),
        }

    @app.get("/api/tasks/{task_id}")
    def task_detail(task_id: str) -> dict:
        record = _record_or_404(task_id)
        task = state.tasks[task_id]
        truth = state.truth[task_id]
        latest = state.labels.latest_by_reviewer(task_id)
        effective = state.labels.effective_label(task_id)
        criterion = {"mode": task.criterion.mode, "line": task.criterion.line}
        if task.criterion.variable is not None:
            criterion["variable"] = task.criterion.variable
        return {
            **_task_row(state, record),
            "source": task.program.text,
            "line_count": task.program.line_count,
            "criterion": criterion,
            "truth_lines": list(truth),
            "predicted_lines": (list(record.predicted_lines)
                                if record.predicted_lines is not None
                                else None),
            "diff": diff_lines(truth, record.predicted_lines),
            "raw_response": record.raw_response,
            "warnings": list(record.warnings),
            "labels": {reviewer: _label_json(label)
                       for reviewer, label in sorted(latest.items())},
            "effective_label": (_label_json(effective)
                                if effective is not None else None),
        }

    @app.post("/api/tasks/{task_id}/label", status_code=201)
    def submit_label(task_id: str, payload: dict = Body(...)) -> dict:
        _record_or_404(task_id)
        try:
            label = FailureLabel(
                task_id=task_id,
                root_cause=_parse_root_cause(payload["root_cause"]),
                locations=frozenset(_parse_location(loc)
                                    for loc in payload.get("locations", ())),
                reviewer=payload.get("reviewer", ""),
                sub_kind=_parse_sub_kind(payload.get("sub_kind")),
                notes=payload.get("notes", ""),
            )
        except (KeyError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        if not label.reviewer:
            raise HTTPException(status_code=422, detail="reviewer required")
        try:
            stored = state.labels.record_label(label)
        except UnknownTask as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except NotAFailure as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        if state.labels.has_disagreement(task_id):
            # the label is stored either way; the conflict needs an
            # explicit resolution before it counts in summaries
            latest = state.labels.latest_by_reviewer(task_id)
            raise HTTPException(status_code=409, detail={
                "error": "reviewer disagreement",
                "stored": True,
                "label": _label_json(stored),
                "latest": {reviewer: _label_json(l)
                           for reviewer, l in sorted(latest.items())},
            })
        return {"label": _label_json(stored), "disagreement": False}

    @app.post("/api/tasks/{task_id}/resolve", status_code=201)
    def resolve_label(task_id: str, payload: dict = Body(...)) -> dict:
        _record_or_404(task_id)
        try:
            label = FailureLabel(
                task_id=task_id,
                root_cause=_parse_root_cause(payload["root_cause"]),
                locations=frozenset(_parse_location(loc)
                                    for loc in payload.get("locations", ())),
                reviewer=payload.get("reviewer", "resolution"),
                sub_kind=_parse_sub_kind(payload.get("sub_kind")),
                notes=payload.get("notes", ""),
            )
        except (KeyError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        try:
            stored = state.labels.record_resolution(label)
        except UnknownTask as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        return {"label": _label_json(stored),
                "disagreement": state.labels.has_disagreement(task_id)}

    @app.post("/api/tasks/{task_id}/reprompt", status_code=201)
    def reprompt(task_id: str) -> dict:
        record = _record_or_404(task_id)
        if state.gateway is None:
            raise HTTPException(status_code=503,
                                detail="no completion provider configured")
        if state.labels.has_disagreement(task_id):
            raise HTTPException(status_code=409, detail={
                "error": "unresolved reviewer disagreement",
                "latest": {reviewer: _label_json(l)
                           for reviewer, l
                           in sorted(state.labels.latest_by_reviewer(
                               task_id).items())},
            })
        label = state.labels.effective_label(task_id)
        if label is None:
            raise HTTPException(status_code=400,
                                detail="no label recorded for this task")

        task = state.tasks[task_id]
        spec = PromptSpec(
            mode=task.mode,
            strategy=record.strategy,
            program=task.program,
            criterion=task.criterion,
            example=default_example(task.mode, record.strategy),
        )
        original = build_prompt(spec)
        iterations = state.iterations.iterations_for(task_id)
        prior_answer = (iterations[-1].new_answer if iterations
                        else record.raw_response)
        try:
            new_prompt = iterative_reprompt(original, prior_answer, label)
            result = state.gateway.complete(new_prompt,
                                            state.model_for(record),
                                            task_id=task_id)
        except MissingLabel as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except SliceBenchError as exc:
            raise HTTPException(status_code=502,
                                detail=f"{type(exc).__name__}: {exc}")
        parsed = parse_slice_response(result.text, task.program,
                                      task.criterion)
        truth = state.truth[task_id]
        predicted = None if parsed.parse_failed else parsed.slice.lines
        score = score_task(task_id, predicted, truth,
                           parse_failed=parsed.parse_failed)
        iteration = state.iterations.record(IterationRecord(
            task_id=task_id,
            index=state.iterations.next_index(task_id),
            prior_answer=prior_answer,
            feedback=label,
            new_prompt=new_prompt,
            new_answer=result.text,
            new_score=score,
        ))
        return {
            "iteration": iteration.index,
            "predicted_lines": list(predicted) if predicted else None,
            "diff": diff_lines(truth, predicted),
            "acc_d": score.acc_d,
            "exact_match": score.exact_match,
            "parse_failed": score.parse_failed,
        }

    @app.get("/api/tasks/{task_id}/iterations")
    def list_iterations(task_id: str) -> dict:
        _record_or_404(task_id)
        task = state.tasks[task_id]
        truth = state.truth[task_id]
        rows = []
        for iteration in state.iterations.iterations_for(task_id):
            parsed = parse_slice_response(iteration.new_answer, task.program,
                                          task.criterion)
            predicted = None if parsed.parse_failed else parsed.slice.lines
            rows.append({
                **iteration.to_record(),
                "predicted_lines": list(predicted) if predicted else None,
                "diff": diff_lines(truth, predicted),
                "exact_match": (iteration.new_score.exact_match
                                if iteration.new_score else None),
            })
        return {"task_id": task_id, "iterations": rows}

    @app.get("/api/report")
    def report() -> dict:
        return build_report(state.current.values(), state.labels)

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="ui")
    return app
