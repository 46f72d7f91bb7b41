"""Experiment execution: the model x strategy x mode x task x run grid.

Every call becomes a durable JSONL record before any aggregation happens,
so a killed run resumes by key without repeating completed calls. Transport
and preflight failures become records too (scored zero), never lost jobs.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from ..errors import SliceBenchError
from ..flow import Pdg, build_pdg
from ..frontend.parser import parse_program
from ..llm import (
    Gateway,
    ModelConfig,
    PromptSpec,
    build_prompt,
    default_example,
    parse_slice_response,
)
from ..metrics import ExperimentAggregate, aggregate, score_task
from .ground_truth import GroundTruthCache, gen_ground_truth
from .ingest import ingest_dataset
from .tasks import (
    ExperimentConfig,
    ExperimentRecord,
    SliceTask,
    load_records,
    prompt_hash,
    record_key,
)


class RecordAppender:
    """Serialized append of JSONL records; each line is flushed durably."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def append(self, record: ExperimentRecord) -> None:
        line = record.to_json_line()
        with self._lock:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()


def existing_keys(path: Path) -> set[str]:
    path = Path(path)
    if not path.exists():
        return set()
    return {record.key for record in load_records(path)}


@dataclass(frozen=True)
class Job:
    task: SliceTask
    model: ModelConfig
    strategy: str
    run: int
    truth: tuple[int, ...]

    @property
    def key(self) -> str:
        return record_key(self.model.name, self.strategy, self.task.mode,
                          self.task.task_id, self.run)


@dataclass(frozen=True)
class RunSummary:
    records: tuple[ExperimentRecord, ...]
    new_count: int
    resumed_count: int
    truth_errors: tuple[tuple[str, str], ...]


class _PdgCache:
    """Per-program PDGs for edge-basis scoring, built once per program."""

    def __init__(self):
        self._lock = threading.Lock()
        self._pdgs: dict[str, Pdg] = {}

    def for_task(self, task: SliceTask) -> Pdg:
        with self._lock:
            pdg = self._pdgs.get(task.program.id)
            if pdg is None:
                pdg = build_pdg(parse_program(task.program.text,
                                              task.program.id))
                self._pdgs[task.program.id] = pdg
        return pdg


def _failure_record(job: Job, digest: str, exc: SliceBenchError,
                    raw: str = "") -> ExperimentRecord:
    return ExperimentRecord(
        task_id=job.task.task_id,
        program_id=job.task.program.id,
        mode=job.task.mode,
        strategy=job.strategy,
        model=job.model.name,
        run=job.run,
        prompt_sha256=digest,
        raw_response=raw,
        predicted_lines=None,
        failure_kind=type(exc).__name__,
        warnings=(str(exc),),
        truth_lines=job.truth,
        exact_match=False,
        acc_d=0.0,
        parse_failed=True,
    )


def execute_job(job: Job, gateway: Gateway, *, basis: str = "lines",
                pdgs: Optional[_PdgCache] = None) -> ExperimentRecord:
    task = job.task
    spec = PromptSpec(
        mode=task.mode,
        strategy=job.strategy,
        program=task.program,
        criterion=task.criterion,
        example=default_example(task.mode, job.strategy),
    )
    prompt = build_prompt(spec)
    digest = prompt_hash(prompt)
    try:
        result = gateway.complete(prompt, job.model, task_id=task.task_id)
    except SliceBenchError as exc:
        return _failure_record(job, digest, exc)

    parsed = parse_slice_response(result.text, task.program, task.criterion)
    pdg = pdgs.for_task(task) if (basis == "edges" and pdgs is not None) else None
    if parsed.parse_failed:
        predicted = None
        failure_kind = parsed.failure.kind
        warnings = (parsed.failure.detail,) if parsed.failure.detail else ()
        score = score_task(task.task_id, None, job.truth, parse_failed=True,
                           basis=basis, pdg=pdg)
    else:
        predicted = parsed.slice.lines
        failure_kind = None
        warnings = parsed.warnings
        score = score_task(task.task_id, predicted, job.truth,
                           basis=basis, pdg=pdg)
    return ExperimentRecord(
        task_id=task.task_id,
        program_id=task.program.id,
        mode=task.mode,
        strategy=job.strategy,
        model=job.model.name,
        run=job.run,
        prompt_sha256=digest,
        raw_response=result.text,
        predicted_lines=predicted,
        failure_kind=failure_kind,
        warnings=warnings,
        truth_lines=job.truth,
        exact_match=score.exact_match,
        acc_d=score.acc_d,
        parse_failed=score.parse_failed,
        latency_s=result.latency_s,
        retry_count=result.retry_count,
        prompt_tokens_est=result.prompt_tokens_est,
        completion_tokens=result.completion_tokens,
    )


def plan_jobs(config: ExperimentConfig, tasks: Sequence[SliceTask],
              truth_lines: dict[str, tuple[int, ...]]) -> list[Job]:
    """The full grid, in a stable order; unscoreable tasks are absent."""
    jobs = []
    for model in config.models:
        for strategy in config.strategies:
            for mode in config.modes:
                for task in tasks:
                    if task.mode != mode or task.task_id not in truth_lines:
                        continue
                    for run in range(1, config.runs + 1):
                        jobs.append(Job(task=task, model=model,
                                        strategy=strategy, run=run,
                                        truth=truth_lines[task.task_id]))
    return jobs


def run_experiment(
    config: ExperimentConfig,
    gateway: Gateway,
    *,
    tasks: Optional[Sequence[SliceTask]] = None,
    truth_cache: Optional[GroundTruthCache] = None,
    on_progress: Optional[Callable[[ExperimentRecord], None]] = None,
) -> RunSummary:
    if tasks is None:
        tasks = ingest_dataset(config.dataset_dir).tasks
    truth = gen_ground_truth(tasks, truth_cache)
    truth_lines = {t.task_id: t.lines for t in truth.values() if t.ok}
    truth_errors = tuple((t.task_id, t.error) for t in truth.values()
                         if not t.ok)

    done = existing_keys(config.out_path)
    jobs = [job for job in plan_jobs(config, tasks, truth_lines)
            if job.key not in done]

    appender = RecordAppender(config.out_path)
    pdgs = _PdgCache()

    def _worker(job: Job) -> ExperimentRecord:
        record = execute_job(job, gateway, basis=config.acc_d_basis, pdgs=pdgs)
        appender.append(record)
        if on_progress is not None:
            on_progress(record)
        return record

    if jobs:
        with ThreadPoolExecutor(max_workers=config.max_in_flight) as pool:
            new_records = list(pool.map(_worker, jobs))
    else:
        new_records = []

    all_records = load_records(config.out_path)
    return RunSummary(
        records=tuple(all_records),
        new_count=len(new_records),
        resumed_count=len(done),
        truth_errors=truth_errors,
    )


def aggregate_records(
    records: Iterable[ExperimentRecord],
) -> dict[tuple[str, str, str], ExperimentAggregate]:
    """Aggregates keyed by (model, mode, strategy), runs averaged in order."""
    grouped: dict[tuple[str, str, str], dict[int, list]] = {}
    for record in records:
        slot = grouped.setdefault((record.model, record.mode, record.strategy),
                                  {})
        slot.setdefault(record.run, []).append(record.score())
    out = {}
    for (model, mode, strategy), by_run in sorted(grouped.items()):
        runs = [by_run[run] for run in sorted(by_run)]
        out[(model, mode, strategy)] = aggregate(
            runs, model=model, mode=mode, strategy=strategy)
    return out
