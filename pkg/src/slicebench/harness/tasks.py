"""Dataset task and experiment-record types shared across the harness."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from ..errors import CriterionError
from ..llm.config import ModelConfig, model_config
from ..llm.prompts import MODES, STRATEGIES
from ..metrics import ACC_D_BASES, TaskScore
from ..slicing import SlicingCriterion
from ..source import SourceProgram


@dataclass(frozen=True)
class SliceTask:
    """One (program, criterion) unit of the dataset."""

    task_id: str
    program: SourceProgram
    criterion: SlicingCriterion
    mode: str

    def __post_init__(self):
        if self.mode != self.criterion.mode:
            raise CriterionError(
                f"task {self.task_id}: criterion mode {self.criterion.mode!r} "
                f"does not match task mode {self.mode!r}"
            )


def record_key(model: str, strategy: str, mode: str, task_id: str,
               run: int) -> str:
    return f"{model}|{strategy}|{mode}|{task_id}|run{run}"


def prompt_hash(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class ExperimentRecord:
    """One LLM call: identity, prompt hash, response, truth, and score."""

    task_id: str
    program_id: str
    mode: str
    strategy: str
    model: str
    run: int
    prompt_sha256: str
    raw_response: str
    predicted_lines: Optional[tuple[int, ...]]
    failure_kind: Optional[str]
    warnings: tuple[str, ...]
    truth_lines: tuple[int, ...]
    exact_match: bool
    acc_d: float
    parse_failed: bool
    latency_s: float = 0.0
    retry_count: int = 0
    prompt_tokens_est: int = 0
    completion_tokens: Optional[int] = None

    @property
    def key(self) -> str:
        return record_key(self.model, self.strategy, self.mode, self.task_id,
                          self.run)

    def score(self) -> TaskScore:
        return TaskScore(task_id=self.task_id, exact_match=self.exact_match,
                         acc_d=self.acc_d, parse_failed=self.parse_failed)

    def to_json_line(self) -> str:
        payload = {
            "task_id": self.task_id,
            "program_id": self.program_id,
            "mode": self.mode,
            "strategy": self.strategy,
            "model": self.model,
            "run": self.run,
            "prompt_sha256": self.prompt_sha256,
            "raw_response": self.raw_response,
            "predicted_lines": (list(self.predicted_lines)
                                if self.predicted_lines is not None else None),
            "failure_kind": self.failure_kind,
            "warnings": list(self.warnings),
            "truth_lines": list(self.truth_lines),
            "exact_match": self.exact_match,
            "acc_d": self.acc_d,
            "parse_failed": self.parse_failed,
            "latency_s": self.latency_s,
            "retry_count": self.retry_count,
            "prompt_tokens_est": self.prompt_tokens_est,
            "completion_tokens": self.completion_tokens,
        }
        return json.dumps(payload, sort_keys=True)

    @staticmethod
    def from_json_line(line: str) -> "ExperimentRecord":
        raw = json.loads(line)
        return ExperimentRecord(
            task_id=raw["task_id"],
            program_id=raw["program_id"],
            mode=raw["mode"],
            strategy=raw["strategy"],
            model=raw["model"],
            run=raw["run"],
            prompt_sha256=raw["prompt_sha256"],
            raw_response=raw["raw_response"],
            predicted_lines=(tuple(raw["predicted_lines"])
                             if raw["predicted_lines"] is not None else None),
            failure_kind=raw["failure_kind"],
            warnings=tuple(raw["warnings"]),
            truth_lines=tuple(raw["truth_lines"]),
            exact_match=raw["exact_match"],
            acc_d=raw["acc_d"],
            parse_failed=raw["parse_failed"],
            latency_s=raw["latency_s"],
            retry_count=raw.get("retry_count", 0),
            prompt_tokens_est=raw.get("prompt_tokens_est", 0),
            completion_tokens=raw.get("completion_tokens"),
        )


def load_records(path: Path) -> list[ExperimentRecord]:
    records = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(ExperimentRecord.from_json_line(line))
    return records


@dataclass(frozen=True)
class ExperimentConfig:
    dataset_dir: Path
    models: tuple[ModelConfig, ...]
    strategies: tuple[str, ...] = ("zero_shot", "one_shot", "one_shot_cot")
    modes: tuple[str, ...] = ("static", "dynamic")
    runs: int = 3
    max_in_flight: int = 4
    out_path: Path = Path("results.jsonl")
    acc_d_basis: str = "lines"

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if not self.models or not self.strategies or not self.modes:
            raise ValueError("need at least one model, strategy, and mode")
        for strategy in self.strategies:
            if strategy not in STRATEGIES:
                raise ValueError(f"unknown strategy {strategy!r}")
        for mode in self.modes:
            if mode not in MODES:
                raise ValueError(f"unknown mode {mode!r}")
        if self.acc_d_basis not in ACC_D_BASES:
            raise ValueError(f"unknown acc_d basis {self.acc_d_basis!r}")

    @staticmethod
    def from_file(path: Path) -> "ExperimentConfig":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        models = tuple(model_config(entry["name"],
                                    **{k: v for k, v in entry.items()
                                       if k != "name"})
                       for entry in raw["models"])
        return ExperimentConfig(
            dataset_dir=Path(raw["dataset_dir"]),
            models=models,
            strategies=tuple(raw.get("strategies",
                                     ("zero_shot", "one_shot", "one_shot_cot"))),
            modes=tuple(raw.get("modes", ("static", "dynamic"))),
            runs=raw.get("runs", 3),
            max_in_flight=raw.get("max_in_flight", 4),
            out_path=Path(raw.get("out_path", "results.jsonl")),
            acc_d_basis=raw.get("acc_d_basis", "lines"),
        )
