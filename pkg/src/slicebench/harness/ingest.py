"""Dataset ingestion: program files plus criterion sidecars become tasks.

Per-program failures (parse errors, missing or mismatched criteria) are
recorded in the manifest and skip only that program; the batch proceeds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ..errors import (
    CriterionMismatch,
    MissingCriterion,
    NotFound,
    SliceBenchError,
)
from ..frontend.ast_nodes import Ast, ReturnStmt, walk_statements
from ..frontend.parser import parse_program, statement_at
from ..slicing import SlicingCriterion
from ..source import SourceProgram
from .tasks import SliceTask


@dataclass(frozen=True)
class IngestResult:
    tasks: tuple[SliceTask, ...]
    manifest: tuple[dict, ...]

    @property
    def skipped(self) -> list[dict]:
        return [entry for entry in self.manifest if entry["status"] != "ok"]


def _statement_mentions(ast: Ast, line: int, variable: str) -> bool:
    stmt = statement_at(ast, line)
    return variable in stmt.own_defs or variable in stmt.own_uses


def _is_main_return_line(ast: Ast, line: int) -> bool:
    main = ast.main_method()
    if main is None:
        return False
    for stmt in walk_statements(main.body):
        if isinstance(stmt, ReturnStmt) and stmt.line == line:
            return True
    return False


def ingest_one(program_path: Path, criteria_dir: Path) -> list[SliceTask]:
    pid = program_path.stem
    sidecar = criteria_dir / f"{pid}.json"
    if not sidecar.exists():
        raise MissingCriterion(f"{pid}: no criterion sidecar at {sidecar}")
    source = SourceProgram(id=pid,
                           text=program_path.read_text(encoding="utf-8"))
    ast = parse_program(source.text)
    spec = json.loads(sidecar.read_text(encoding="utf-8"))
    tasks = []

    static_spec = spec.get("static")
    if static_spec:
        criterion = SlicingCriterion(mode="static",
                                     line=static_spec["line"],
                                     variable=static_spec["variable"])
        try:
            mentioned = _statement_mentions(ast, criterion.line,
                                            criterion.variable)
        except NotFound:
            mentioned = False
        if not mentioned:
            raise CriterionMismatch(
                f"{pid}: variable {criterion.variable!r} does not occur "
                f"at line {criterion.line}"
            )
        tasks.append(SliceTask(task_id=f"{pid}:static", program=source,
                               criterion=criterion, mode="static"))

    dynamic_spec = spec.get("dynamic")
    if dynamic_spec:
        criterion = SlicingCriterion(mode="dynamic",
                                     line=dynamic_spec["line"])
        if not _is_main_return_line(ast, criterion.line):
            raise CriterionMismatch(
                f"{pid}: dynamic criterion line {criterion.line} is not a "
                f"return statement in main"
            )
        tasks.append(SliceTask(task_id=f"{pid}:dynamic", program=source,
                               criterion=criterion, mode="dynamic"))
    return tasks


def ingest_dataset(dataset_dir: Path) -> IngestResult:
    dataset_dir = Path(dataset_dir)
    programs_dir = dataset_dir / "programs"
    criteria_dir = dataset_dir / "criteria"
    if not programs_dir.is_dir():
        raise MissingCriterion(f"no programs directory under {dataset_dir}")

    tasks: list[SliceTask] = []
    manifest: list[dict] = []
    for program_path in sorted(programs_dir.glob("*.java")):
        pid = program_path.stem
        try:
            new_tasks = ingest_one(program_path, criteria_dir)
        except SliceBenchError as exc:
            manifest.append({"id": pid, "status": "skipped",
                             "reason": f"{type(exc).__name__}: {exc}"})
            continue
        tasks.extend(new_tasks)
        manifest.append({"id": pid, "status": "ok",
                         "tasks": [t.task_id for t in new_tasks]})
    return IngestResult(tasks=tuple(tasks), manifest=tuple(manifest))
