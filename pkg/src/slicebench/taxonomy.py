"""Failure taxonomy: root causes, fault locations, and label bookkeeping.

Labels live in an append-only JSONL store.  A task's effective label is
the latest one per reviewer; reviewers who disagree block summaries
until an explicit resolution record lands.  Distribution and flow-map
summaries count location memberships individually, so a label with two
locations contributes twice to the location totals and once per pairing
to the flow map.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import NotAFailure, UnknownTask, UnresolvedDisagreement
from .metrics import TaskScore


class RootCause(enum.Enum):
    LOGIC_CONDITIONAL = "LogicConditional"
    LOGIC_LOOP = "LogicLoop"
    LOGIC_METHOD_INVOCATION = "LogicMethodInvocation"
    AMBIGUITY_IN_CODE = "AmbiguityInCode"
    COMPLEX_CONTROL_FLOW = "ComplexControlFlow"
    MODEL_CONSTRAINT = "ModelConstraint"

    @property
    def code(self) -> str:
        return _ROOT_CODES[self]

    @property
    def display(self) -> str:
        return _ROOT_DISPLAY[self]


class ModelConstraintKind(enum.Enum):
    CONTEXT_WINDOW = "ContextWindow"
    INTERMIXED_TEXT = "IntermixedText"
    JSON_PARSING = "JsonParsing"

    @property
    def display(self) -> str:
        return _KIND_DISPLAY[self]


class FaultLocation(enum.Enum):
    CONDITIONAL_STATEMENTS = "ConditionalStatements"
    LOOP_CONSTRUCTS = "LoopConstructs"
    METHOD_INVOCATIONS_AND_RETURNS = "MethodInvocationsAndReturns"
    VARIABLE_DECLARATIONS_AND_ASSIGNMENTS = "VariableDeclarationsAndAssignments"
    CLASS_DECLARATIONS = "ClassDeclarations"
    IMPORTS = "Imports"

    @property
    def code(self) -> str:
        return _LOCATION_CODES[self]

    @property
    def display(self) -> str:
        return _LOCATION_DISPLAY[self]


_ROOT_CODES = {
    RootCause.LOGIC_CONDITIONAL: "B1",
    RootCause.LOGIC_LOOP: "B2",
    RootCause.LOGIC_METHOD_INVOCATION: "B3",
    RootCause.AMBIGUITY_IN_CODE: "C1",
    RootCause.COMPLEX_CONTROL_FLOW: "C2",
    RootCause.MODEL_CONSTRAINT: "MC",
}
_ROOT_DISPLAY = {
    RootCause.LOGIC_CONDITIONAL: "Conditional Logic",
    RootCause.LOGIC_LOOP: "Loop Logic",
    RootCause.LOGIC_METHOD_INVOCATION: "Method Invocation Logic",
    RootCause.AMBIGUITY_IN_CODE: "Ambiguity in Code",
    RootCause.COMPLEX_CONTROL_FLOW: "Complex Control Flow",
    RootCause.MODEL_CONSTRAINT: "Model Constraint",
}
_KIND_DISPLAY = {
    ModelConstraintKind.CONTEXT_WINDOW: "Context Window",
    ModelConstraintKind.INTERMIXED_TEXT: "Intermixed Text",
    ModelConstraintKind.JSON_PARSING: "JSON Parsing",
}
_LOCATION_CODES = {
    FaultLocation.CONDITIONAL_STATEMENTS: "A1",
    FaultLocation.LOOP_CONSTRUCTS: "A2",
    FaultLocation.METHOD_INVOCATIONS_AND_RETURNS: "A3",
    FaultLocation.VARIABLE_DECLARATIONS_AND_ASSIGNMENTS: "A4",
    FaultLocation.CLASS_DECLARATIONS: "A5",
    FaultLocation.IMPORTS: "A6",
}
_LOCATION_DISPLAY = {
    FaultLocation.CONDITIONAL_STATEMENTS: "Conditional Statements",
    FaultLocation.LOOP_CONSTRUCTS: "Loop Constructs",
    FaultLocation.METHOD_INVOCATIONS_AND_RETURNS: "Method Invocations and Returns",
    FaultLocation.VARIABLE_DECLARATIONS_AND_ASSIGNMENTS:
        "Variable Declarations and Assignments",
    FaultLocation.CLASS_DECLARATIONS: "Class Declarations",
    FaultLocation.IMPORTS: "Imports",
}


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class FailureLabel:
    task_id: str
    root_cause: RootCause
    locations: frozenset[FaultLocation]
    reviewer: str
    sub_kind: Optional[ModelConstraintKind] = None
    timestamp: str = field(default_factory=_now)
    notes: str = ""
    version: int = 1

    def __post_init__(self):
        if not self.locations:
            raise ValueError("a label needs at least one fault location")
        object.__setattr__(self, "locations", frozenset(self.locations))
        is_mc = self.root_cause is RootCause.MODEL_CONSTRAINT
        if is_mc and self.sub_kind is None:
            raise ValueError("ModelConstraint labels need a sub-kind")
        if not is_mc and self.sub_kind is not None:
            raise ValueError("only ModelConstraint labels carry a sub-kind")

    def same_judgment(self, other: "FailureLabel") -> bool:
        return (self.root_cause is other.root_cause
                and self.sub_kind is other.sub_kind
                and self.locations == other.locations)

    def to_record(self, kind: str = "label") -> dict:
        return {
            "kind": kind,
            "task_id": self.task_id,
            "version": self.version,
            "reviewer": self.reviewer,
            "root_cause": self.root_cause.value,
            "sub_kind": self.sub_kind.value if self.sub_kind else None,
            "locations": sorted(loc.value for loc in self.locations),
            "timestamp": self.timestamp,
            "notes": self.notes,
        }

    @staticmethod
    def from_record(record: dict) -> "FailureLabel":
        try:
            root = RootCause(record["root_cause"])
            locations = frozenset(FaultLocation(v) for v in record["locations"])
            sub = record.get("sub_kind")
            sub_kind = ModelConstraintKind(sub) if sub is not None else None
        except (ValueError, KeyError) as exc:
            raise ValueError(f"unrecognized taxonomy value in record: {exc}")
        return FailureLabel(
            task_id=record["task_id"],
            root_cause=root,
            locations=locations,
            reviewer=record.get("reviewer", ""),
            sub_kind=sub_kind,
            timestamp=record.get("timestamp", ""),
            notes=record.get("notes", ""),
            version=record.get("version", 1),
        )


def select_failures(scores: Sequence[TaskScore]) -> list[str]:
    """Tasks whose slice was not fully recovered, in input order."""
    return [s.task_id for s in scores if s.acc_d < 1.0]


class LabelStore:
    """Append-only label log with latest-per-reviewer semantics.

    Writes are serialized through one lock; the JSONL file (when backed
    by one) only ever grows.  Resolutions are separate records that fix
    a task's effective label after reviewers disagreed.
    """

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path else None
        self._lock = threading.Lock()
        self._labels: dict[str, list[FailureLabel]] = {}
        self._resolutions: dict[str, FailureLabel] = {}
        self._scores: dict[str, TaskScore] = {}
        if self.path and self.path.exists():
            self._load()

    def _load(self):
        with self.path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                label = FailureLabel.from_record(record)
                if record.get("kind") == "resolution":
                    self._resolutions[label.task_id] = label
                else:
                    self._labels.setdefault(label.task_id, []).append(label)

    def _append_line(self, record: dict):
        if self.path is None:
            return
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")

    def register_tasks(self, scores: Iterable[TaskScore]):
        for score in scores:
            self._scores[score.task_id] = score

    def record_label(self, label: FailureLabel) -> FailureLabel:
        """Append one label version; returns it with its version filled in."""
        with self._lock:
            if self._scores:
                score = self._scores.get(label.task_id)
                if score is None:
                    raise UnknownTask(f"no such task: {label.task_id}")
                if score.exact_match:
                    raise NotAFailure(
                        f"task {label.task_id} matched ground truth exactly"
                    )
            prior = [v for v in self._labels.get(label.task_id, ())
                     if v.reviewer == label.reviewer]
            versioned = FailureLabel(
                task_id=label.task_id, root_cause=label.root_cause,
                locations=label.locations, reviewer=label.reviewer,
                sub_kind=label.sub_kind, timestamp=label.timestamp,
                notes=label.notes, version=len(prior) + 1,
            )
            self._labels.setdefault(label.task_id, []).append(versioned)
            self._append_line(versioned.to_record())
            return versioned

    def record_resolution(self, label: FailureLabel) -> FailureLabel:
        """Fix the effective label for a disputed task."""
        with self._lock:
            if label.task_id not in self._labels:
                raise UnknownTask(f"no labels recorded for {label.task_id}")
            self._resolutions[label.task_id] = label
            self._append_line(label.to_record(kind="resolution"))
            return label

    def task_ids(self) -> list[str]:
        return sorted(self._labels)

    def labels_for(self, task_id: str) -> list[FailureLabel]:
        return list(self._labels.get(task_id, ()))

    def latest_by_reviewer(self, task_id: str) -> dict[str, FailureLabel]:
        latest: dict[str, FailureLabel] = {}
        for label in self._labels.get(task_id, ()):
            held = latest.get(label.reviewer)
            if held is None or label.version >= held.version:
                latest[label.reviewer] = label
        return latest

    def has_disagreement(self, task_id: str) -> bool:
        if task_id in self._resolutions:
            return False
        latest = list(self.latest_by_reviewer(task_id).values())
        return any(not latest[0].same_judgment(other) for other in latest[1:])

    def effective_label(self, task_id: str) -> Optional[FailureLabel]:
        if task_id in self._resolutions:
            return self._resolutions[task_id]
        latest = self.latest_by_reviewer(task_id)
        if not latest:
            return None
        if self.has_disagreement(task_id):
            return None
        # all reviewers agree; return the newest by version then timestamp
        return sorted(latest.values(),
                      key=lambda l: (l.version, l.timestamp))[-1]

    def resolved_labels(self) -> dict[str, FailureLabel]:
        """Effective label per task; raises if any disagreement is open."""
        open_tasks = sorted(t for t in self._labels if self.has_disagreement(t))
        if open_tasks:
            raise UnresolvedDisagreement(open_tasks)
        return {t: self.effective_label(t) for t in self.task_ids()}


@dataclass(frozen=True)
class Distribution:
    total: int
    root_causes: dict[str, int]
    model_constraints: dict[str, int]
    locations: dict[str, int]

    def root_cause_pct(self, value: str) -> float:
        return self.root_causes.get(value, 0) / self.total if self.total else 0.0

    def location_pct(self, value: str) -> float:
        return self.locations.get(value, 0) / self.total if self.total else 0.0


def distribution(store: LabelStore) -> Distribution:
    labels = store.resolved_labels()
    roots: dict[str, int] = {}
    kinds: dict[str, int] = {}
    locs: dict[str, int] = {}
    for label in labels.values():
        roots[label.root_cause.value] = roots.get(label.root_cause.value, 0) + 1
        if label.sub_kind is not None:
            kinds[label.sub_kind.value] = kinds.get(label.sub_kind.value, 0) + 1
        for loc in label.locations:
            locs[loc.value] = locs.get(loc.value, 0) + 1
    return Distribution(total=len(labels), root_causes=roots,
                        model_constraints=kinds, locations=locs)


def flow_map(store: LabelStore) -> list[tuple[str, str, int]]:
    """(root cause, location, count) triples, heaviest first."""
    labels = store.resolved_labels()
    counts: dict[tuple[str, str], int] = {}
    for label in labels.values():
        for loc in label.locations:
            key = (label.root_cause.value, loc.value)
            counts[key] = counts.get(key, 0) + 1
    triples = [(root, loc, n) for (root, loc), n in counts.items()]
    triples.sort(key=lambda t: (-t[2], t[0], t[1]))
    return triples


def flow_csv(store: LabelStore) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["root_cause", "location", "count"])
    for root, loc, count in flow_map(store):
        writer.writerow([root, loc, count])
    return buffer.getvalue()
