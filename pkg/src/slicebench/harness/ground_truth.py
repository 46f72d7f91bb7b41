"""Oracle slices for dataset tasks, memoized on disk.

Ground truth is a function of the program text and the criterion alone,
so the cache key is the program hash plus the criterion fields. Model
output never enters this module.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from ..errors import SliceBenchError
from ..flow import build_pdg
from ..frontend.parser import parse_program
from ..interp import execute
from ..slicing import Slice, dynamic_backward_slice, static_backward_slice
from .tasks import SliceTask


def truth_key(task: SliceTask) -> str:
    digest = hashlib.sha256(task.program.text.encode("utf-8")).hexdigest()
    crit = task.criterion
    return f"{digest}|{crit.mode}:{crit.line}:{crit.variable or ''}"


class GroundTruthCache:
    """Disk-backed memo of oracle slices.

    ``path=None`` keeps the cache in memory only. Writes are deferred to
    ``flush`` so a batch costs one file write.
    """

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path is not None else None
        self.hits = 0
        self.misses = 0
        self._entries: dict[str, list[int]] = {}
        if self.path is not None and self.path.exists():
            self._entries = json.loads(self.path.read_text(encoding="utf-8"))

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, key: str) -> Optional[tuple[int, ...]]:
        entry = self._entries.get(key)
        if entry is None:
            self.misses += 1
            return None
        self.hits += 1
        return tuple(int(n) for n in entry)

    def put(self, key: str, lines: Iterable[int]) -> None:
        self._entries[key] = sorted(set(int(n) for n in lines))

    def flush(self) -> None:
        if self.path is None:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(
            json.dumps(self._entries, sort_keys=True, indent=1) + "\n",
            encoding="utf-8",
        )


def oracle_slice(task: SliceTask) -> Slice:
    """Compute the oracle slice for one task from scratch."""
    ast = parse_program(task.program.text, task.program.id)
    if task.mode == "static":
        pdg = build_pdg(ast)
        return static_backward_slice(ast, pdg, task.criterion)
    trace = execute(ast)
    return dynamic_backward_slice(trace, task.criterion)


@dataclass(frozen=True)
class TruthResult:
    task_id: str
    lines: Optional[tuple[int, ...]]
    error: Optional[str]
    from_cache: bool

    @property
    def ok(self) -> bool:
        return self.lines is not None


def gen_ground_truth(
    tasks: Iterable[SliceTask],
    cache: Optional[GroundTruthCache] = None,
) -> dict[str, TruthResult]:
    """Oracle slices for every task; failures are recorded, not raised."""
    cache = cache if cache is not None else GroundTruthCache()
    out: dict[str, TruthResult] = {}
    for task in tasks:
        key = truth_key(task)
        cached = cache.get(key)
        if cached is not None:
            out[task.task_id] = TruthResult(task.task_id, cached, None, True)
            continue
        try:
            computed = oracle_slice(task)
        except SliceBenchError as exc:
            out[task.task_id] = TruthResult(
                task.task_id, None, f"{type(exc).__name__}: {exc}", False)
            continue
        cache.put(key, computed.lines)
        out[task.task_id] = TruthResult(
            task.task_id, tuple(computed.lines), None, False)
    cache.flush()
    return out
