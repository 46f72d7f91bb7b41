"""Scoring of predicted slices and the rank-based experiment comparison.

Two accuracy notions: exact match (set equality of line numbers) and
dependence accuracy (recall of ground-truth lines, or of PDG edges when
the caller opts into the edge basis).  Aggregation averages per-run task
means across runs; values are kept as fractions internally and rendered
as two-decimal percentages only at the edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import DegenerateSamples, EmptyTruth, RunMismatch
from .flow.pdg import Pdg
from .slicing.criteria import Slice

ACC_D_BASES = ("lines", "edges")
STAT_METHOD = "normal-approximation-with-tie-correction"

LineSet = Union[Slice, Iterable[int]]


def _lines(value: LineSet) -> frozenset[int]:
    if isinstance(value, Slice):
        return value.line_set
    return frozenset(int(v) for v in value)


def format_pct(fraction: float) -> str:
    """Render a [0,1] fraction as a percentage with two decimals."""
    return f"{fraction * 100.0:.2f}"


@dataclass(frozen=True)
class TaskScore:
    task_id: str
    exact_match: bool
    acc_d: float
    parse_failed: bool = False

    def __post_init__(self):
        if not 0.0 <= self.acc_d <= 1.0:
            raise ValueError(f"acc_d out of range: {self.acc_d}")
        if self.exact_match and self.acc_d != 1.0:
            raise ValueError("exact match forces acc_d = 1")
        if self.parse_failed and (self.exact_match or self.acc_d != 0.0):
            raise ValueError("parse failures score zero")


@dataclass(frozen=True)
class ExperimentAggregate:
    model: str
    mode: str
    strategy: str
    run_count: int
    acc_d: float  # mean over runs of per-run task means, as a fraction
    acc_em: float
    per_run_acc_d: tuple[float, ...]
    per_run_acc_em: tuple[float, ...]

    def rendered(self) -> dict:
        return {
            "model": self.model,
            "mode": self.mode,
            "strategy": self.strategy,
            "runs": self.run_count,
            "acc_d": format_pct(self.acc_d),
            "acc_em": format_pct(self.acc_em),
        }


@dataclass(frozen=True)
class StatTestResult:
    u_statistic: float
    p_value: float
    method: str = STAT_METHOD

    def __post_init__(self):
        if not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"p-value out of range: {self.p_value}")


def exact_match(pred: LineSet, truth: LineSet) -> bool:
    """True iff the two line sets are equal; order and duplicates ignored."""
    return _lines(pred) == _lines(truth)


def _induced_edges(pdg: Pdg, lines: frozenset[int]) -> frozenset[tuple]:
    kept = set()
    for edge in pdg.edges:
        src = pdg.nodes[edge.src]
        dst = pdg.nodes[edge.dst]
        if src.line in lines and dst.line in lines:
            kept.add((src.line, dst.line, edge.kind, edge.var))
    return frozenset(kept)


def dependence_accuracy(pred: LineSet, truth: LineSet, *,
                        basis: str = "lines",
                        pdg: Optional[Pdg] = None) -> float:
    """Recall of ground-truth dependencies captured by the prediction.

    The default counts slice lines.  The "edges" basis projects both
    slices onto the PDG and counts edges with both endpoints inside;
    a truth slice inducing no edges is vacuously captured (1.0).
    """
    if basis not in ACC_D_BASES:
        raise ValueError(f"unknown acc_d basis {basis!r}")
    truth_lines = _lines(truth)
    if not truth_lines:
        raise EmptyTruth("ground-truth slice has no lines")
    pred_lines = _lines(pred)
    if basis == "lines":
        return len(pred_lines & truth_lines) / len(truth_lines)
    if pdg is None:
        raise ValueError("edge-basis scoring needs the program's PDG")
    truth_edges = _induced_edges(pdg, truth_lines)
    if not truth_edges:
        return 1.0
    pred_edges = _induced_edges(pdg, pred_lines)
    return len(pred_edges & truth_edges) / len(truth_edges)


def score_task(task_id: str, pred: Optional[LineSet], truth: LineSet, *,
               parse_failed: bool = False, basis: str = "lines",
               pdg: Optional[Pdg] = None) -> TaskScore:
    """Single-task score; failed parses count as zero, never dropped."""
    if parse_failed or pred is None:
        return TaskScore(task_id=task_id, exact_match=False, acc_d=0.0,
                         parse_failed=True)
    em = exact_match(pred, truth)
    acc = dependence_accuracy(pred, truth, basis=basis, pdg=pdg)
    return TaskScore(task_id=task_id, exact_match=em, acc_d=acc)


def aggregate(runs: Sequence[Sequence[TaskScore]], *, model: str = "",
              mode: str = "", strategy: str = "") -> ExperimentAggregate:
    """Per-run task means first, then the mean across runs."""
    if not runs or any(not run for run in runs):
        raise RunMismatch("need at least one non-empty run")
    reference = {score.task_id for score in runs[0]}
    for i, run in enumerate(runs[1:], start=2):
        ids = {score.task_id for score in run}
        if ids != reference:
            missing = sorted(reference ^ ids)
            raise RunMismatch(f"run {i} covers a different task set: {missing}")
        if len(run) != len(ids):
            raise RunMismatch(f"run {i} repeats task ids")
    if len(runs[0]) != len(reference):
        raise RunMismatch("run 1 repeats task ids")

    per_run_d = tuple(sum(s.acc_d for s in run) / len(run) for run in runs)
    per_run_em = tuple(sum(1 for s in run if s.exact_match) / len(run)
                       for run in runs)
    return ExperimentAggregate(
        model=model, mode=mode, strategy=strategy, run_count=len(runs),
        acc_d=sum(per_run_d) / len(runs),
        acc_em=sum(per_run_em) / len(runs),
        per_run_acc_d=per_run_d, per_run_acc_em=per_run_em,
    )


def _midranks(values: Sequence[float]) -> tuple[list[float], float]:
    """Ranks with ties sharing their midrank; also Σ(t³−t) over tie groups."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    tie_sum = 0.0
    i = 0
    while i < len(order):
        j = i
        while j < len(order) and values[order[j]] == values[order[i]]:
            j += 1
        midrank = (i + j + 1) / 2.0  # positions i+1 .. j share this rank
        for k in range(i, j):
            ranks[order[k]] = midrank
        t = j - i
        tie_sum += t ** 3 - t
        i = j
    return ranks, tie_sum


def _normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def mann_whitney_u(sample_a: Sequence[float],
                   sample_b: Sequence[float]) -> StatTestResult:
    """Two-sided Mann-Whitney U with midranks for ties.

    U is reported for sample_a (complete a-below-b separation gives 0).
    p comes from the normal approximation with tie correction and a 0.5
    continuity correction, applied to the larger of the two U values.
    """
    if not sample_a or not sample_b:
        raise ValueError("both samples must be non-empty")
    combined = list(sample_a) + list(sample_b)
    if all(v == combined[0] for v in combined):
        raise DegenerateSamples(
            "all values identical across both samples; p = 1.0 by convention"
        )
    n1, n2 = len(sample_a), len(sample_b)
    n = n1 + n2
    ranks, tie_sum = _midranks(combined)
    r1 = sum(ranks[:n1])
    u1 = r1 - n1 * (n1 + 1) / 2.0
    u2 = n1 * n2 - u1

    mu = n1 * n2 / 2.0
    tie_term = tie_sum / (n * (n - 1)) if n > 1 else 0.0
    sigma = math.sqrt(n1 * n2 / 12.0 * ((n + 1) - tie_term))
    if sigma == 0.0:
        raise DegenerateSamples("zero rank variance; p = 1.0 by convention")
    z = (max(u1, u2) - mu - 0.5) / sigma
    p = min(1.0, 2.0 * _normal_sf(z))
    return StatTestResult(u_statistic=u1, p_value=p)
