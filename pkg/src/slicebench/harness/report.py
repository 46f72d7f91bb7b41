"""Aggregated reports: accuracy tables, label distributions, stat tests.

Reports are pure functions of stored records plus the label store, so a
report can be rebuilt from the JSONL alone and must come out identical.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Optional, Sequence

from ..errors import DegenerateSamples, UnresolvedDisagreement
from ..flow import Pdg
from ..improve import reference_improvement_report
from ..metrics import mann_whitney_u, score_task
from ..taxonomy import LabelStore, distribution, flow_map
from .runner import aggregate_records
from .tasks import ExperimentRecord


def rescore_records(
    records: Iterable[ExperimentRecord],
    *,
    basis: str = "lines",
    pdgs: Optional[dict[str, Pdg]] = None,
) -> list[ExperimentRecord]:
    """Recompute every score from stored predictions and truths.

    Rebuilding from the JSONL must reproduce the stored scores exactly;
    any drift means the scoring path changed under saved data.
    """
    out = []
    for record in records:
        pdg = (pdgs or {}).get(record.program_id) if basis == "edges" else None
        score = score_task(record.task_id, record.predicted_lines,
                           record.truth_lines,
                           parse_failed=record.parse_failed,
                           basis=basis, pdg=pdg)
        out.append(dataclasses.replace(
            record, exact_match=score.exact_match, acc_d=score.acc_d,
            parse_failed=score.parse_failed))
    return out


def mode_stat_test(records: Sequence[ExperimentRecord]) -> Optional[dict]:
    """Rank test over per-(model, strategy) Acc-D means, static vs dynamic."""
    aggs = aggregate_records(records)
    static_vals = [agg.acc_d for (_, mode, _), agg in sorted(aggs.items())
                   if mode == "static"]
    dynamic_vals = [agg.acc_d for (_, mode, _), agg in sorted(aggs.items())
                    if mode == "dynamic"]
    if not static_vals or not dynamic_vals:
        return None
    try:
        result = mann_whitney_u(static_vals, dynamic_vals)
    except DegenerateSamples as exc:
        return {"error": f"DegenerateSamples: {exc}"}
    return {
        "u_statistic": result.u_statistic,
        "p_value": result.p_value,
        "method": result.method,
        "n_static": len(static_vals),
        "n_dynamic": len(dynamic_vals),
    }


def build_report(
    records: Iterable[ExperimentRecord],
    label_store: Optional[LabelStore] = None,
) -> dict:
    records = list(records)
    tables: dict[str, list[dict]] = {"static": [], "dynamic": []}
    for (_, mode, _), agg in sorted(aggregate_records(records).items()):
        tables.setdefault(mode, []).append(agg.rendered())

    failure_kinds: dict[str, int] = {}
    for record in records:
        if record.failure_kind:
            failure_kinds[record.failure_kind] = (
                failure_kinds.get(record.failure_kind, 0) + 1)

    report = {
        "record_count": len(records),
        "tables": tables,
        "failure_kinds": dict(sorted(failure_kinds.items())),
        "improvement_reference": reference_improvement_report(),
        "stat_test": mode_stat_test(records),
    }
    if label_store is not None:
        try:
            dist = distribution(label_store)
        except UnresolvedDisagreement as exc:
            report["distribution"] = {
                "error": "unresolved reviewer disagreement",
                "open_tasks": sorted(exc.task_ids),
            }
            report["flow_map"] = []
        else:
            report["distribution"] = {
                "total": dist.total,
                "root_causes": dict(sorted(dist.root_causes.items())),
                "model_constraints": dict(sorted(dist.model_constraints.items())),
                "locations": dict(sorted(dist.locations.items())),
            }
            report["flow_map"] = [
                {"root_cause": root, "location": loc, "count": count}
                for root, loc, count in flow_map(label_store)
            ]
    return report
