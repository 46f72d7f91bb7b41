"""Dataset ingestion, experiment orchestration, reporting, and the HTTP API."""

from .ground_truth import (
    GroundTruthCache,
    TruthResult,
    gen_ground_truth,
    oracle_slice,
    truth_key,
)
from .ingest import IngestResult, ingest_dataset, ingest_one
from .report import build_report, mode_stat_test, rescore_records
from .runner import (
    Job,
    RecordAppender,
    RunSummary,
    aggregate_records,
    execute_job,
    existing_keys,
    plan_jobs,
    run_experiment,
)
from .server import TriageState, build_state, create_app, diff_lines
from .tasks import (
    ExperimentConfig,
    ExperimentRecord,
    SliceTask,
    load_records,
    prompt_hash,
    record_key,
)

__all__ = [
    "ExperimentConfig",
    "ExperimentRecord",
    "GroundTruthCache",
    "IngestResult",
    "Job",
    "RecordAppender",
    "RunSummary",
    "SliceTask",
    "TriageState",
    "TruthResult",
    "aggregate_records",
    "build_report",
    "build_state",
    "create_app",
    "diff_lines",
    "execute_job",
    "existing_keys",
    "gen_ground_truth",
    "ingest_dataset",
    "ingest_one",
    "load_records",
    "mode_stat_test",
    "oracle_slice",
    "plan_jobs",
    "prompt_hash",
    "record_key",
    "rescore_records",
    "run_experiment",
    "truth_key",
]
