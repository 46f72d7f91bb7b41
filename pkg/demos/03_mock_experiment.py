"""
A full experiment run against a mock provider
=============================================

Ingest the bundled corpus, generate oracle slices, run a provider that
answers every task with the truth minus one line, and aggregate the
scores into the report tables.
"""

import importlib.resources as resources
import tempfile
from pathlib import Path

from slicebench.harness import (
    ExperimentConfig,
    aggregate_records,
    build_report,
    gen_ground_truth,
    ingest_dataset,
    run_experiment,
)
from slicebench.llm import Gateway, model_config, render_output_json
from slicebench.llm.client import CallResult, estimate_tokens

corpus = Path(str(resources.files("slicebench"))) / "assets" / "corpus"

# ## Ingest: programs + criteria sidecars -> tasks

ingested = ingest_dataset(corpus)
print("tasks:", len(ingested.tasks), "skipped:", len(ingested.skipped))

# ## Ground truth from the reference slicers

truth = {tid: res.lines
         for tid, res in gen_ground_truth(ingested.tasks).items()}


# ## A provider that is wrong by exactly one line per task

class DropOne:
    name = "drop-one"

    def complete(self, prompt, config, task_id=None):
        lines = list(truth[task_id])[:-1]
        return CallResult(text=render_output_json(lines), latency_s=0.0,
                          retry_count=0,
                          prompt_tokens_est=estimate_tokens(prompt),
                          provider=self.name)


out = Path(tempfile.mkdtemp()) / "records.jsonl"
config = ExperimentConfig(
    dataset_dir=corpus,
    models=(model_config("GPT-4o"),),
    strategies=("zero_shot", "one_shot_cot"),
    modes=("static", "dynamic"),
    runs=1,
    out_path=out)
summary = run_experiment(config, Gateway(provider=DropOne()))
print("records written:", len(summary.records), "->", out)

# ## Aggregate and report

for key, agg in sorted(aggregate_records(summary.records).items()):
    row = agg.rendered()
    print(f"{row['model']:8} {row['mode']:8} {row['strategy']:13}"
          f" acc_d={row['acc_d']}  acc_em={row['acc_em']}")

report = build_report(summary.records)
print("static-vs-dynamic rank test:", report["stat_test"])
