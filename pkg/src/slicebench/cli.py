"""Command-line entry points for the workbench.

Subcommands mirror the pipeline stages: ingest a dataset, generate oracle
slices, run an experiment grid, re-score stored records, run an improvement
pass, serve the triage API, or slice one file directly.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .errors import SliceBenchError
from .flow import build_pdg, dump_pdg_dot
from .frontend.parser import parse_program
from .improve import (
    IMPROVEMENT_MODES,
    craft_enhanced_prompt,
    default_crafted_example,
    iterative_reprompt,
)
from .interp import execute
from .llm import (
    Gateway,
    HttpProvider,
    MockProvider,
    PromptSpec,
    build_prompt,
    default_example,
    model_config,
    parse_slice_response,
    render_output_json,
)
from .metrics import format_pct, score_task
from .slicing import (
    STRUCTURAL_MODES,
    SlicingCriterion,
    dynamic_backward_slice,
    static_backward_slice,
)
from .source import SourceProgram
from .taxonomy import LabelStore
from .harness import (
    ExperimentConfig,
    GroundTruthCache,
    aggregate_records,
    build_report,
    build_state,
    create_app,
    gen_ground_truth,
    ingest_dataset,
    load_records,
    rescore_records,
    run_experiment,
)
from .harness.runner import _PdgCache


def _gateway_from_args(args, max_in_flight: int = 4) -> Gateway:
    if getattr(args, "mock_fixtures", None):
        provider = MockProvider(fixtures_dir=Path(args.mock_fixtures),
                                experiment=getattr(args, "mock_experiment", "")
                                or "")
    else:
        provider = HttpProvider()
    return Gateway(provider=provider, max_in_flight=max_in_flight)


def _add_mock_flags(sub) -> None:
    sub.add_argument("--mock-fixtures", metavar="DIR",
                     help="serve responses from fixture files instead of HTTP")
    sub.add_argument("--mock-experiment", metavar="NAME", default="",
                     help="fixture subdirectory to read")


def _emit(payload, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _cmd_ingest(args) -> int:
    result = ingest_dataset(Path(args.dataset))
    _emit({"tasks": [t.task_id for t in result.tasks],
           "manifest": list(result.manifest)}, args.out)
    if result.skipped:
        print(f"skipped {len(result.skipped)} program(s)", file=sys.stderr)
    return 0


def _cmd_ground_truth(args) -> int:
    result = ingest_dataset(Path(args.dataset))
    cache = GroundTruthCache(Path(args.cache) if args.cache else None)
    truth = gen_ground_truth(result.tasks, cache)
    payload = {}
    for task_id in sorted(truth):
        entry = truth[task_id]
        payload[task_id] = ({"lines": list(entry.lines),
                             "from_cache": entry.from_cache}
                            if entry.ok else {"error": entry.error})
    _emit(payload, args.out)
    print(f"cache: {cache.hits} hit(s), {cache.misses} miss(es)",
          file=sys.stderr)
    return 0


def _cmd_run(args) -> int:
    config = ExperimentConfig.from_file(Path(args.config))
    gateway = _gateway_from_args(args, max_in_flight=config.max_in_flight)
    cache = GroundTruthCache(Path(args.cache) if args.cache else None)
    summary = run_experiment(config, gateway, truth_cache=cache)
    for (model, mode, strategy), agg in aggregate_records(
            summary.records).items():
        print(json.dumps(agg.rendered(), sort_keys=True))
    print(f"records: {len(summary.records)} total, {summary.new_count} new, "
          f"{summary.resumed_count} resumed", file=sys.stderr)
    for task_id, error in summary.truth_errors:
        print(f"ground truth failed for {task_id}: {error}", file=sys.stderr)
    return 0


def _cmd_score(args) -> int:
    records = load_records(Path(args.results))
    pdgs = None
    if args.acc_d == "edges":
        if not args.dataset:
            print("error: --acc-d edges needs --dataset to rebuild graphs",
                  file=sys.stderr)
            return 2
        tasks = ingest_dataset(Path(args.dataset)).tasks
        cache = _PdgCache()
        pdgs = {t.program.id: cache.for_task(t) for t in tasks}
    rescored = rescore_records(records, basis=args.acc_d, pdgs=pdgs)
    if args.check:
        drifted = [new.key for old, new in zip(records, rescored)
                   if old.to_json_line() != new.to_json_line()]
        if drifted:
            print(f"error: {len(drifted)} record(s) rescored differently, "
                  f"first: {drifted[0]}", file=sys.stderr)
            return 1
        print(f"{len(records)} record(s) reproduce stored scores exactly",
              file=sys.stderr)
    payload = {"aggregates": [agg.rendered() for agg in
                              aggregate_records(rescored).values()]}
    if args.per_program:
        by_task: dict[str, list[float]] = {}
        for record in rescored:
            by_task.setdefault(record.task_id, []).append(record.acc_d)
        payload["per_task"] = {
            task_id: format_pct(sum(vals) / len(vals))
            for task_id, vals in sorted(by_task.items())
        }
    if args.report:
        payload["report"] = build_report(rescored)
    _emit(payload, args.out)
    return 0


def _cmd_improve(args) -> int:
    from .improve import run_improvement_experiment

    records = load_records(Path(args.baseline))
    records = [r for r in records
               if r.mode == args.mode and r.strategy == "one_shot_cot"]
    if args.model:
        records = [r for r in records if r.model == args.model]
    latest: dict[tuple[str, str], object] = {}
    for record in records:
        key = (record.model, record.task_id)
        held = latest.get(key)
        if held is None or record.run >= held.run:
            latest[key] = record
    baseline: dict[str, list] = {}
    for (model, _), record in sorted(latest.items()):
        baseline.setdefault(model, []).append(record.score())

    tasks = {t.task_id: t for t in ingest_dataset(Path(args.dataset)).tasks}
    truth = {r.task_id: r.lines
             for r in gen_ground_truth(tasks.values()).values() if r.ok}
    labels = LabelStore(Path(args.labels)) if args.labels else None
    gateway = _gateway_from_args(args)
    crafted = default_crafted_example()

    def rerun(model: str, task_id: str):
        task = tasks.get(task_id)
        record = latest.get((model, task_id))
        if task is None or record is None or task_id not in truth:
            return None
        spec = PromptSpec(mode=task.mode, strategy="one_shot_cot",
                          program=task.program, criterion=task.criterion,
                          example=default_example(task.mode, "one_shot_cot"))
        if args.strategy == "crafted":
            prompt = craft_enhanced_prompt(spec, crafted)
        else:
            label = labels.effective_label(task_id) if labels else None
            if label is None:
                return None
            prompt = iterative_reprompt(build_prompt(spec),
                                        record.raw_response, label)
        try:
            result = gateway.complete(prompt, model_config(model),
                                      task_id=task_id)
        except SliceBenchError:
            return None
        parsed = parse_slice_response(result.text, task.program,
                                      task.criterion)
        predicted = None if parsed.parse_failed else parsed.slice.lines
        return score_task(task_id, predicted, truth[task_id],
                          parse_failed=parsed.parse_failed)

    rows = run_improvement_experiment(args.strategy, baseline, rerun,
                                      labels=labels)
    _emit([row.rendered() for row in rows], args.out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    dataset = ingest_dataset(Path(args.dataset))
    truth_map = {r.task_id: r.lines
                 for r in gen_ground_truth(dataset.tasks).values() if r.ok}
    records = load_records(Path(args.results))
    labels = LabelStore(Path(args.labels))
    gateway = _gateway_from_args(args)
    state = build_state(dataset.tasks, truth_map, records, labels, gateway,
                        model=args.model, strategy=args.strategy)
    static_dir = Path(args.static_dir) if args.static_dir else None
    if static_dir is None:
        default_dir = Path("frontend") / "dist"
        if default_dir.is_dir():
            static_dir = default_dir
    app = create_app(state, static_dir=static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _load_source(path: str) -> SourceProgram:
    file_path = Path(path)
    return SourceProgram(id=file_path.stem,
                         text=file_path.read_text(encoding="utf-8"))


def _cmd_slice_static(args) -> int:
    source = _load_source(args.file)
    ast = parse_program(source.text, source.id)
    pdg = build_pdg(ast)
    if args.dump_pdg:
        Path(args.dump_pdg).write_text(dump_pdg_dot(pdg), encoding="utf-8")
    criterion = SlicingCriterion(mode="static", line=args.line,
                                 variable=args.var)
    result = static_backward_slice(ast, pdg, criterion,
                                   structural_lines=args.structural_lines)
    print(render_output_json(result.lines))
    return 0


def _cmd_slice_dynamic(args) -> int:
    source = _load_source(args.file)
    ast = parse_program(source.text, source.id)
    trace = execute(ast)
    if args.dump_trace:
        with Path(args.dump_trace).open("w", encoding="utf-8") as fh:
            for entry in trace.entries:
                fh.write(json.dumps(entry.as_record(), sort_keys=True) + "\n")
    criterion = SlicingCriterion(mode="dynamic", line=args.line)
    result = dynamic_backward_slice(trace, criterion,
                                    structural_lines=args.structural_lines)
    print(render_output_json(result.lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slicebench",
        description="program slicing workbench and LLM evaluation harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load a dataset directory into tasks")
    p.add_argument("dataset")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("ground-truth", help="compute oracle slices per task")
    p.add_argument("dataset")
    p.add_argument("--cache", help="JSON cache file keyed by program hash")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_ground_truth)

    p = sub.add_parser("run", help="execute the configured experiment grid")
    p.add_argument("--config", required=True, metavar="experiment.json")
    p.add_argument("--cache", help="ground-truth cache file")
    _add_mock_flags(p)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("score", help="re-score stored records and aggregate")
    p.add_argument("--in", dest="results", required=True,
                   metavar="results.jsonl")
    p.add_argument("--acc-d", choices=("lines", "edges"), default="lines")
    p.add_argument("--dataset", help="needed to rebuild graphs for --acc-d edges")
    p.add_argument("--per-program", action="store_true")
    p.add_argument("--check", action="store_true",
                   help="fail unless rescoring reproduces stored scores")
    p.add_argument("--report", action="store_true",
                   help="include the full report payload")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("improve", help="re-run failing tasks with guidance")
    p.add_argument("--strategy", choices=IMPROVEMENT_MODES, required=True)
    p.add_argument("--baseline", required=True, metavar="results.jsonl")
    p.add_argument("--dataset", required=True)
    p.add_argument("--mode", choices=("static", "dynamic"), default="static")
    p.add_argument("--model", help="restrict to one model name")
    p.add_argument("--labels", help="label store JSONL (iterative strategy)")
    p.add_argument("--out")
    _add_mock_flags(p)
    p.set_defaults(func=_cmd_improve)

    p = sub.add_parser("serve", help="serve the triage API and UI")
    p.add_argument("--results", required=True, metavar="results.jsonl")
    p.add_argument("--dataset", required=True)
    p.add_argument("--labels", required=True, metavar="labels.jsonl")
    p.add_argument("--model", help="review only this model's records")
    p.add_argument("--strategy", help="review only this strategy's records")
    p.add_argument("--static-dir", help="directory of UI assets to serve")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8337)
    _add_mock_flags(p)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("slice-static", help="slice one file statically")
    p.add_argument("file")
    p.add_argument("--var", required=True)
    p.add_argument("--line", type=int, required=True)
    p.add_argument("--structural-lines", choices=STRUCTURAL_MODES,
                   default="include")
    p.add_argument("--dump-pdg", metavar="FILE",
                   help="write the dependence graph in DOT form")
    p.set_defaults(func=_cmd_slice_static)

    p = sub.add_parser("slice-dynamic", help="slice one file dynamically")
    p.add_argument("file")
    p.add_argument("--line", type=int, required=True)
    p.add_argument("--structural-lines", choices=STRUCTURAL_MODES,
                   default="include")
    p.add_argument("--dump-trace", metavar="FILE",
                   help="write the execution trace as JSONL")
    p.set_defaults(func=_cmd_slice_dynamic)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SliceBenchError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
