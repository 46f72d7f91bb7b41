"""
Labeling failures and measuring prompt improvements
===================================================

Walk the triage flow: register task scores, label the failures against
the root-cause/location taxonomy, summarize the distribution, then show
the two improvement routes and their reported deltas.
"""

import tempfile
from pathlib import Path

from slicebench.metrics import TaskScore
from slicebench.taxonomy import (
    FailureLabel,
    FaultLocation,
    LabelStore,
    RootCause,
    distribution,
    flow_map,
)
from slicebench.improve import (
    reference_improvement_report,
    run_improvement_experiment,
)

# ## A small batch of scored tasks, two of them failures

scores = [
    TaskScore(task_id="t1", exact_match=True, acc_d=1.0),
    TaskScore(task_id="t2", exact_match=False, acc_d=0.6),
    TaskScore(task_id="t3", exact_match=False, acc_d=0.0),
]
store = LabelStore(Path(tempfile.mkdtemp()) / "labels.jsonl")
store.register_tasks(scores)

# ## Label the failures

store.record_label(FailureLabel(
    task_id="t2", reviewer="rev-a",
    root_cause=RootCause.COMPLEX_CONTROL_FLOW,
    locations=frozenset({FaultLocation.LOOP_CONSTRUCTS,
                         FaultLocation.VARIABLE_DECLARATIONS_AND_ASSIGNMENTS})))
store.record_label(FailureLabel(
    task_id="t3", reviewer="rev-a",
    root_cause=RootCause.LOGIC_METHOD_INVOCATION,
    locations=frozenset({FaultLocation.METHOD_INVOCATIONS_AND_RETURNS})))

dist = distribution(store)
print("labeled:", dist.total)
print("root causes:", dist.root_causes)
print("locations:", dist.locations)
for root, loc, count in flow_map(store):
    print(f"  {root} -> {loc}: {count}")

# ## Improvement routes: 4 of 100 tasks fixed is a +4.00 delta

baseline = {"GPT-4o": (
    [TaskScore(task_id=f"t{i:03d}", exact_match=True, acc_d=1.0)
     for i in range(96)]
    + [TaskScore(task_id=f"t{i:03d}", exact_match=False, acc_d=0.0)
       for i in range(96, 100)])}
rows = run_improvement_experiment(
    "crafted", baseline,
    lambda model, task_id: TaskScore(task_id=task_id, exact_match=True,
                                     acc_d=1.0))
print("crafted-example rerun:", rows[0].rendered())

# ## The published comparison the report embeds

for row in reference_improvement_report():
    print(f"{row['model']:16} baseline={row['baseline']}"
          f" crafted={row['crafted']} iterative={row['iterative']}")
