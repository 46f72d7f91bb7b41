"""
Static and dynamic slicing, end to end
======================================

Parse one of the bundled corpus programs, build its dependence graph,
take a backward slice both ways, and check the containment relation
between them.
"""

import importlib.resources as resources
from pathlib import Path

from slicebench.frontend.parser import parse_program
from slicebench.flow import build_pdg
from slicebench.interp import execute
from slicebench.slicing import (
    SlicingCriterion,
    dynamic_backward_slice,
    static_backward_slice,
)

corpus = Path(str(resources.files("slicebench"))) / "assets" / "corpus"
source = (corpus / "programs" / "branch_chooser.java").read_text()
print(source)

# ## Parse and inspect

ast = parse_program(source, "branch_chooser")
print("methods:", ", ".join(ast.methods))
print("lines:", ast.line_count)

# ## The dependence graph

pdg = build_pdg(ast)
print("pdg nodes:", len(pdg.nodes), "edges:", len(pdg.edges))
for edge in list(pdg.edges)[:5]:
    print(" ", edge.kind, edge.src, "->", edge.dst)

# ## Static slice: which lines can affect `result` at the return?

criterion = SlicingCriterion(mode="static", line=12, variable="out")
static = static_backward_slice(ast, pdg, criterion)
print("static slice:", list(static.lines))

# ## Dynamic slice: which lines DID affect the value returned?

trace = execute(ast)
print("executed lines:", sorted(trace.lines_executed()))
dynamic = dynamic_backward_slice(
    trace, SlicingCriterion(mode="dynamic", line=12))
print("dynamic slice:", list(dynamic.lines))

# Only one branch of the if ran, so the dynamic slice drops the other.
assert set(dynamic.lines) <= set(static.lines)
print("containment holds; static-only lines:",
      sorted(set(static.lines) - set(dynamic.lines)))
