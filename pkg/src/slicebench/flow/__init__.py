"""Control-flow graphs, dominance, reaching definitions, dependence graphs."""

from __future__ import annotations

from .cfg import Cfg, FlowNode, build_cfg
from .pdg import Pdg, PdgEdge, PdgNode, build_pdg, dump_pdg_dot
from .postdom import PostDomTree, control_dependences, post_dominators
from .reaching import ReachingDefs, reaching_definitions

__all__ = [
    "Cfg", "FlowNode", "build_cfg",
    "Pdg", "PdgEdge", "PdgNode", "build_pdg", "dump_pdg_dot",
    "PostDomTree", "control_dependences", "post_dominators",
    "ReachingDefs", "reaching_definitions",
]
