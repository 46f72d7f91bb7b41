"""Reaching definitions: forward may-analysis with kill semantics."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cfg import Cfg

# a definition is (variable, defining node id); the entry node carries
# pseudo-definitions for parameters and externally-read names
Definition = tuple[str, int]


@dataclass
class ReachingDefs:
    in_sets: dict[int, frozenset[Definition]] = field(default_factory=dict)
    out_sets: dict[int, frozenset[Definition]] = field(default_factory=dict)

    def reaching(self, node_id: int, var: str) -> frozenset[int]:
        """Nodes whose definition of var reaches the entry of node_id."""
        return frozenset(d for v, d in self.in_sets[node_id] if v == var)


def reaching_definitions(cfg: Cfg, entry_defs: frozenset[str] = frozenset()) -> ReachingDefs:
    gen: dict[int, set[Definition]] = {}
    defined_vars: dict[int, frozenset[str]] = {}
    for nid, node in cfg.nodes.items():
        if nid == cfg.entry:
            gen[nid] = {(v, nid) for v in entry_defs}
            defined_vars[nid] = frozenset(entry_defs)
        else:
            gen[nid] = {(v, nid) for v in node.defs}
            defined_vars[nid] = node.defs

    in_sets: dict[int, set[Definition]] = {n: set() for n in cfg.nodes}
    out_sets: dict[int, set[Definition]] = {n: set(gen[n]) for n in cfg.nodes}

    worklist = _reverse_postorder(cfg)
    pending = list(worklist)
    while pending:
        nid = pending.pop(0)
        new_in: set[Definition] = set()
        for p in cfg.predecessors(nid):
            new_in |= out_sets[p]
        kill_vars = defined_vars[nid]
        new_out = gen[nid] | {(v, d) for v, d in new_in if v not in kill_vars}
        if new_in != in_sets[nid] or new_out != out_sets[nid]:
            in_sets[nid] = new_in
            out_sets[nid] = new_out
            for s in cfg.successors(nid):
                if s not in pending:
                    pending.append(s)
    return ReachingDefs(
        in_sets={n: frozenset(s) for n, s in in_sets.items()},
        out_sets={n: frozenset(s) for n, s in out_sets.items()},
    )


def _reverse_postorder(cfg: Cfg) -> list[int]:
    seen: set[int] = set()
    order: list[int] = []

    def visit(n: int):
        seen.add(n)
        for s in cfg.successors(n):
            if s not in seen:
                visit(s)
        order.append(n)

    visit(cfg.entry)
    for n in cfg.nodes:
        if n not in seen:
            visit(n)
    return list(reversed(order))
