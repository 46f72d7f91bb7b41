"""Per-method control-flow graphs.

One node per simple statement or guard, plus synthetic entry/exit. Edges
carry labels: seq, true-branch, false-branch, back-edge. Nodes that cannot
appear on an entry-to-exit path (code after return, code behind an
infinite loop) are pruned so every remaining node lies on such a path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import InternalError
from ..frontend.ast_nodes import (
    AssignStmt,
    Block,
    DoWhileStmt,
    ExprStmt,
    ForEachStmt,
    ForStmt,
    IfStmt,
    IncrStmt,
    MethodDecl,
    ReturnStmt,
    Stmt,
    VarDecl,
    WhileStmt,
)

EDGE_LABELS = ("seq", "true-branch", "false-branch", "back-edge")


@dataclass
class FlowNode:
    id: int
    kind: str  # "entry" | "exit" | "stmt"
    stmt: Optional[Stmt] = None

    @property
    def defs(self) -> frozenset[str]:
        return self.stmt.own_defs if self.stmt is not None else frozenset()

    @property
    def uses(self) -> frozenset[str]:
        return self.stmt.own_uses if self.stmt is not None else frozenset()


@dataclass
class Cfg:
    method: str
    nodes: dict[int, FlowNode] = field(default_factory=dict)
    edges: list[tuple[int, int, str]] = field(default_factory=list)
    entry: int = -1
    exit: int = -1

    def successors(self, node_id: int) -> list[int]:
        return [b for a, b, _ in self.edges if a == node_id]

    def predecessors(self, node_id: int) -> list[int]:
        return [a for a, b, _ in self.edges if b == node_id]

    def node_for_sid(self, sid: int) -> Optional[int]:
        for nid, node in self.nodes.items():
            if node.stmt is not None and node.stmt.sid == sid:
                return nid
        return None


class _Builder:
    def __init__(self, method: MethodDecl):
        self.cfg = Cfg(method=method.name)
        self.next_id = 0

    def add_node(self, kind: str, stmt: Optional[Stmt] = None) -> int:
        nid = self.next_id
        self.next_id += 1
        self.cfg.nodes[nid] = FlowNode(id=nid, kind=kind, stmt=stmt)
        return nid

    def add_edge(self, a: int, b: int, label: str):
        self.cfg.edges.append((a, b, label))

    def connect(self, dangling: list[tuple[int, str]], target: int):
        for node, label in dangling:
            self.add_edge(node, target, label)

    def build(self, method: MethodDecl) -> Cfg:
        self.cfg.entry = self.add_node("entry")
        self.cfg.exit = self.add_node("exit")
        first, dangling = self.lower_block(method.body)
        if first is None:
            self.add_edge(self.cfg.entry, self.cfg.exit, "seq")
        else:
            self.add_edge(self.cfg.entry, first, "seq")
            self.connect(dangling, self.cfg.exit)
        prune_unreachable(self.cfg)
        return self.cfg

    def lower_block(self, block: Block) -> tuple[Optional[int], list[tuple[int, str]]]:
        first: Optional[int] = None
        dangling: list[tuple[int, str]] = []
        for child in block.body:
            cfirst, cdangling = self.lower(child)
            if cfirst is None:
                continue
            if first is None:
                first = cfirst
            else:
                self.connect(dangling, cfirst)
            dangling = cdangling
        return first, dangling

    def lower(self, stmt: Stmt) -> tuple[Optional[int], list[tuple[int, str]]]:
        if isinstance(stmt, Block):
            return self.lower_block(stmt)
        if isinstance(stmt, (VarDecl, AssignStmt, IncrStmt, ExprStmt)):
            nid = self.add_node("stmt", stmt)
            return nid, [(nid, "seq")]
        if isinstance(stmt, ReturnStmt):
            nid = self.add_node("stmt", stmt)
            self.add_edge(nid, self.cfg.exit, "seq")
            return nid, []
        if isinstance(stmt, IfStmt):
            return self.lower_if(stmt)
        if isinstance(stmt, WhileStmt):
            return self.lower_while(stmt)
        if isinstance(stmt, DoWhileStmt):
            return self.lower_do_while(stmt)
        if isinstance(stmt, ForStmt):
            return self.lower_for(stmt)
        if isinstance(stmt, ForEachStmt):
            return self.lower_for_each(stmt)
        raise InternalError(f"no CFG lowering for statement kind {stmt.kind!r}")

    def lower_if(self, stmt: IfStmt) -> tuple[int, list[tuple[int, str]]]:
        guard = self.add_node("stmt", stmt)
        dangling: list[tuple[int, str]] = []
        tfirst, tdangling = self.lower_block(stmt.then_body)
        if tfirst is None:
            dangling.append((guard, "true-branch"))
        else:
            self.add_edge(guard, tfirst, "true-branch")
            dangling.extend(tdangling)
        if stmt.else_body is None:
            dangling.append((guard, "false-branch"))
        else:
            efirst, edangling = self.lower(stmt.else_body)
            if efirst is None:
                dangling.append((guard, "false-branch"))
            else:
                self.add_edge(guard, efirst, "false-branch")
                dangling.extend(edangling)
        return guard, dangling

    def lower_while(self, stmt: WhileStmt) -> tuple[int, list[tuple[int, str]]]:
        guard = self.add_node("stmt", stmt)
        bfirst, bdangling = self.lower_block(stmt.body)
        if bfirst is None:
            self.add_edge(guard, guard, "back-edge")
        else:
            self.add_edge(guard, bfirst, "true-branch")
            for node, _ in bdangling:
                self.add_edge(node, guard, "back-edge")
        return guard, [(guard, "false-branch")]

    def lower_do_while(self, stmt: DoWhileStmt) -> tuple[int, list[tuple[int, str]]]:
        guard = self.add_node("stmt", stmt)
        bfirst, bdangling = self.lower_block(stmt.body)
        if bfirst is None:
            self.add_edge(guard, guard, "back-edge")
            return guard, [(guard, "false-branch")]
        self.connect(bdangling, guard)
        self.add_edge(guard, bfirst, "back-edge")
        return bfirst, [(guard, "false-branch")]

    def lower_for(self, stmt: ForStmt) -> tuple[int, list[tuple[int, str]]]:
        init_id: Optional[int] = None
        if stmt.init is not None:
            init_id, _ = self.lower(stmt.init)
        guard = self.add_node("stmt", stmt)
        if init_id is not None:
            self.add_edge(init_id, guard, "seq")
        update_id: Optional[int] = None
        if stmt.update is not None:
            update_id, _ = self.lower(stmt.update)
        bfirst, bdangling = self.lower_block(stmt.body)
        loop_back = update_id if update_id is not None else guard
        if bfirst is None:
            self.add_edge(guard, loop_back if update_id is not None else guard,
                          "true-branch" if update_id is not None else "back-edge")
        else:
            self.add_edge(guard, bfirst, "true-branch")
            for node, _ in bdangling:
                self.add_edge(node, loop_back, "seq" if update_id is not None else "back-edge")
        if update_id is not None:
            self.add_edge(update_id, guard, "back-edge")
        first = init_id if init_id is not None else guard
        if stmt.cond is None:
            return first, []  # no exit from a condition-less loop
        return first, [(guard, "false-branch")]

    def lower_for_each(self, stmt: ForEachStmt) -> tuple[int, list[tuple[int, str]]]:
        guard = self.add_node("stmt", stmt)
        bfirst, bdangling = self.lower_block(stmt.body)
        if bfirst is None:
            self.add_edge(guard, guard, "back-edge")
        else:
            self.add_edge(guard, bfirst, "true-branch")
            for node, _ in bdangling:
                self.add_edge(node, guard, "back-edge")
        return guard, [(guard, "false-branch")]


def prune_unreachable(cfg: Cfg):
    """Drop nodes off every entry-to-exit path; entry/exit always stay."""
    forward = _reach(cfg, cfg.entry, cfg.successors)
    backward = _reach(cfg, cfg.exit, cfg.predecessors)
    keep = (forward & backward) | {cfg.entry, cfg.exit}
    cfg.nodes = {nid: n for nid, n in cfg.nodes.items() if nid in keep}
    cfg.edges = [(a, b, l) for a, b, l in cfg.edges if a in keep and b in keep]


def _reach(cfg: Cfg, start: int, step) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        for nxt in step(stack.pop()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def build_cfg(method: MethodDecl) -> Cfg:
    """Control-flow graph for one method body."""
    return _Builder(method).build(method)
