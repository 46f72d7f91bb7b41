"""Program dependence graph assembly.

Per-method data and control dependences from the CFG analyses, joined by
conservative interprocedural edges:

- call edge: call site -> callee entry
- param edge: call site -> callee entry, one per parameter (argument uses
  feeding the parameter pseudo-definitions)
- "@ret" data edge: each return statement of the callee -> call site
- "@out:<p>" data edge: each callee statement defining a mutable parameter
  p -> call site (the mutation escapes through the reference)

Backward traversal over this edge set pulls, for any call site in a slice,
the callee statements its returned value and escaping mutations depend on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from ..frontend.ast_nodes import (
    ArrayIndex,
    ArrayInit,
    AssignExpr,
    AssignStmt,
    Ast,
    Binary,
    Cast,
    DoWhileStmt,
    Expr,
    ExprStmt,
    FieldAccess,
    ForEachStmt,
    ForStmt,
    IfStmt,
    IncrStmt,
    MethodCall,
    MethodDecl,
    NewArray,
    NewObject,
    ReturnStmt,
    Stmt,
    Ternary,
    Unary,
    VarDecl,
    WhileStmt,
)
from ..frontend.defuse import is_mutable_type
from .cfg import Cfg, build_cfg
from .postdom import control_dependences, post_dominators
from .reaching import reaching_definitions

EDGE_KINDS = ("data", "control", "call", "param")


@dataclass
class PdgNode:
    key: str
    kind: str  # "stmt" | "entry"
    line: int  # anchor line (method header line for entries)
    method: str
    stmt: Optional[Stmt] = None
    defs: frozenset[str] = frozenset()
    uses: frozenset[str] = frozenset()


@dataclass
class PdgEdge:
    src: str
    dst: str
    kind: str  # data | control | call | param
    var: str = ""  # variable for data edges, parameter name for param edges

    def as_tuple(self) -> tuple[str, str, str, str]:
        return (self.src, self.dst, self.kind, self.var)


@dataclass
class Pdg:
    ast: Ast
    nodes: dict[str, PdgNode] = field(default_factory=dict)
    edges: list[PdgEdge] = field(default_factory=list)
    # reaching definitions at each statement node: (variable, defining key)
    rd_in: dict[str, frozenset[tuple[str, str]]] = field(default_factory=dict)
    _in: dict[str, list[PdgEdge]] = field(default_factory=dict)
    _out: dict[str, list[PdgEdge]] = field(default_factory=dict)

    def add_node(self, node: PdgNode):
        self.nodes[node.key] = node

    def add_edge(self, src: str, dst: str, kind: str, var: str = ""):
        edge = PdgEdge(src, dst, kind, var)
        self.edges.append(edge)
        self._in.setdefault(dst, []).append(edge)
        self._out.setdefault(src, []).append(edge)

    def in_edges(self, key: str) -> list[PdgEdge]:
        return self._in.get(key, [])

    def out_edges(self, key: str) -> list[PdgEdge]:
        return self._out.get(key, [])

    def stmt_key(self, stmt: Stmt) -> str:
        return f"s{stmt.sid}"

    def entry_key(self, method: str) -> str:
        return f"entry:{method}"

    def node_for_stmt(self, stmt: Stmt) -> Optional[PdgNode]:
        return self.nodes.get(f"s{stmt.sid}")

    def dedupe(self):
        seen: set[tuple[str, str, str, str]] = set()
        unique: list[PdgEdge] = []
        for edge in self.edges:
            t = edge.as_tuple()
            if t not in seen:
                seen.add(t)
                unique.append(edge)
        self.edges = unique
        self._in = {}
        self._out = {}
        for edge in unique:
            self._in.setdefault(edge.dst, []).append(edge)
            self._out.setdefault(edge.src, []).append(edge)


def own_expressions(stmt: Stmt) -> list[Expr]:
    """The expressions evaluated by this node itself (bodies excluded)."""
    if isinstance(stmt, VarDecl):
        return [init for _, init in stmt.declarators if init is not None]
    if isinstance(stmt, (AssignStmt, IncrStmt, ExprStmt)):
        return [stmt.expr]
    if isinstance(stmt, ReturnStmt):
        return [stmt.value] if stmt.value is not None else []
    if isinstance(stmt, (IfStmt, WhileStmt, DoWhileStmt)):
        return [stmt.cond]
    if isinstance(stmt, ForStmt):
        return [stmt.cond] if stmt.cond is not None else []
    if isinstance(stmt, ForEachStmt):
        return [stmt.iterable]
    return []


def iter_calls(expr: Expr) -> Iterator[MethodCall]:
    """Every method call inside expr, the expr itself included."""
    stack = [expr]
    while stack:
        e = stack.pop()
        if e is None:
            continue
        if isinstance(e, MethodCall):
            yield e
            stack.append(e.receiver)
            stack.extend(e.args)
        elif isinstance(e, ArrayIndex):
            stack.extend([e.base, e.index])
        elif isinstance(e, FieldAccess):
            stack.append(e.base)
        elif isinstance(e, (NewObject,)):
            stack.extend(e.args)
        elif isinstance(e, NewArray):
            stack.extend(e.dims)
            stack.append(e.init)
        elif isinstance(e, ArrayInit):
            stack.extend(e.values)
        elif isinstance(e, Unary):
            stack.append(e.operand)
        elif isinstance(e, Binary):
            stack.extend([e.left, e.right])
        elif isinstance(e, Ternary):
            stack.extend([e.cond, e.then, e.other])
        elif isinstance(e, Cast):
            stack.append(e.operand)
        elif isinstance(e, AssignExpr):
            stack.extend([e.target, e.value])


def user_calls_of(stmt: Stmt, user_methods: set[str]) -> list[str]:
    """Names of same-program methods this statement invokes directly."""
    names: list[str] = []
    for expr in own_expressions(stmt):
        for call in iter_calls(expr):
            if call.receiver is None and call.name in user_methods:
                names.append(call.name)
    return names


def entry_pseudo_defs(cfg: Cfg, method: MethodDecl) -> frozenset[str]:
    """Parameters plus names read in the method but never written."""
    params = {name for _, name in method.params}
    used: set[str] = set()
    defined: set[str] = set()
    for node in cfg.nodes.values():
        used |= node.uses
        defined |= node.defs
    return frozenset(params | (used - defined))


def build_pdg(ast: Ast) -> Pdg:
    pdg = Pdg(ast=ast)
    methods = ast.methods
    user_methods = set(methods)
    cfgs: dict[str, Cfg] = {}

    for name, method in methods.items():
        cfg = build_cfg(method)
        cfgs[name] = cfg
        entry_key = pdg.entry_key(name)
        pseudo = entry_pseudo_defs(cfg, method)
        pdg.add_node(PdgNode(
            key=entry_key, kind="entry", line=method.header_line,
            method=name, defs=pseudo, uses=frozenset(),
        ))
        for nid in sorted(cfg.nodes):
            node = cfg.nodes[nid]
            if node.stmt is None:
                continue
            pdg.add_node(PdgNode(
                key=pdg.stmt_key(node.stmt), kind="stmt", line=node.stmt.line,
                method=name, stmt=node.stmt, defs=node.defs, uses=node.uses,
            ))

        def key_of(nid: int) -> str:
            if nid == cfg.entry:
                return entry_key
            return pdg.stmt_key(cfg.nodes[nid].stmt)

        # data edges from reaching definitions
        rd = reaching_definitions(cfg, pseudo)
        for nid in sorted(cfg.nodes):
            node = cfg.nodes[nid]
            if node.stmt is None:
                continue
            pdg.rd_in[key_of(nid)] = frozenset(
                (v, key_of(d)) for v, d in rd.in_sets[nid]
            )
            for var in sorted(node.uses):
                for d in sorted(rd.reaching(nid, var)):
                    pdg.add_edge(key_of(d), key_of(nid), "data", var)

        # control edges, entry governing the dependence roots
        pdt = post_dominators(cfg)
        cdeps = control_dependences(cfg, pdt)
        governed = {s for _, s in cdeps}
        for p, s in sorted(cdeps):
            if cfg.nodes[s].stmt is None:
                continue
            src = key_of(p) if cfg.nodes[p].stmt is not None else entry_key
            pdg.add_edge(src, key_of(s), "control")
        for nid in sorted(cfg.nodes):
            node = cfg.nodes[nid]
            if node.stmt is None or nid in governed:
                continue
            pdg.add_edge(entry_key, key_of(nid), "control")

    # interprocedural edges
    mutable_params: dict[str, list[str]] = {
        name: [pname for ptype, pname in m.params if is_mutable_type(ptype)]
        for name, m in methods.items()
    }
    returns: dict[str, list[Stmt]] = {name: [] for name in methods}
    param_mutators: dict[str, list[Stmt]] = {name: [] for name in methods}
    for name, cfg in cfgs.items():
        for nid in sorted(cfg.nodes):
            stmt = cfg.nodes[nid].stmt
            if stmt is None:
                continue
            if isinstance(stmt, ReturnStmt):
                returns[name].append(stmt)
            if any(p in stmt.own_defs for p in mutable_params[name]):
                param_mutators[name].append(stmt)

    for name, cfg in cfgs.items():
        for nid in sorted(cfg.nodes):
            stmt = cfg.nodes[nid].stmt
            if stmt is None:
                continue
            for callee in user_calls_of(stmt, user_methods):
                site = pdg.stmt_key(stmt)
                centry = pdg.entry_key(callee)
                pdg.add_edge(site, centry, "call")
                for _, pname in methods[callee].params:
                    pdg.add_edge(site, centry, "param", pname)
                for ret in returns[callee]:
                    pdg.add_edge(pdg.stmt_key(ret), site, "data", "@ret")
                for mut in param_mutators[callee]:
                    for p in mutable_params[callee]:
                        if p in mut.own_defs:
                            pdg.add_edge(pdg.stmt_key(mut), site, "data", f"@out:{p}")

    pdg.dedupe()
    return pdg


def dump_pdg_dot(pdg: Pdg) -> str:
    """Deterministic DOT rendering for debugging."""
    lines = ["digraph pdg {", "  rankdir=BT;"]
    for key in sorted(pdg.nodes):
        node = pdg.nodes[key]
        if node.kind == "entry":
            label = f"{node.method} entry (line {node.line})"
            shape = "box"
        else:
            label = f"line {node.line}: {node.stmt.kind}"
            shape = "ellipse"
        lines.append(f'  "{key}" [label="{label}", shape={shape}];')
    style = {"data": "solid", "control": "dashed", "call": "bold", "param": "dotted"}
    for edge in sorted(pdg.edges, key=lambda e: e.as_tuple()):
        attr = f'style={style[edge.kind]}'
        if edge.var:
            attr += f', label="{edge.var}"'
        lines.append(f'  "{edge.src}" -> "{edge.dst}" [{attr}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
