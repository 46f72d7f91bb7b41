"""Post-dominator computation by iterative dataflow on the reverse graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cfg import Cfg


@dataclass
class PostDomTree:
    """pd sets plus the immediate-post-dominator tree rooted at exit."""

    pd: dict[int, frozenset[int]] = field(default_factory=dict)
    ipd: dict[int, Optional[int]] = field(default_factory=dict)

    def dominates(self, p: int, n: int) -> bool:
        """True when p post-dominates n (reflexive)."""
        return p in self.pd[n]


def post_dominators(cfg: Cfg) -> PostDomTree:
    all_nodes = set(cfg.nodes)
    pd: dict[int, set[int]] = {
        n: ({n} if n == cfg.exit else set(all_nodes)) for n in all_nodes
    }
    # reverse post-order on the reverse graph converges fastest; the fixed
    # point itself is order-independent
    order = _reverse_postorder_on_reverse(cfg)
    changed = True
    while changed:
        changed = False
        for n in order:
            if n == cfg.exit:
                continue
            succs = cfg.successors(n)
            new = set(all_nodes)
            for s in succs:
                new &= pd[s]
            new |= {n}
            if new != pd[n]:
                pd[n] = new
                changed = True
    tree = PostDomTree(pd={n: frozenset(s) for n, s in pd.items()})
    for n in all_nodes:
        strict = pd[n] - {n}
        if not strict:
            tree.ipd[n] = None
            continue
        # the immediate post-dominator is the strict post-dominator closest
        # to n, i.e. the one every other strict post-dominator also covers
        tree.ipd[n] = max(strict, key=lambda p: (len(pd[p]), -p))
    return tree


def _reverse_postorder_on_reverse(cfg: Cfg) -> list[int]:
    seen: set[int] = set()
    order: list[int] = []

    def visit(n: int):
        seen.add(n)
        for p in cfg.predecessors(n):
            if p not in seen:
                visit(p)
        order.append(n)

    visit(cfg.exit)
    for n in cfg.nodes:  # nodes unreachable backward from exit are pruned
        if n not in seen:  # already, but stay total
            visit(n)
    return list(reversed(order))


def control_dependences(cfg: Cfg, pdt: PostDomTree) -> set[tuple[int, int]]:
    """(p, s) pairs with s control-dependent on p.

    For each branch edge p->a, every node on the ipd chain from a up to
    (exclusive) ipd(p) depends on p; a loop guard lands on its own chain and
    becomes control-dependent on itself.
    """
    deps: set[tuple[int, int]] = set()
    for p in cfg.nodes:
        succs = sorted(set(cfg.successors(p)))
        if len(succs) < 2:
            continue
        stop = pdt.ipd[p]
        for a in succs:
            runner: Optional[int] = a
            hops = 0
            while runner is not None and runner != stop:
                deps.add((p, runner))
                runner = pdt.ipd[runner]
                hops += 1
                if hops > len(cfg.nodes):  # cycle guard; cannot occur on a tree
                    break
    return deps
