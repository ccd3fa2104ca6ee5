"""Control and data dependence over a statement-level CFG.

Control dependence follows the classic post-dominance construction; data
dependence is forward may reaching-definitions. Both run as round-robin
fixpoints over finite lattices, so termination is bounded and asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from vulspg.errors import AnalysisError
from vulspg.graphs.cfg import ENTRY, EXIT, Cfg
from vulspg.graphs.defuse import DefUse


class EdgeKind(str, Enum):
    DATA = "DATA"
    CONTROL = "CONTROL"
    FUNCTION_CALL = "FUNCTION_CALL"


@dataclass(frozen=True, order=True)
class DependencyEdge:
    src: int
    dst: int
    kind: EdgeKind
    variable: Optional[str] = None


def post_dominators(cfg: Cfg) -> dict[int, set[int]]:
    """pd(n): nodes on every path from n to EXIT (n included).

    Fixpoint of pd(n) = {n} | intersection over successors.
    """
    nodes = cfg.all_nodes()
    succ = {n: set() for n in nodes}
    for s, d in cfg.edges:
        succ[s].add(d)
    for n in nodes:
        if n != EXIT and not succ[n]:
            raise AnalysisError(f"EXIT unreachable from node {n}")

    universe = set(nodes)
    pd = {n: ({EXIT} if n == EXIT else set(universe)) for n in nodes}
    max_sweeps = len(nodes) + 2
    for _ in range(max_sweeps):
        changed = False
        for n in nodes:
            if n == EXIT:
                continue
            new = {n}
            inter: set[int] | None = None
            for s in succ[n]:
                inter = pd[s].copy() if inter is None else inter & pd[s]
            new |= inter if inter is not None else set()
            if new != pd[n]:
                pd[n] = new
                changed = True
        if not changed:
            return pd
    raise AnalysisError("post-dominator fixpoint failed to settle")


def control_dependencies(cfg: Cfg) -> set[DependencyEdge]:
    """Y depends on X iff some successor of X is post-dominated by Y while
    Y does not strictly post-dominate X. Loop guards depend on themselves;
    ENTRY/EXIT never appear as endpoints."""
    pd = post_dominators(cfg)
    succ: dict[int, set[int]] = {n: set() for n in cfg.all_nodes()}
    for s, d in cfg.edges:
        succ[s].add(d)

    out: set[DependencyEdge] = set()
    for x in cfg.nodes:
        if len(succ[x]) < 2:
            continue  # only branch points control anything
        for s in succ[x]:
            for y in pd[s]:
                if y in (ENTRY, EXIT) or x in (ENTRY, EXIT):
                    continue
                strictly_postdominates_x = y in pd[x] and y != x
                if not strictly_postdominates_x:
                    out.add(DependencyEdge(x, y, EdgeKind.CONTROL))
    return out


def reaching_definitions(cfg: Cfg, defuse: dict[int, DefUse]) -> set[DependencyEdge]:
    """DATA edges d -> u labeled v where a definition of v at d may reach a
    use of v at u. Forward may-analysis; round-robin sweeps with a bound of
    nodes x variables + 1."""
    nodes = cfg.all_nodes()
    pred: dict[int, list[int]] = {n: [] for n in nodes}
    for s, d in cfg.edges:
        pred[d].append(s)

    variables = set()
    for du in defuse.values():
        variables |= du.defs | du.uses
    gen: dict[int, set[tuple[str, int]]] = {}
    kill_vars: dict[int, set[str]] = {}
    for n in nodes:
        du = defuse.get(n, DefUse())
        gen[n] = {(v, n) for v in du.defs}
        kill_vars[n] = set(du.defs)

    out_sets: dict[int, set[tuple[str, int]]] = {n: set() for n in nodes}
    in_sets: dict[int, set[tuple[str, int]]] = {n: set() for n in nodes}
    max_sweeps = len(nodes) * max(1, len(variables)) + 1
    for _ in range(max_sweeps):
        changed = False
        for n in nodes:
            new_in = set()
            for p in pred[n]:
                new_in |= out_sets[p]
            new_out = gen[n] | {(v, d) for (v, d) in new_in if v not in kill_vars[n]}
            if new_in != in_sets[n] or new_out != out_sets[n]:
                in_sets[n] = new_in
                out_sets[n] = new_out
                changed = True
        if not changed:
            break
    else:
        raise AnalysisError("reaching-definitions fixpoint exceeded its sweep bound")

    edges: set[DependencyEdge] = set()
    for u in cfg.nodes:
        du = defuse.get(u, DefUse())
        for (v, d) in in_sets[u]:
            if v in du.uses and d not in (ENTRY, EXIT):
                edges.add(DependencyEdge(d, u, EdgeKind.DATA, v))
    return edges
