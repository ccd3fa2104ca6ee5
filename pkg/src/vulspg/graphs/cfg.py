"""Intraprocedural control flow graphs over statement nodes.

ENTRY and EXIT are synthetic sentinels; the function header and parameter
statements form a straight-line prefix before the body.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from vulspg.errors import InternalError
from vulspg.frontend.ast import AstNode, NodeKind

ENTRY = -1
EXIT = -2


@dataclass
class Cfg:
    function: str
    nodes: list[int] = field(default_factory=list)  # statement ids, no sentinels
    edges: set[tuple[int, int]] = field(default_factory=set)

    def successors(self, n: int) -> list[int]:
        return sorted(d for s, d in self.edges if s == n)

    def predecessors(self, n: int) -> list[int]:
        return sorted(s for s, d in self.edges if d == n)

    def all_nodes(self) -> list[int]:
        return [ENTRY, EXIT] + self.nodes


def build_cfg(fn: AstNode) -> Cfg:
    """Standard structured CFG: branches fork at the guard statement,
    loops edge back to their guard, returns edge to EXIT."""
    if fn.kind != NodeKind.FUNCTION_DEF or fn.stmt_id is None:
        raise InternalError("build_cfg expects a FunctionDef with statement ids")
    cfg = Cfg(function=fn.name)
    edges = cfg.edges

    def add(src: int, dst: int):
        edges.add((src, dst))

    params = [c for c in fn.children if c.kind == NodeKind.PARAMETER]
    body = fn.children[-1]

    prefix = [fn.stmt_id] + [p.stmt_id for p in params]
    cfg.nodes.extend(prefix)
    preds = [ENTRY]
    for sid in prefix:
        for p in preds:
            add(p, sid)
        preds = [sid]

    def flow(stmt: AstNode, preds: list[int]) -> list[int]:
        """Wire one statement after `preds`; returns its fall-through exits."""
        if stmt.kind == NodeKind.COMPOUND:
            for child in stmt.children:
                preds = flow(child, preds)
            return preds
        sid = stmt.stmt_id
        if sid is None:
            raise InternalError(f"statement without id in CFG build: {stmt!r}")
        cfg.nodes.append(sid)
        for p in preds:
            add(p, sid)
        if stmt.kind == NodeKind.RETURN:
            add(sid, EXIT)
            return []
        if stmt.kind == NodeKind.IF:
            then_exits = flow(stmt.children[1], [sid])
            if len(stmt.children) == 3:
                else_exits = flow(stmt.children[2], [sid])
                return then_exits + else_exits
            return then_exits + [sid]
        if stmt.kind in (NodeKind.WHILE, NodeKind.FOR):
            body_exits = flow(stmt.children[-1], [sid])
            for e in body_exits:
                add(e, sid)
            return [sid]
        return [sid]

    exits = flow(body, preds)
    for e in exits:
        add(e, EXIT)
    if not any(dst == EXIT for _, dst in edges):
        # Degenerate body with no reachable end; keep EXIT attached.
        add(ENTRY, EXIT)
    return cfg
