"""Whole-program code property graph: per-function PDGs over globally
numbered statements, plus call edges from call sites to callee headers."""

from __future__ import annotations

from dataclasses import dataclass, field

from vulspg.errors import AnalysisError
from vulspg.frontend.ast import AstNode, NodeKind, SourceUnit
from vulspg.graphs.cfg import build_cfg
from vulspg.graphs.defuse import function_defuse
from vulspg.graphs.dependence import DependencyEdge, EdgeKind, control_dependencies, reaching_definitions
from vulspg.graphs.pdg import Pdg


@dataclass
class StatementInfo:
    sid: int
    function: str
    file: str
    kind: str
    line_lo: int
    line_hi: int
    text: str


@dataclass
class FunctionInfo:
    name: str
    file: str
    fd_stmt: int
    params: list[int] = field(default_factory=list)
    returns: list[int] = field(default_factory=list)
    stmts: list[int] = field(default_factory=list)
    pdg: Pdg = None  # type: ignore[assignment]


@dataclass
class Cpg:
    statements: dict[int, StatementInfo] = field(default_factory=dict)
    functions: dict[str, FunctionInfo] = field(default_factory=dict)
    # (call-site statement, callee name); only calls to defined functions
    call_edges: list[tuple[int, str]] = field(default_factory=list)
    # statement-id offset applied to each input unit, aligned by index
    unit_bases: list[int] = field(default_factory=list)

    def function_of(self, sid: int) -> str:
        return self.statements[sid].function

    def callees_of(self, sid: int) -> list[str]:
        return [callee for site, callee in self.call_edges if site == sid]

    def call_sites_of(self, name: str) -> list[int]:
        return [site for site, callee in self.call_edges if callee == name]

    def pdg_edges(self) -> list[DependencyEdge]:
        out: list[DependencyEdge] = []
        for info in self.functions.values():
            out.extend(info.pdg.edges)
        return out


def build_cpg(units: list[SourceUnit]) -> Cpg:
    """Build PDGs for every function and resolve call edges program-wide.

    Statement ids are offset per unit so they are globally unique.
    """
    cpg = Cpg()
    defined: set[str] = set()
    for unit in units:
        for fn in unit.functions:
            if fn.name in defined:
                raise AnalysisError(f"duplicate function name across units: {fn.name}")
            defined.add(fn.name)

    pending_calls: list[tuple[int, str]] = []
    base = 0
    for unit in units:
        cpg.unit_bases.append(base)
        for fn in unit.functions:
            cfg = build_cfg(fn)
            defuse = function_defuse(fn, unit)
            edges = control_dependencies(cfg) | reaching_definitions(cfg, defuse)
            info = FunctionInfo(name=fn.name, file=unit.path, fd_stmt=fn.stmt_id + base)
            pdg = Pdg(function=fn.name)
            for node in fn.walk():
                if node.stmt_id is None:
                    continue
                sid = node.stmt_id + base
                info.stmts.append(sid)
                pdg.nodes.add(sid)
                if node.kind == NodeKind.PARAMETER:
                    info.params.append(sid)
                elif node.kind == NodeKind.RETURN:
                    info.returns.append(sid)
                lo, hi = unit.statement_span(node.stmt_id)
                cpg.statements[sid] = StatementInfo(
                    sid=sid,
                    function=fn.name,
                    file=unit.path,
                    kind=node.kind.value,
                    line_lo=lo,
                    line_hi=hi,
                    text=unit.statement_text(node.stmt_id),
                )
                for callee in _called_names(node):
                    pending_calls.append((sid, callee))
            pdg.edges = {
                DependencyEdge(e.src + base, e.dst + base, e.kind, e.variable)
                for e in edges
            }
            info.pdg = pdg
            cpg.functions[fn.name] = info
        base += len(unit.statements)

    seen: set[tuple[int, str]] = set()
    for sid, callee in pending_calls:
        if callee in defined and (sid, callee) not in seen:
            seen.add((sid, callee))
            cpg.call_edges.append((sid, callee))
    return cpg


def _called_names(stmt: AstNode) -> list[str]:
    """Callee names inside one statement, header-only for guard statements."""
    roots: list[AstNode]
    if stmt.kind in (NodeKind.IF, NodeKind.WHILE):
        roots = [stmt.children[0]]
    elif stmt.kind == NodeKind.FOR:
        roots = stmt.children[:-1]
    elif stmt.kind == NodeKind.FUNCTION_DEF:
        roots = []
    else:
        roots = stmt.children

    names: list[str] = []

    def visit(node: AstNode):
        if node.stmt_id is not None and node is not stmt:
            return  # nested statement, owns its own call sites
        if node.kind == NodeKind.CALL and node.name:
            names.append(node.name)
        for child in node.children:
            visit(child)

    for r in roots:
        visit(r)
    return names
