"""Slice property graphs: assembly from slice-node sets, subgraph split,
labeling, canonical hashing/dedup, and JSON/DOT serialization."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

from vulspg.errors import InternalError
from vulspg.graphs.cpg import Cpg
from vulspg.graphs.dependence import DependencyEdge, EdgeKind
from vulspg.slicer import SliceNodeSets
from vulspg.syvc import SyVC


@dataclass
class SpgNode:
    sid: int
    text: str
    type: str
    file: str
    line: int
    line_hi: int = 0

    def __post_init__(self):
        if self.line_hi < self.line:
            self.line_hi = self.line


@dataclass
class Spg:
    nodes: list[SpgNode]
    edges: list[DependencyEdge]
    criterion: SyVC
    criterion_file: str
    label: Optional[int] = None

    def node_ids(self) -> set[int]:
        return {n.sid for n in self.nodes}

    def edges_of(self, kind: EdgeKind) -> list[DependencyEdge]:
        return [e for e in self.edges if e.kind == kind]


@dataclass
class SpgSubgraphs:
    cdg: Spg
    ddg: Spg
    fcdg: Spg


def assemble_spg(cpg: Cpg, slice_sets: SliceNodeSets) -> Spg:
    """Induce the dependency subgraph of the CPG on the slice nodes.

    Nodes enter the graph as endpoints of kept DATA/CONTROL edges; the
    criterion statement is always kept, even isolated. Call edges are then
    added from in-graph call sites to the callee's header statement when
    the callee itself shows up in the slice.
    """
    sn = slice_sets.all_nodes()
    if not sn:
        raise InternalError("empty slice-node set (criterion must be present)")
    criterion_sid = slice_sets.criterion.statement_id

    kept: list[DependencyEdge] = []
    node_ids: set[int] = {criterion_sid}
    for edge in cpg.pdg_edges():
        if edge.src in sn and edge.dst in sn:
            kept.append(edge)
            node_ids.add(edge.src)
            node_ids.add(edge.dst)

    # A call edge is kept when its site is in the graph and the callee
    # itself shows up in the slice (its header or any contributed node).
    slice_functions = {cpg.function_of(sid) for sid in sn}
    for site, callee in cpg.call_edges:
        if site not in node_ids:
            continue
        info = cpg.functions[callee]
        if callee in slice_functions or info.fd_stmt in sn:
            node_ids.add(info.fd_stmt)
            kept.append(DependencyEdge(site, info.fd_stmt, EdgeKind.FUNCTION_CALL))

    nodes = [
        SpgNode(
            sid=sid,
            text=cpg.statements[sid].text,
            type=cpg.statements[sid].kind,
            file=cpg.statements[sid].file,
            line=cpg.statements[sid].line_lo,
            line_hi=cpg.statements[sid].line_hi,
        )
        for sid in node_ids
    ]
    nodes.sort(key=lambda n: (n.file, n.line, n.sid))
    edges = sorted(set(kept), key=lambda e: (e.src, e.dst, e.kind.value, e.variable or ""))
    return Spg(
        nodes=nodes,
        edges=edges,
        criterion=slice_sets.criterion,
        criterion_file=cpg.statements[criterion_sid].file,
    )


def split_subgraphs(spg: Spg) -> SpgSubgraphs:
    """Partition edges by kind; every subgraph shares the full node list."""

    def sub(kind: EdgeKind) -> Spg:
        return Spg(
            nodes=list(spg.nodes),
            edges=spg.edges_of(kind),
            criterion=spg.criterion,
            criterion_file=spg.criterion_file,
            label=spg.label,
        )

    return SpgSubgraphs(
        cdg=sub(EdgeKind.CONTROL),
        ddg=sub(EdgeKind.DATA),
        fcdg=sub(EdgeKind.FUNCTION_CALL),
    )


def label_spg(spg: Spg, vulnerable_lines: set[tuple[str, int]]) -> int:
    """1 iff any node's statement span intersects a vulnerable line."""
    if not vulnerable_lines:
        return 0
    for node in spg.nodes:
        for line in range(node.line, node.line_hi + 1):
            if (node.file, line) in vulnerable_lines:
                return 1
    return 0


def canonical_hash(spg: Spg) -> int:
    """64-bit digest invariant under node-id relabeling.

    Nodes are ordered by content (text, type, file, line); the hash covers
    the sorted (text, type) pairs and the index-canonicalized edge list.
    """
    order = sorted(range(len(spg.nodes)), key=lambda i: _node_key(spg.nodes[i]))
    index = {spg.nodes[i].sid: rank for rank, i in enumerate(order)}
    node_part = [(spg.nodes[i].text, spg.nodes[i].type) for i in order]
    edge_part = sorted((index[e.src], index[e.dst], e.kind.value) for e in spg.edges)
    blob = json.dumps([node_part, edge_part], separators=(",", ":")).encode()
    return int.from_bytes(hashlib.blake2b(blob, digest_size=8).digest(), "big")


def _node_key(n: SpgNode):
    return (n.text, n.type, n.file, n.line)


def dedup(spgs: list[Spg]) -> list[Spg]:
    """Drop graphs with a previously seen canonical hash; first one wins."""
    seen: set[int] = set()
    out: list[Spg] = []
    for g in spgs:
        h = canonical_hash(g)
        if h not in seen:
            seen.add(h)
            out.append(g)
    return out


# -- serialization -----------------------------------------------------


def spg_to_dict(spg: Spg) -> dict:
    return {
        "criterion": {
            "kind": spg.criterion.kind.value,
            "element": spg.criterion.code_element,
            "file": spg.criterion_file,
            "line": spg.criterion.line,
        },
        "nodes": [
            {"id": n.sid, "text": n.text, "type": n.type, "file": n.file, "line": n.line}
            for n in spg.nodes
        ],
        "edges": [{"src": e.src, "dst": e.dst, "kind": e.kind.value} for e in spg.edges],
        "label": spg.label,
    }


def spg_to_json(spg: Spg) -> str:
    return json.dumps(spg_to_dict(spg), indent=2)


_EDGE_COLORS = {
    EdgeKind.DATA: "blue",
    EdgeKind.CONTROL: "red",
    EdgeKind.FUNCTION_CALL: "darkgreen",
}

_EDGE_DOT_LABEL = {
    EdgeKind.DATA: "DATA",
    EdgeKind.CONTROL: "CONTROL",
    EdgeKind.FUNCTION_CALL: "CALL",
}


def spg_to_dot(spg: Spg) -> str:
    lines = ["digraph spg {"]
    for n in spg.nodes:
        text = n.text.replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  n{n.sid} [label="{n.sid}: {text}"];')
    for e in spg.edges:
        color = _EDGE_COLORS[e.kind]
        label = _EDGE_DOT_LABEL[e.kind]
        lines.append(f'  n{e.src} -> n{e.dst} [label="{label}", color="{color}"];')
    lines.append("}")
    return "\n".join(lines)
