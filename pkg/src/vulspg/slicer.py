"""Forward, backward, and one-layer interprocedural slicing over PDGs.

A slice is the transitive closure over DATA and CONTROL edges from the
criterion statement. Interprocedural expansion crosses exactly one call
layer: forward slices enter callees through their parameter statements;
backward slices restart from caller call sites and from the return
statements of callees.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from vulspg.errors import InternalError
from vulspg.graphs.cpg import Cpg
from vulspg.graphs.pdg import Pdg
from vulspg.syvc import SyVC


@dataclass
class SliceNodeSets:
    criterion: SyVC
    fsn: set[int] = field(default_factory=set)
    ifsn: set[int] = field(default_factory=set)
    bsn: set[int] = field(default_factory=set)
    ibsn: set[int] = field(default_factory=set)

    def all_nodes(self) -> set[int]:
        return self.fsn | self.ifsn | self.bsn | self.ibsn


def _closure(adj: dict[int, set[int]], start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        n = queue.popleft()
        for m in adj.get(n, ()):
            if m not in seen:
                seen.add(m)
                queue.append(m)
    return seen


def forward_slice(pdg: Pdg, criterion_stmt: int) -> set[int]:
    """Statements reachable from the criterion along dependency edges."""
    if criterion_stmt not in pdg.nodes:
        raise InternalError(
            f"criterion statement {criterion_stmt} is not a node of {pdg.function}'s PDG"
        )
    return _closure(pdg.adjacency(), criterion_stmt)


def backward_slice(pdg: Pdg, criterion_stmt: int) -> set[int]:
    """Statements from which the criterion is reachable (reversed closure)."""
    if criterion_stmt not in pdg.nodes:
        raise InternalError(
            f"criterion statement {criterion_stmt} is not a node of {pdg.function}'s PDG"
        )
    return _closure(pdg.adjacency(reverse=True), criterion_stmt)


def interprocedural_forward(cpg: Cpg, fsn: set[int]) -> set[int]:
    """One call layer down: for every call site in the forward slice whose
    callee is defined, forward-slice the callee's PDG from each of its
    parameter statements."""
    out: set[int] = set()
    for sid in fsn:
        for callee in cpg.callees_of(sid):
            info = cpg.functions.get(callee)
            if info is None:
                continue
            adj = info.pdg.adjacency()
            for param in info.params:
                out |= _closure(adj, param)
    return out


def interprocedural_backward(cpg: Cpg, criterion: SyVC) -> set[int]:
    """One call layer up and down: backward slices from every caller's
    call site of the criterion's function, and from every return statement
    of every function the criterion's function calls."""
    fn_name = cpg.function_of(criterion.statement_id)
    info = cpg.functions[fn_name]
    out: set[int] = set()

    for site in cpg.call_sites_of(fn_name):
        caller = cpg.functions[cpg.function_of(site)]
        out |= _closure(caller.pdg.adjacency(reverse=True), site)

    callees = {callee for sid in info.stmts for callee in cpg.callees_of(sid)}
    for callee in callees:
        callee_info = cpg.functions.get(callee)
        if callee_info is None:
            continue
        adj = callee_info.pdg.adjacency(reverse=True)
        for ret in callee_info.returns:
            out |= _closure(adj, ret)
    return out


def slice_criterion(cpg: Cpg, criterion: SyVC) -> SliceNodeSets:
    """All four slice-node sets for one criterion (one call layer deep)."""
    fn_name = cpg.function_of(criterion.statement_id)
    pdg = cpg.functions[fn_name].pdg
    sets = SliceNodeSets(criterion=criterion)
    sets.fsn = forward_slice(pdg, criterion.statement_id)
    sets.ifsn = interprocedural_forward(cpg, sets.fsn)
    sets.bsn = backward_slice(pdg, criterion.statement_id)
    sets.ibsn = interprocedural_backward(cpg, criterion)
    return sets
