"""Per-function program dependence graph: DATA plus CONTROL edges."""

from __future__ import annotations

from dataclasses import dataclass, field

from vulspg.graphs.dependence import DependencyEdge


@dataclass
class Pdg:
    function: str
    nodes: set[int] = field(default_factory=set)
    edges: set[DependencyEdge] = field(default_factory=set)

    def successors(self, n: int) -> set[int]:
        return {e.dst for e in self.edges if e.src == n}

    def predecessors(self, n: int) -> set[int]:
        return {e.src for e in self.edges if e.dst == n}

    def adjacency(self, reverse: bool = False) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {n: set() for n in self.nodes}
        for e in self.edges:
            if reverse:
                adj[e.dst].add(e.src)
            else:
                adj[e.src].add(e.dst)
        return adj
