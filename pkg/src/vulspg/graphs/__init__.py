from vulspg.graphs.cfg import ENTRY, EXIT, Cfg, build_cfg
from vulspg.graphs.cpg import Cpg, FunctionInfo, StatementInfo, build_cpg
from vulspg.graphs.defuse import DefUse, function_defuse, statement_defuse
from vulspg.graphs.dependence import (
    DependencyEdge,
    EdgeKind,
    control_dependencies,
    post_dominators,
    reaching_definitions,
)
from vulspg.graphs.pdg import Pdg

__all__ = [
    "ENTRY",
    "EXIT",
    "Cfg",
    "Cpg",
    "DefUse",
    "DependencyEdge",
    "EdgeKind",
    "FunctionInfo",
    "Pdg",
    "StatementInfo",
    "build_cfg",
    "build_cpg",
    "control_dependencies",
    "function_defuse",
    "post_dominators",
    "reaching_definitions",
    "statement_defuse",
]
