"""Identifier normalization: user variables become VAR1, VAR2, ... and
user functions FUN1, FUN2, ...; names on the keep-list survive untouched.
"""

from __future__ import annotations

import copy

from vulspg.frontend.ast import NodeKind, SourceUnit
from vulspg.frontend.lexer import Token, TokenKind


def _function_names(unit: SourceUnit) -> set[str]:
    names = {fn.name for fn in unit.functions}
    for fn in unit.functions:
        for node in fn.walk():
            if node.kind == NodeKind.CALL and node.name:
                names.add(node.name)
    return names


def normalize(unit: SourceUnit, keep: set[str] | None = None) -> tuple[SourceUnit, dict[str, str]]:
    """Return a renamed copy of the unit plus the old-name -> new-name map.

    First occurrence in token order wins the next free number; variables
    and functions draw from separate counters. Idempotent: a unit whose
    identifiers are already canonical maps to itself.
    """
    keep = keep or set()
    fn_names = _function_names(unit)

    mapping: dict[str, str] = {}
    var_n = 0
    fun_n = 0
    for tok in unit.tokens:
        if tok.kind != TokenKind.IDENTIFIER:
            continue
        name = tok.text
        if name in keep or name in mapping:
            continue
        if name in fn_names:
            fun_n += 1
            mapping[name] = f"FUN{fun_n}"
        else:
            var_n += 1
            mapping[name] = f"VAR{var_n}"

    out = copy.deepcopy(unit)
    out.tokens = [
        Token(mapping.get(t.text, t.text), t.kind, t.line, t.column)
        if t.kind == TokenKind.IDENTIFIER
        else t
        for t in out.tokens
    ]
    for node in out.root.walk():
        if node.kind == NodeKind.IDENTIFIER and node.text in mapping:
            node.text = mapping[node.text]
        if node.kind in (NodeKind.FUNCTION_DEF, NodeKind.CALL, NodeKind.MEMBER) and node.name in mapping:
            node.name = mapping[node.name]
    out.symbols = {
        mapping.get(fn, fn): {mapping.get(v, v): info for v, info in table.items()}
        for fn, table in unit.symbols.items()
    }
    return out, mapping
