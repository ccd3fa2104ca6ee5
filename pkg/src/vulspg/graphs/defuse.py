"""Definition/use extraction per statement.

Pointer handling is name-based and conservative: `*p = e` defines p
itself, `p->f` uses p, and pointer/array arguments to calls both use and
define the argument variable. No alias analysis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from vulspg.frontend.ast import AstNode, NodeKind, SourceUnit

_ASSIGN_OPS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="})


@dataclass
class DefUse:
    defs: set[str] = field(default_factory=set)
    uses: set[str] = field(default_factory=set)


def _lvalue_target(node: AstNode) -> str | None:
    """Variable conservatively written through an lvalue expression."""
    if node.kind == NodeKind.IDENTIFIER:
        return node.text
    if node.kind == NodeKind.UNARY and node.text == "*":
        return _lvalue_target(node.children[0])
    if node.kind in (NodeKind.SUBSCRIPT, NodeKind.MEMBER):
        return _lvalue_target(node.children[0])
    return None


def _collect(node: AstNode, du: DefUse, symbols: dict[str, tuple[bool, bool]]):
    kind = node.kind
    if kind == NodeKind.IDENTIFIER:
        if not node.is_declarator:
            du.uses.add(node.text)
        return
    if kind == NodeKind.BINARY and node.text in _ASSIGN_OPS:
        lhs, rhs = node.children
        target = _lvalue_target(lhs)
        if target is not None:
            du.defs.add(target)
        # Writing through a subscript/deref/member still reads the base;
        # a plain `x = e` does not read x unless the operator is compound.
        if lhs.kind != NodeKind.IDENTIFIER or node.text != "=":
            _collect_uses_only(lhs, du)
        _collect(rhs, du, symbols)
        return
    if kind == NodeKind.UNARY and node.text in ("++", "--", "post++", "post--"):
        target = _lvalue_target(node.children[0])
        if target is not None:
            du.defs.add(target)
        _collect_uses_only(node.children[0], du)
        return
    if kind == NodeKind.CALL:
        callee = node.children[0]
        if callee.kind != NodeKind.IDENTIFIER:
            _collect(callee, du, symbols)
        for arg in node.children[1:]:
            if arg.kind == NodeKind.UNARY and arg.text == "&":
                target = _lvalue_target(arg.children[0])
                if target is not None:
                    du.defs.add(target)
            elif arg.kind == NodeKind.IDENTIFIER:
                ptr, arr = symbols.get(arg.text, (False, False))
                if ptr or arr:
                    du.defs.add(arg.text)
            _collect(arg, du, symbols)
        return
    for child in node.children:
        _collect(child, du, symbols)


def _collect_uses_only(node: AstNode, du: DefUse):
    for n in node.walk():
        if n.kind == NodeKind.IDENTIFIER and not n.is_declarator:
            du.uses.add(n.text)


def statement_defuse(stmt: AstNode, symbols: dict[str, tuple[bool, bool]]) -> DefUse:
    """Def/use sets for one statement node (guard headers only for if/while/for)."""
    du = DefUse()
    kind = stmt.kind
    if kind == NodeKind.PARAMETER:
        du.defs.add(stmt.children[0].text)
        return du
    if kind == NodeKind.FUNCTION_DEF:
        return du
    if kind == NodeKind.DECL:
        for child in stmt.children:
            if child.kind == NodeKind.IDENTIFIER and child.is_declarator:
                du.defs.add(child.text)
            else:
                _collect(child, du, symbols)
        return du
    if kind in (NodeKind.IF, NodeKind.WHILE):
        _collect(stmt.children[0], du, symbols)
        return du
    if kind == NodeKind.FOR:
        for part in stmt.children[:-1]:
            _collect(part, du, symbols)
        return du
    if kind == NodeKind.RETURN:
        for child in stmt.children:
            _collect(child, du, symbols)
        return du
    if kind == NodeKind.EXPR_STMT:
        _collect(stmt.children[0], du, symbols)
        return du
    return du


def function_defuse(fn: AstNode, unit: SourceUnit) -> dict[int, DefUse]:
    """Map statement id -> DefUse for every statement of the function."""
    symbols = unit.symbols.get(fn.name, {})
    result: dict[int, DefUse] = {}
    for node in fn.walk():
        if node.stmt_id is not None:
            result[node.stmt_id] = statement_defuse(node, symbols)
    return result
