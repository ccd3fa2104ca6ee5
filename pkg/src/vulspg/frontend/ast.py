"""AST node and source-unit types produced by the parser."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional

from vulspg.frontend.lexer import Token


class NodeKind(str, Enum):
    TRANSLATION_UNIT = "TranslationUnit"
    FUNCTION_DEF = "FunctionDef"
    PARAMETER = "Parameter"
    COMPOUND = "CompoundStatement"
    DECL = "DeclStatement"
    EXPR_STMT = "ExpressionStatement"
    IF = "IfStatement"
    WHILE = "WhileStatement"
    FOR = "ForStatement"
    RETURN = "ReturnStatement"
    CALL = "CallExpression"
    BINARY = "BinaryExpression"
    UNARY = "UnaryExpression"
    SUBSCRIPT = "ArraySubscript"
    MEMBER = "MemberAccess"
    IDENTIFIER = "Identifier"
    LITERAL = "Literal"


#: AST kinds that carry a statement identifier.
STATEMENT_KINDS = frozenset(
    {
        NodeKind.FUNCTION_DEF,
        NodeKind.PARAMETER,
        NodeKind.DECL,
        NodeKind.EXPR_STMT,
        NodeKind.IF,
        NodeKind.WHILE,
        NodeKind.FOR,
        NodeKind.RETURN,
    }
)


@dataclass
class AstNode:
    kind: NodeKind
    children: list["AstNode"] = field(default_factory=list)
    span: tuple[int, int] = (0, 0)  # (start line, end line), full subtree extent
    text: str = ""  # identifier/literal text, operator for Binary/Unary/Member
    name: str = ""  # FunctionDef name, MemberAccess member name
    stmt_id: Optional[int] = None  # set on statement nodes only
    enclosing_stmt: Optional[int] = None
    # Statement header token range [lo, hi) into SourceUnit.tokens; for
    # if/while/for this covers the header only, not the controlled body.
    tok_lo: int = -1
    tok_hi: int = -1
    is_pointer: bool = False  # Parameter / declarator info
    is_array: bool = False
    is_declarator: bool = False  # Identifier introduced by a declaration

    def walk(self) -> Iterator["AstNode"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def __repr__(self):
        extra = f" {self.text!r}" if self.text else ""
        extra += f" name={self.name!r}" if self.name else ""
        return f"<{self.kind.value}{extra} @{self.span[0]}-{self.span[1]}>"


@dataclass
class SourceUnit:
    path: str
    root: AstNode
    functions: list[AstNode]
    raw_lines: list[str]
    tokens: list[Token]
    statements: list[AstNode] = field(default_factory=list)  # index == stmt_id
    # per function: identifier -> (is_pointer, is_array) from params and decls
    symbols: dict[str, dict[str, tuple[bool, bool]]] = field(default_factory=dict)

    def statement_text(self, stmt_id: int) -> str:
        node = self.statements[stmt_id]
        return " ".join(t.text for t in self.tokens[node.tok_lo : node.tok_hi])

    def statement_span(self, stmt_id: int) -> tuple[int, int]:
        """Line range of the statement header (guards exclude their body)."""
        node = self.statements[stmt_id]
        toks = self.tokens[node.tok_lo : node.tok_hi]
        if not toks:
            return node.span
        return (toks[0].line, toks[-1].line)

    def function_of(self, stmt_id: int) -> str:
        for fn in self.functions:
            lo = fn.stmt_id
            hi = lo + _statement_count(fn)
            if lo <= stmt_id < hi:
                return fn.name
        return ""


def _statement_count(fn: AstNode) -> int:
    return sum(1 for n in fn.walk() if n.stmt_id is not None)


def ast_to_dict(node: AstNode) -> dict:
    """JSON-friendly view used by the parse CLI."""
    d: dict = {"kind": node.kind.value, "span": list(node.span)}
    if node.text:
        d["text"] = node.text
    if node.name:
        d["name"] = node.name
    if node.stmt_id is not None:
        d["stmt_id"] = node.stmt_id
    if node.children:
        d["children"] = [ast_to_dict(c) for c in node.children]
    return d
