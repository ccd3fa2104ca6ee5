"""Recursive-descent parser for the C subset.

Supported constructs: function definitions, scalar/pointer/array
declarations, assignments, calls, if/while/for, return, the usual binary
arithmetic/relational/logical/bit operators, unary * & - ! ~ and ++/--,
array subscripts, and member access. Casts are parsed and dropped as
no-ops. No typedefs, no switch/goto, no preprocessor (those lines are
removed by the lexer).
"""

from __future__ import annotations

from vulspg.errors import ParseError
from vulspg.frontend.ast import STATEMENT_KINDS, AstNode, NodeKind, SourceUnit
from vulspg.frontend.lexer import Token, TokenKind, tokenize

_TYPE_KEYWORDS = frozenset(
    {"void", "char", "short", "int", "long", "float", "double", "signed",
     "unsigned", "const", "struct", "union", "enum", "static", "extern"}
)

_ASSIGN_OPS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="})

# Binary precedence tiers, loosest first.
_BINARY_TIERS = [
    ["||"],
    ["&&"],
    ["|"],
    ["^"],
    ["&"],
    ["==", "!="],
    ["<", ">", "<=", ">="],
    ["<<", ">>"],
    ["+", "-"],
    ["*", "/", "%"],
]

_UNARY_OPS = frozenset({"*", "&", "-", "!", "~", "+", "++", "--"})


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- token helpers -------------------------------------------------

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, text: str, offset: int = 0) -> bool:
        t = self.peek(offset)
        return t is not None and t.text == text

    def at_kind(self, kind: TokenKind, offset: int = 0) -> bool:
        t = self.peek(offset)
        return t is not None and t.kind == kind

    def advance(self) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError("parse error at end-of-input")
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError(f"parse error at end-of-input (expected {text!r})")
        if t.text != text:
            raise ParseError(
                f"parse error at {t.line}:{t.column}: expected {text!r}, found {t.text!r}"
            )
        return self.advance()

    def fail(self, what: str):
        t = self.peek()
        if t is None:
            raise ParseError(f"parse error at end-of-input (expected {what})")
        raise ParseError(f"parse error at {t.line}:{t.column}: unexpected {t.text!r} ({what})")

    def _span_from(self, lo: int) -> tuple[int, int]:
        toks = self.tokens[lo : self.pos]
        if not toks:
            t = self.peek()
            line = t.line if t else 1
            return (line, line)
        return (toks[0].line, toks[-1].line)

    # -- grammar -------------------------------------------------------

    def at_type(self) -> bool:
        t = self.peek()
        return t is not None and t.kind == TokenKind.KEYWORD and t.text in _TYPE_KEYWORDS

    def parse_type(self) -> str:
        """Consume a type specifier; returns its spelled text."""
        if not self.at_type():
            self.fail("type specifier")
        parts = []
        while self.at_type():
            kw = self.advance().text
            parts.append(kw)
            if kw in ("struct", "union", "enum") and self.at_kind(TokenKind.IDENTIFIER):
                parts.append(self.advance().text)
        return " ".join(parts)

    def parse_unit(self, path: str, raw_lines: list[str]) -> SourceUnit:
        functions = []
        top_level = []
        while self.peek() is not None:
            node = self.parse_top_level()
            top_level.append(node)
            if node.kind == NodeKind.FUNCTION_DEF:
                functions.append(node)
        span = (1, max((t.line for t in self.tokens), default=1))
        root = AstNode(NodeKind.TRANSLATION_UNIT, top_level, span)
        unit = SourceUnit(path, root, functions, raw_lines, self.tokens)
        _assign_statement_ids(unit)
        _collect_symbols(unit)
        return unit

    def parse_top_level(self) -> AstNode:
        lo = self.pos
        self.parse_type()
        while self.at("*"):
            self.advance()
        if not self.at_kind(TokenKind.IDENTIFIER):
            self.fail("declarator name")
        name_tok = self.advance()
        if self.at("("):
            return self.parse_function_rest(name_tok, lo)
        # Global declaration: rewind to reuse the declaration parser.
        self.pos = lo
        return self.parse_declaration()

    def parse_function_rest(self, name_tok: Token, lo: int) -> AstNode:
        self.expect("(")
        params: list[AstNode] = []
        if not self.at(")"):
            if self.at("void") and self.at(")", 1):
                self.advance()
            else:
                params.append(self.parse_parameter())
                while self.at(","):
                    self.advance()
                    params.append(self.parse_parameter())
        self.expect(")")
        header_hi = self.pos
        body = self.parse_compound()
        fn = AstNode(
            NodeKind.FUNCTION_DEF,
            params + [body],
            self._span_from(lo),
            name=name_tok.text,
        )
        fn.tok_lo, fn.tok_hi = lo, header_hi
        return fn

    def parse_parameter(self) -> AstNode:
        lo = self.pos
        self.parse_type()
        pointer = False
        while self.at("*"):
            pointer = True
            self.advance()
        if not self.at_kind(TokenKind.IDENTIFIER):
            self.fail("parameter name")
        name_tok = self.advance()
        array = False
        while self.at("["):
            array = True
            self.advance()
            while not self.at("]"):
                self.advance()
            self.expect("]")
        ident = AstNode(
            NodeKind.IDENTIFIER, [], (name_tok.line, name_tok.line), text=name_tok.text
        )
        param = AstNode(
            NodeKind.PARAMETER, [ident], self._span_from(lo),
            is_pointer=pointer, is_array=array,
        )
        param.tok_lo, param.tok_hi = lo, self.pos
        return param

    def parse_compound(self) -> AstNode:
        lo = self.pos
        self.expect("{")
        stmts = []
        while not self.at("}"):
            if self.peek() is None:
                raise ParseError("parse error at end-of-input (expected '}')")
            stmt = self.parse_statement()
            if stmt is not None:
                stmts.append(stmt)
        self.expect("}")
        return AstNode(NodeKind.COMPOUND, stmts, self._span_from(lo))

    def parse_statement(self) -> AstNode | None:
        if self.at(";"):
            self.advance()
            return None
        if self.at("{"):
            return self.parse_compound()
        if self.at_type():
            return self.parse_declaration()
        if self.at("if"):
            return self.parse_if()
        if self.at("while"):
            return self.parse_while()
        if self.at("for"):
            return self.parse_for()
        if self.at("return"):
            return self.parse_return()
        t = self.peek()
        if t is not None and t.kind == TokenKind.KEYWORD and t.text not in ("sizeof",):
            self.fail("statement")
        lo = self.pos
        expr = self.parse_expression()
        self.expect(";")
        node = AstNode(NodeKind.EXPR_STMT, [expr], self._span_from(lo))
        node.tok_lo, node.tok_hi = lo, self.pos
        return node

    def parse_declaration(self) -> AstNode:
        lo = self.pos
        self.parse_type()
        children: list[AstNode] = []
        while True:
            pointer = False
            while self.at("*"):
                pointer = True
                self.advance()
            if not self.at_kind(TokenKind.IDENTIFIER):
                self.fail("declarator name")
            name_tok = self.advance()
            ident = AstNode(
                NodeKind.IDENTIFIER, [], (name_tok.line, name_tok.line),
                text=name_tok.text, is_pointer=pointer, is_declarator=True,
            )
            array = False
            while self.at("["):
                array = True
                self.advance()
                if not self.at("]"):
                    self.parse_expression()
                self.expect("]")
            ident.is_array = array
            children.append(ident)
            if self.at("="):
                self.advance()
                children.append(self.parse_assignment())
            if self.at(","):
                self.advance()
                continue
            break
        self.expect(";")
        node = AstNode(NodeKind.DECL, children, self._span_from(lo))
        node.tok_lo, node.tok_hi = lo, self.pos
        return node

    def _branch(self) -> AstNode:
        """Parse one controlled statement; empty bodies become an empty block."""
        stmt = self.parse_statement()
        if stmt is None:
            here = self.tokens[self.pos - 1] if self.pos else None
            line = here.line if here else 1
            stmt = AstNode(NodeKind.COMPOUND, [], (line, line))
        return stmt

    def parse_if(self) -> AstNode:
        # children: [cond, then] or [cond, then, else]
        lo = self.pos
        self.expect("if")
        self.expect("(")
        cond = self.parse_expression()
        self.expect(")")
        header_hi = self.pos
        children = [cond, self._branch()]
        if self.at("else"):
            self.advance()
            children.append(self._branch())
        node = AstNode(NodeKind.IF, children, self._span_from(lo))
        node.tok_lo, node.tok_hi = lo, header_hi
        node.text = "if"
        return node

    def parse_while(self) -> AstNode:
        # children: [cond, body]
        lo = self.pos
        self.expect("while")
        self.expect("(")
        cond = self.parse_expression()
        self.expect(")")
        header_hi = self.pos
        children = [cond, self._branch()]
        node = AstNode(NodeKind.WHILE, children, self._span_from(lo))
        node.tok_lo, node.tok_hi = lo, header_hi
        node.text = "while"
        return node

    def parse_for(self) -> AstNode:
        # children: [*header expressions (0..3), body]; the whole header is
        # one statement node, so C99 for-init declarations are rejected.
        lo = self.pos
        self.expect("for")
        self.expect("(")
        if self.at_type():
            self.fail("expression (for-init declarations are outside the subset)")
        header: list[AstNode] = []
        if not self.at(";"):
            header.append(self.parse_expression())
        self.expect(";")
        if not self.at(";"):
            header.append(self.parse_expression())
        self.expect(";")
        if not self.at(")"):
            header.append(self.parse_expression())
        self.expect(")")
        header_hi = self.pos
        children = header + [self._branch()]
        node = AstNode(NodeKind.FOR, children, self._span_from(lo))
        node.tok_lo, node.tok_hi = lo, header_hi
        node.text = "for"
        return node

    def parse_return(self) -> AstNode:
        lo = self.pos
        self.expect("return")
        children = []
        if not self.at(";"):
            children.append(self.parse_expression())
        self.expect(";")
        node = AstNode(NodeKind.RETURN, children, self._span_from(lo))
        node.tok_lo, node.tok_hi = lo, self.pos
        return node

    # -- expressions ---------------------------------------------------

    def parse_expression(self) -> AstNode:
        return self.parse_assignment()

    def parse_assignment(self) -> AstNode:
        lo = self.pos
        left = self.parse_binary(0)
        t = self.peek()
        if t is not None and t.text in _ASSIGN_OPS:
            op = self.advance().text
            right = self.parse_assignment()
            return AstNode(NodeKind.BINARY, [left, right], self._span_from(lo), text=op)
        return left

    def parse_binary(self, tier: int) -> AstNode:
        if tier >= len(_BINARY_TIERS):
            return self.parse_unary()
        lo = self.pos
        left = self.parse_binary(tier + 1)
        ops = _BINARY_TIERS[tier]
        while True:
            t = self.peek()
            if t is None or t.text not in ops:
                return left
            # '=' handled by parse_assignment; guard against '<=' etc. is
            # implicit because the lexer emits maximal munch operators.
            op = self.advance().text
            right = self.parse_binary(tier + 1)
            left = AstNode(NodeKind.BINARY, [left, right], self._span_from(lo), text=op)

    def parse_unary(self) -> AstNode:
        t = self.peek()
        if t is not None and t.text in _UNARY_OPS and t.kind == TokenKind.OPERATOR:
            lo = self.pos
            op = self.advance().text
            operand = self.parse_unary()
            return AstNode(NodeKind.UNARY, [operand], self._span_from(lo), text=op)
        if t is not None and t.text == "sizeof":
            return self.parse_sizeof()
        return self.parse_postfix()

    def parse_sizeof(self) -> AstNode:
        lo = self.pos
        self.expect("sizeof")
        self.expect("(")
        if self.at_type():
            spelled = self.parse_type()
            while self.at("*"):
                self.advance()
                spelled += " *"
            self.expect(")")
            return AstNode(
                NodeKind.LITERAL, [], self._span_from(lo), text=f"sizeof({spelled})"
            )
        inner = self.parse_expression()
        self.expect(")")
        return AstNode(NodeKind.UNARY, [inner], self._span_from(lo), text="sizeof")

    def parse_postfix(self) -> AstNode:
        lo = self.pos
        node = self.parse_primary()
        while True:
            if self.at("("):
                self.advance()
                args = []
                if not self.at(")"):
                    args.append(self.parse_assignment())
                    while self.at(","):
                        self.advance()
                        args.append(self.parse_assignment())
                self.expect(")")
                node = AstNode(
                    NodeKind.CALL, [node] + args, self._span_from(lo),
                    name=node.text if node.kind == NodeKind.IDENTIFIER else "",
                )
            elif self.at("["):
                self.advance()
                index = self.parse_expression()
                self.expect("]")
                node = AstNode(NodeKind.SUBSCRIPT, [node, index], self._span_from(lo))
            elif self.at(".") or self.at("->"):
                op = self.advance().text
                if not self.at_kind(TokenKind.IDENTIFIER):
                    self.fail("member name")
                member = self.advance().text
                node = AstNode(
                    NodeKind.MEMBER, [node], self._span_from(lo), text=op, name=member
                )
            elif self.at("++") or self.at("--"):
                op = self.advance().text
                node = AstNode(NodeKind.UNARY, [node], self._span_from(lo), text="post" + op)
            else:
                return node

    def parse_primary(self) -> AstNode:
        t = self.peek()
        if t is None:
            raise ParseError("parse error at end-of-input (expected expression)")
        if t.kind == TokenKind.IDENTIFIER:
            self.advance()
            return AstNode(NodeKind.IDENTIFIER, [], (t.line, t.line), text=t.text)
        if t.kind in (TokenKind.NUMBER, TokenKind.STRING, TokenKind.CHAR):
            self.advance()
            return AstNode(NodeKind.LITERAL, [], (t.line, t.line), text=t.text)
        if t.text == "(":
            self.advance()
            if self.at_type():
                # Cast: swallow the type tokens, treat as a no-op.
                self.parse_type()
                while self.at("*") or self.at("["):
                    if self.at("["):
                        self.advance()
                        while not self.at("]"):
                            self.advance()
                    self.advance()
                self.expect(")")
                return self.parse_unary()
            inner = self.parse_expression()
            self.expect(")")
            return inner
        self.fail("expression")
        raise AssertionError("unreachable")


def _assign_statement_ids(unit: SourceUnit):
    sid = 0

    def assign(node: AstNode, enclosing: int | None):
        nonlocal sid
        if node.kind in STATEMENT_KINDS:
            node.stmt_id = sid
            unit.statements.append(node)
            enclosing = sid
            sid += 1
        node.enclosing_stmt = enclosing
        for child in node.children:
            assign(child, enclosing)

    for fn in unit.functions:
        assign(fn, None)
    # Globals keep enclosing_stmt None and receive no statement ids.
    unit.root.enclosing_stmt = None


def _collect_symbols(unit: SourceUnit):
    for fn in unit.functions:
        table: dict[str, tuple[bool, bool]] = {}
        for node in fn.walk():
            if node.kind == NodeKind.PARAMETER:
                ident = node.children[0]
                table[ident.text] = (node.is_pointer, node.is_array)
            elif node.kind == NodeKind.DECL:
                for child in node.children:
                    if child.kind == NodeKind.IDENTIFIER and child.is_declarator:
                        table[child.text] = (child.is_pointer, child.is_array)
        unit.symbols[fn.name] = table


def parse(tokens: list[Token], path: str = "<string>", raw_lines: list[str] | None = None) -> SourceUnit:
    """Parse a token list into a SourceUnit with dense statement ids."""
    return _Parser(tokens).parse_unit(path, raw_lines or [])


def parse_source(source: str, path: str = "<string>") -> SourceUnit:
    return parse(tokenize(source), path, source.splitlines())


def parse_file(path: str) -> SourceUnit:
    with open(path, "r", encoding="utf-8") as fh:
        source = fh.read()
    return parse_source(source, path)
