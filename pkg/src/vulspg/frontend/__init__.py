from vulspg.frontend.ast import AstNode, NodeKind, SourceUnit, STATEMENT_KINDS, ast_to_dict
from vulspg.frontend.lexer import Token, TokenKind, tokenize
from vulspg.frontend.normalize import normalize
from vulspg.frontend.parser import parse, parse_file, parse_source

__all__ = [
    "AstNode",
    "NodeKind",
    "SourceUnit",
    "STATEMENT_KINDS",
    "Token",
    "TokenKind",
    "ast_to_dict",
    "normalize",
    "parse",
    "parse_file",
    "parse_source",
    "tokenize",
]
