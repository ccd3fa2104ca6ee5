"""Tokenizer for the supported C subset.

Comments and preprocessor lines are dropped; everything else becomes a
token. The token grammar is summarized in docs/frontend.md.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from vulspg.errors import LexError


class TokenKind(str, Enum):
    IDENTIFIER = "identifier"
    KEYWORD = "keyword"
    NUMBER = "number"
    STRING = "string-literal"
    CHAR = "char-literal"
    OPERATOR = "operator"
    PUNCTUATION = "punctuation"


KEYWORDS = frozenset(
    {
        "auto", "break", "case", "char", "const", "continue", "default",
        "do", "double", "else", "enum", "extern", "float", "for", "goto",
        "if", "int", "long", "register", "return", "short", "signed",
        "sizeof", "static", "struct", "switch", "typedef", "union",
        "unsigned", "void", "volatile", "while",
    }
)

# Longest-match first.
_OPERATORS = [
    "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "+", "-", "*", "/", "%", "<", ">", "=", "!", "&", "|", "^", "~", ".", "?", ":",
]
_PUNCTUATION = frozenset("(){}[];,")

_IDENT_START = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | frozenset("0123456789")
_DIGITS = frozenset("0123456789")


@dataclass(frozen=True)
class Token:
    text: str
    kind: TokenKind
    line: int
    column: int

    def __repr__(self):
        return f"Token({self.text!r}, {self.kind.value}, {self.line}:{self.column})"


def strip_comments(source: str) -> str:
    """Replace comments and preprocessor lines with whitespace.

    Newlines are preserved so line numbers stay stable.
    """
    out = []
    i = 0
    n = len(source)
    at_line_start = True
    while i < n:
        ch = source[i]
        if ch == "/" and i + 1 < n and source[i + 1] == "/":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch == "/" and i + 1 < n and source[i + 1] == "*":
            i += 2
            while i + 1 < n and not (source[i] == "*" and source[i + 1] == "/"):
                if source[i] == "\n":
                    out.append("\n")
                i += 1
            i = min(i + 2, n)
            out.append(" ")
            continue
        if at_line_start and ch == "#":
            # Preprocessor lines are skipped verbatim (incl. continuations).
            while i < n and source[i] != "\n":
                if source[i] == "\\" and i + 1 < n and source[i + 1] == "\n":
                    out.append("\n")
                    i += 2
                    continue
                i += 1
            continue
        if at_line_start and ch in " \t" :
            # Look ahead past indentation for a '#'.
            j = i
            while j < n and source[j] in " \t":
                j += 1
            if j < n and source[j] == "#":
                while i < n and source[i] != "\n":
                    i += 1
                continue
        out.append(ch)
        at_line_start = ch == "\n"
        i += 1
    return "".join(out)


def tokenize(source: str) -> list[Token]:
    """Lex UTF-8 source into tokens, dropping comments and cpp lines."""
    text = strip_comments(source)
    tokens: list[Token] = []
    i = 0
    n = len(text)
    line = 1
    col = 1

    def advance(k: int):
        nonlocal i, line, col
        for _ in range(k):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = text[i]
        if ch in " \t\r\n\f\v":
            advance(1)
            continue
        start_line, start_col = line, col
        if ch in _IDENT_START:
            j = i
            while j < n and text[j] in _IDENT_CONT:
                j += 1
            word = text[i:j]
            kind = TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENTIFIER
            tokens.append(Token(word, kind, start_line, start_col))
            advance(j - i)
            continue
        if ch in _DIGITS or (ch == "." and i + 1 < n and text[i + 1] in _DIGITS):
            j = i
            if text[j] == "0" and j + 1 < n and text[j + 1] in "xX":
                j += 2
                while j < n and (text[j] in _DIGITS or text[j] in "abcdefABCDEF"):
                    j += 1
            else:
                seen_dot = False
                while j < n and (text[j] in _DIGITS or (text[j] == "." and not seen_dot)):
                    if text[j] == ".":
                        seen_dot = True
                    j += 1
                if j < n and text[j] in "eE":
                    k = j + 1
                    if k < n and text[k] in "+-":
                        k += 1
                    if k < n and text[k] in _DIGITS:
                        j = k
                        while j < n and text[j] in _DIGITS:
                            j += 1
            while j < n and text[j] in "uUlLfF":
                j += 1
            tokens.append(Token(text[i:j], TokenKind.NUMBER, start_line, start_col))
            advance(j - i)
            continue
        if ch == '"' or ch == "'":
            quote = ch
            j = i + 1
            while j < n and text[j] != quote:
                if text[j] == "\\" and j + 1 < n:
                    j += 2
                    continue
                if text[j] == "\n":
                    break
                j += 1
            if j >= n or text[j] != quote:
                what = "string" if quote == '"' else "char"
                raise LexError(f"unterminated {what} literal", start_line, start_col)
            kind = TokenKind.STRING if quote == '"' else TokenKind.CHAR
            tokens.append(Token(text[i : j + 1], kind, start_line, start_col))
            advance(j + 1 - i)
            continue
        matched = None
        for op in _OPERATORS:
            if text.startswith(op, i):
                matched = op
                break
        if matched is not None:
            tokens.append(Token(matched, TokenKind.OPERATOR, start_line, start_col))
            advance(len(matched))
            continue
        if ch in _PUNCTUATION:
            tokens.append(Token(ch, TokenKind.PUNCTUATION, start_line, start_col))
            advance(1)
            continue
        raise LexError(f"unexpected character {ch!r}", start_line, start_col)
    return tokens
