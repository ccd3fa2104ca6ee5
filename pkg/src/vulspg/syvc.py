"""Syntax-based vulnerability candidates: the slicing criteria.

Six kinds are matched on the AST:

  FC  call to a sensitive API function (name on the API list)
  AU  identifier that is the base of an array subscript
  PU  identifier dereferenced via * or ->, or any later use of a name
      declared with a pointer declarator
  AE  identifier inside a binary expression using + - * / or %
  FP  identifier whose parent is a function parameter
  FR  identifier anywhere inside a return statement

Matching runs on the pre-normalization AST so FC sees original API names.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from importlib import resources

from vulspg.errors import ConfigError
from vulspg.frontend.ast import AstNode, NodeKind, SourceUnit


class SyvcKind(str, Enum):
    FC = "FC"
    AU = "AU"
    PU = "PU"
    AE = "AE"
    FP = "FP"
    FR = "FR"


ALL_KINDS = (SyvcKind.FC, SyvcKind.AU, SyvcKind.PU, SyvcKind.AE, SyvcKind.FP, SyvcKind.FR)

AE_OPERATORS = frozenset({"+", "-", "*", "/", "%"})

DEFAULT_API_RESOURCE = "sensitive_apis.txt"


@dataclass(frozen=True)
class SyVC:
    code_element: str
    kind: SyvcKind
    statement_id: int
    node: AstNode
    line: int

    def __repr__(self):
        return f"SyVC({self.kind.value} {self.code_element!r} stmt={self.statement_id} line={self.line})"


def load_api_list(path: str) -> set[str]:
    """One name per line; '#' starts a comment; blank lines ignored."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read API list {path!r}: {exc}") from exc
    names = set()
    for line in lines:
        name = line.split("#", 1)[0].strip()
        if name:
            names.add(name)
    return names


def default_api_list() -> set[str]:
    text = resources.files("vulspg.data").joinpath(DEFAULT_API_RESOURCE).read_text("utf-8")
    return {ln.split("#", 1)[0].strip() for ln in text.splitlines() if ln.split("#", 1)[0].strip()}


def parse_kinds(spec: str) -> set[SyvcKind]:
    """Parse a comma list like 'fc,au,pu,ae,fp,fr'."""
    kinds = set()
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            kinds.add(SyvcKind(part.upper()))
        except ValueError:
            raise ConfigError(f"unknown SyVC kind {part!r}") from None
    return kinds


def extract_syvcs(
    unit: SourceUnit,
    api: set[str],
    kinds: set[SyvcKind] | None = None,
    ae_operators: frozenset[str] = AE_OPERATORS,
) -> list[SyVC]:
    """All candidates of the requested kinds, in source order.

    One SyVC per matched AST occurrence; an identifier matching several
    requested kinds yields one SyVC per kind.
    """
    if kinds is None:
        kinds = set(ALL_KINDS)
    for k in kinds:
        if not isinstance(k, SyvcKind):
            raise ConfigError(f"unknown SyVC kind {k!r}")

    out: list[SyVC] = []
    for fn in unit.functions:
        pointers = {
            name
            for name, (ptr, _arr) in unit.symbols.get(fn.name, {}).items()
            if ptr
        }
        _match(fn, None, [], pointers, api, kinds, ae_operators, out)
    return out


def _match(
    node: AstNode,
    parent: AstNode | None,
    ancestors: list[AstNode],
    pointers: set[str],
    api: set[str],
    kinds: set[SyvcKind],
    ae_operators: frozenset[str],
    out: list[SyVC],
):
    if node.kind == NodeKind.CALL and SyvcKind.FC in kinds and node.name in api:
        out.append(_mk(node.name, SyvcKind.FC, node))
    if node.kind == NodeKind.IDENTIFIER:
        matched = _identifier_kinds(node, parent, ancestors, pointers, ae_operators)
        for kind in ALL_KINDS:  # fixed order keeps kind-filtering a sublist
            if kind in matched and kind in kinds:
                out.append(_mk(node.text, kind, node))
    ancestors.append(node)
    for child in node.children:
        _match(child, node, ancestors, pointers, api, kinds, ae_operators, out)
    ancestors.pop()


def _identifier_kinds(
    node: AstNode,
    parent: AstNode | None,
    ancestors: list[AstNode],
    pointers: set[str],
    ae_operators: frozenset[str],
) -> set[SyvcKind]:
    found: set[SyvcKind] = set()
    if parent is not None:
        if parent.kind == NodeKind.PARAMETER:
            found.add(SyvcKind.FP)
        if parent.kind == NodeKind.SUBSCRIPT and parent.children[0] is node:
            found.add(SyvcKind.AU)
        if parent.kind == NodeKind.UNARY and parent.text == "*":
            found.add(SyvcKind.PU)
        if parent.kind == NodeKind.MEMBER and parent.text == "->":
            found.add(SyvcKind.PU)
    if node.text in pointers and not node.is_declarator and parent is not None and parent.kind != NodeKind.PARAMETER:
        found.add(SyvcKind.PU)
    for anc in ancestors:
        if anc.kind == NodeKind.BINARY and anc.text in ae_operators:
            found.add(SyvcKind.AE)
        if anc.kind == NodeKind.RETURN:
            found.add(SyvcKind.FR)
    return found


def _mk(element: str, kind: SyvcKind, node: AstNode) -> SyVC:
    if node.enclosing_stmt is None:
        raise ConfigError(f"candidate outside any statement: {element!r}")
    return SyVC(element, kind, node.enclosing_stmt, node, node.span[0])
