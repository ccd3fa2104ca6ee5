"""Per-program slice-property-graph generation: parse, extract criteria,
normalize, build the CPG, slice every criterion, assemble, label, dedup."""

from __future__ import annotations

from dataclasses import dataclass, field

from vulspg.frontend import normalize, parse_file
from vulspg.frontend.lexer import tokenize
from vulspg.pipeline.dataset import ProgramEntry
from vulspg.slicer import slice_criterion
from vulspg.spg import Spg, assemble_spg, dedup, label_spg
from vulspg.syvc import ALL_KINDS, SyvcKind, default_api_list, extract_syvcs
from vulspg.graphs import build_cpg


@dataclass
class GenerationOptions:
    kinds: set[SyvcKind] = field(default_factory=lambda: set(ALL_KINDS))
    api: set[str] = field(default_factory=default_api_list)
    keep: set[str] | None = None  # normalization keep-list; defaults to api
    normalize_names: bool = True
    deduplicate: bool = True


def generate_spgs(
    path: str,
    vulnerable_lines: set[tuple[str, int]] | None = None,
    options: GenerationOptions | None = None,
) -> list[Spg]:
    """All slice property graphs of one program file, labeled if lines
    are provided."""
    opts = options or GenerationOptions()
    unit = parse_file(path)
    criteria = extract_syvcs(unit, opts.api, opts.kinds)
    if opts.normalize_names:
        unit, _ = normalize(unit, keep=opts.keep if opts.keep is not None else opts.api)
    cpg = build_cpg([unit])
    spgs: list[Spg] = []
    for criterion in criteria:
        sets = slice_criterion(cpg, criterion)
        spg = assemble_spg(cpg, sets)
        if vulnerable_lines is not None:
            spg.label = label_spg(spg, vulnerable_lines)
        spgs.append(spg)
    if opts.deduplicate:
        spgs = dedup(spgs)
    return spgs


def generate_for_entry(entry: ProgramEntry, options: GenerationOptions | None = None) -> list[Spg]:
    return generate_spgs(entry.path, entry.line_set(), options)


def statement_sentences(paths: list[str], options: GenerationOptions | None = None) -> list[list[str]]:
    """Token sequences of every statement in the given programs, after
    normalization; the pretraining corpus."""
    opts = options or GenerationOptions()
    sentences: list[list[str]] = []
    for path in paths:
        unit = parse_file(path)
        if opts.normalize_names:
            unit, _ = normalize(unit, keep=opts.keep if opts.keep is not None else opts.api)
        for stmt in unit.statements:
            text = unit.statement_text(stmt.stmt_id)
            sentences.append([t.text for t in tokenize(text)])
    return sentences
