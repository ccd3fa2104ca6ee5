"""Coverage reporting: how many slice graphs each criterion kind yields
and which share of planted vulnerable lines at least one graph reaches,
with and without the FP/FR kinds."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from vulspg.pipeline.dataset import ProgramEntry
from vulspg.pipeline.generate import GenerationOptions, generate_spgs
from vulspg.spg import Spg
from vulspg.syvc import ALL_KINDS, SyvcKind


@dataclass
class CoverageReport:
    spg_counts: dict[str, int] = field(default_factory=dict)  # per kind
    total_spgs: int = 0
    vulnerable_lines: int = 0
    covered_lines: int = 0
    covered_lines_base: int = 0  # without FP/FR

    @property
    def coverage(self) -> float:
        return self.covered_lines / self.vulnerable_lines if self.vulnerable_lines else 0.0

    @property
    def coverage_base(self) -> float:
        return self.covered_lines_base / self.vulnerable_lines if self.vulnerable_lines else 0.0

    def to_dict(self) -> dict:
        return {
            "spg_counts": dict(self.spg_counts),
            "total_spgs": self.total_spgs,
            "vulnerable_lines": self.vulnerable_lines,
            "covered_lines": self.covered_lines,
            "coverage": self.coverage,
            "covered_lines_without_fp_fr": self.covered_lines_base,
            "coverage_without_fp_fr": self.coverage_base,
        }

    def table(self) -> str:
        lines = ["kind   #SPGs"]
        for kind in ALL_KINDS:
            lines.append(f"{kind.value:<6} {self.spg_counts.get(kind.value, 0)}")
        lines.append(f"total  {self.total_spgs}")
        lines.append(
            f"line coverage: {self.covered_lines}/{self.vulnerable_lines}"
            f" ({100 * self.coverage:.1f}%)"
        )
        lines.append(
            f"  without FP/FR: {self.covered_lines_base}/{self.vulnerable_lines}"
            f" ({100 * self.coverage_base:.1f}%)"
        )
        return "\n".join(lines)


def _covered(spgs: list[Spg], lines: set[tuple[str, int]]) -> set[tuple[str, int]]:
    hit: set[tuple[str, int]] = set()
    for spg in spgs:
        for node in spg.nodes:
            for line in range(node.line, node.line_hi + 1):
                if (node.file, line) in lines:
                    hit.add((node.file, line))
    return hit


def coverage_report(
    entries: list[ProgramEntry], options: GenerationOptions | None = None
) -> CoverageReport:
    opts = options or GenerationOptions()
    base_kinds = opts.kinds - {SyvcKind.FP, SyvcKind.FR}
    report = CoverageReport()
    for entry in entries:
        lines = entry.line_set()
        report.vulnerable_lines += len(lines)
        # Per-kind counts come from single-kind extractions so overlapping
        # criteria are attributed to every kind that produced them.
        all_spgs: list[Spg] = []
        base_spgs: list[Spg] = []
        for kind in sorted(opts.kinds, key=lambda k: k.value):
            spgs = generate_spgs(entry.path, lines, replace(opts, kinds={kind}))
            report.spg_counts[kind.value] = report.spg_counts.get(kind.value, 0) + len(spgs)
            report.total_spgs += len(spgs)
            all_spgs.extend(spgs)
            if kind in base_kinds:
                base_spgs.extend(spgs)
        report.covered_lines += len(_covered(all_spgs, lines))
        report.covered_lines_base += len(_covered(base_spgs, lines))
    return report
