"""Dataset manifests and program-level splitting.

Manifest format: one line per program,
    path<TAB>comma-separated-vulnerable-lines
with an empty line list for benign programs. Splits are drawn at program
granularity so all slice graphs of a program land on the same side.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from vulspg.errors import ConfigError


@dataclass
class ProgramEntry:
    path: str
    vulnerable_lines: list[int] = field(default_factory=list)

    def line_set(self) -> set[tuple[str, int]]:
        return {(self.path, line) for line in self.vulnerable_lines}


def load_manifest(path: str, check_files: bool = True) -> list[ProgramEntry]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read manifest {path!r}: {exc}") from exc
    base = os.path.dirname(os.path.abspath(path))
    entries: list[ProgramEntry] = []
    for raw in lines:
        raw = raw.rstrip("\n")
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        parts = raw.split("\t")
        rel = parts[0].strip()
        program = rel if os.path.isabs(rel) else os.path.join(base, rel)
        if check_files and not os.path.isfile(program):
            raise ConfigError(f"manifest references unknown file {program!r}")
        vulnerable: list[int] = []
        if len(parts) > 1 and parts[1].strip():
            for num in parts[1].split(","):
                num = num.strip()
                if num:
                    vulnerable.append(int(num))
        entries.append(ProgramEntry(program, vulnerable))
    return entries


def write_manifest(entries: list[ProgramEntry], path: str):
    base = os.path.dirname(os.path.abspath(path))
    with open(path, "w", encoding="utf-8") as fh:
        for e in entries:
            rel = os.path.relpath(e.path, base)
            lines = ",".join(str(n) for n in e.vulnerable_lines)
            fh.write(f"{rel}\t{lines}\n")


def split_dataset(
    entries: list[ProgramEntry], ratio: float, seed: int
) -> tuple[list[ProgramEntry], list[ProgramEntry]]:
    """Deterministic program-level split; both sides are non-empty."""
    if not 0.0 < ratio < 1.0:
        raise ConfigError(f"split ratio must be in (0, 1), got {ratio}")
    if len(entries) < 2:
        raise ConfigError(f"need at least 2 programs to split, got {len(entries)}")
    order = np.random.default_rng(seed).permutation(len(entries))
    k = int(len(entries) * ratio)
    k = min(max(k, 1), len(entries) - 1)
    train = [entries[i] for i in sorted(order[:k])]
    test = [entries[i] for i in sorted(order[k:])]
    return train, test


def check_no_leakage(
    train: list[ProgramEntry], test: list[ProgramEntry]
) -> bool:
    """True when no program path appears on both sides."""
    return not ({e.path for e in train} & {e.path for e in test})
