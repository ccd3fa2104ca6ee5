"""Synthetic desk-scale corpora.

The learning corpus plants a tainted-parameter-to-division pattern:
vulnerable programs divide by a parameter with no zero guard, benign
twins guard the division or avoid it. The coverage corpus additionally
plants programs whose marked line is reachable only through parameter or
return criteria (no sensitive calls, arrays, pointers, or arithmetic).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from vulspg.pipeline.dataset import ProgramEntry, write_manifest

_PARAM_POOL = ["total", "parts", "value", "count", "len", "num", "size", "width", "depth", "steps"]
_LOCAL_POOL = ["acc", "unit", "out", "res", "tmp", "sum", "left", "right", "base", "mix"]


@dataclass
class _Prog:
    source: str
    vulnerable_lines: list[int]


def _fresh(rng: np.random.Generator, pool: list[str], used: set[str]) -> str:
    choices = [n for n in pool if n not in used]
    name = choices[int(rng.integers(len(choices)))]
    used.add(name)
    return name


def _filler(rng: np.random.Generator, var: str, other: str) -> list[str]:
    ops = ["+", "-"]
    lines = []
    for _ in range(int(rng.integers(0, 3))):
        k = int(rng.integers(1, 10))
        op = ops[int(rng.integers(len(ops)))]
        lines.append(f"    {var} = {var} {op} {k};")
        if rng.random() < 0.4:
            lines.append(f"    {var} = {var} + {other};")
    return lines


def _vuln_direct(rng: np.random.Generator, idx: int) -> _Prog:
    used: set[str] = set()
    p1 = _fresh(rng, _PARAM_POOL, used)
    p2 = _fresh(rng, _PARAM_POOL, used)
    acc = _fresh(rng, _LOCAL_POOL, used)
    unit = _fresh(rng, _LOCAL_POOL, used)
    k = int(rng.integers(1, 10))
    lines = [
        f"int calc_{idx}(int {p1}, int {p2}) {{",
        f"    int {acc};",
        f"    int {unit};",
        f"    {acc} = {p1} + {k};",
    ]
    lines += _filler(rng, acc, p1)
    lines.append(f"    {unit} = {acc} / {p2};")
    vuln = len(lines)
    lines += [
        f"    return {unit};",
        "}",
    ]
    return _Prog("\n".join(lines) + "\n", [vuln])


def _vuln_call(rng: np.random.Generator, idx: int) -> _Prog:
    used: set[str] = set()
    v = _fresh(rng, _PARAM_POOL, used)
    c = _fresh(rng, _PARAM_POOL, used)
    out = _fresh(rng, _LOCAL_POOL, used)
    p1 = _fresh(rng, _PARAM_POOL, used)
    p2 = _fresh(rng, _PARAM_POOL, used)
    res = _fresh(rng, _LOCAL_POOL, used)
    k = int(rng.integers(1, 10))
    lines = [
        f"int scale_{idx}(int {v}, int {c}) {{",
        f"    int {out};",
        f"    {out} = {v} / {c};",
    ]
    vuln = len(lines)
    lines += [
        f"    return {out};",
        "}",
        "",
        f"int run_{idx}(int {p1}, int {p2}) {{",
        f"    int {res};",
        f"    {res} = scale_{idx}({p1} + {k}, {p2});",
        f"    return {res};",
        "}",
    ]
    return _Prog("\n".join(lines) + "\n", [vuln])


def _benign_guarded(rng: np.random.Generator, idx: int) -> _Prog:
    used: set[str] = set()
    p1 = _fresh(rng, _PARAM_POOL, used)
    p2 = _fresh(rng, _PARAM_POOL, used)
    acc = _fresh(rng, _LOCAL_POOL, used)
    unit = _fresh(rng, _LOCAL_POOL, used)
    k = int(rng.integers(1, 10))
    lines = [
        f"int calc_{idx}(int {p1}, int {p2}) {{",
        f"    int {acc};",
        f"    int {unit};",
        f"    {acc} = {p1} + {k};",
    ]
    lines += _filler(rng, acc, p1)
    lines += [
        f"    if ({p2} != 0) {{",
        f"        {unit} = {acc} / {p2};",
        "    } else {",
        f"        {unit} = 0;",
        "    }",
        f"    return {unit};",
        "}",
    ]
    return _Prog("\n".join(lines) + "\n", [])


def _benign_noarith(rng: np.random.Generator, idx: int) -> _Prog:
    used: set[str] = set()
    p1 = _fresh(rng, _PARAM_POOL, used)
    p2 = _fresh(rng, _PARAM_POOL, used)
    acc = _fresh(rng, _LOCAL_POOL, used)
    unit = _fresh(rng, _LOCAL_POOL, used)
    k = int(rng.integers(1, 10))
    lines = [
        f"int calc_{idx}(int {p1}, int {p2}) {{",
        f"    int {acc};",
        f"    int {unit};",
        f"    {acc} = {p1} + {k};",
    ]
    lines += _filler(rng, acc, p1)
    lines += [
        f"    {unit} = {acc} * {p2};",
        f"    return {unit};",
        "}",
    ]
    return _Prog("\n".join(lines) + "\n", [])


def _vuln_fp_fr_only(rng: np.random.Generator, idx: int) -> _Prog:
    """Marked line reachable only from FP/FR criteria: the program has no
    sensitive calls, arrays, pointers, or arithmetic operators at all."""
    used: set[str] = set()
    mode = _fresh(rng, _PARAM_POOL, used)
    flag = _fresh(rng, _LOCAL_POOL, used)
    k = int(rng.integers(1, 10))
    k2 = int(rng.integers(10, 20))
    lines = [
        f"int pick_{idx}(int {mode}) {{",
        f"    int {flag};",
        f"    {flag} = {mode};",
    ]
    vuln = len(lines)
    lines += [
        f"    if ({mode} == {k})",
        f"        {flag} = {k2};",
        f"    return {flag};",
        "}",
    ]
    return _Prog("\n".join(lines) + "\n", [vuln])


def _write_corpus(programs: list[_Prog], out_dir: str, manifest_name: str) -> list[ProgramEntry]:
    os.makedirs(out_dir, exist_ok=True)
    entries = []
    for i, prog in enumerate(programs):
        path = os.path.join(out_dir, f"prog_{i:04d}.c")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(prog.source)
        entries.append(ProgramEntry(path, prog.vulnerable_lines))
    write_manifest(entries, os.path.join(out_dir, manifest_name))
    return entries


def make_learning_corpus(out_dir: str, n: int = 200, seed: int = 0) -> list[ProgramEntry]:
    """Half the programs carry an unguarded division by a parameter."""
    rng = np.random.default_rng(seed)
    programs: list[_Prog] = []
    half = n // 2
    for i in range(half):
        maker = _vuln_direct if i % 2 == 0 else _vuln_call
        programs.append(maker(rng, i))
    for i in range(half, n):
        maker = _benign_guarded if i % 2 == 0 else _benign_noarith
        programs.append(maker(rng, i))
    return _write_corpus(programs, out_dir, "manifest.tsv")


def make_coverage_corpus(
    out_dir: str, seed: int = 0, special: int = 6, regular: int = 6
) -> list[ProgramEntry]:
    """`special` programs are reachable only via FP/FR; the rest carry the
    arithmetic pattern the four base kinds already cover."""
    rng = np.random.default_rng(seed)
    programs = [_vuln_fp_fr_only(rng, i) for i in range(special)]
    programs += [_vuln_direct(rng, special + i) for i in range(regular)]
    return _write_corpus(programs, out_dir, "manifest.tsv")
