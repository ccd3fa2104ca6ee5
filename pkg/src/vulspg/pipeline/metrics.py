"""Detection metrics from confusion counts.

Percentages are rounded half-up to one decimal for reporting; ratios with
a zero denominator are reported as absent rather than zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional

from vulspg.errors import UsageError


@dataclass
class Metrics:
    tp: int
    tn: int
    fp: int
    fn: int
    a: Optional[float]
    p: Optional[float]
    r: Optional[float]
    fpr: Optional[float]
    fnr: Optional[float]
    f1: Optional[float]

    def to_dict(self) -> dict:
        return {
            "tp": self.tp, "tn": self.tn, "fp": self.fp, "fn": self.fn,
            "a": self.a, "p": self.p, "r": self.r,
            "fpr": self.fpr, "fnr": self.fnr, "f1": self.f1,
        }

    def table(self) -> str:
        def fmt(v):
            return "-" if v is None else f"{v:.1f}"

        lines = [
            f"TP={self.tp}  TN={self.tn}  FP={self.fp}  FN={self.fn}",
            f"{'A':>5} {'P':>5} {'R':>5} {'FPR':>5} {'FNR':>5} {'F1':>5}",
            f"{fmt(self.a):>5} {fmt(self.p):>5} {fmt(self.r):>5} "
            f"{fmt(self.fpr):>5} {fmt(self.fnr):>5} {fmt(self.f1):>5}",
        ]
        return "\n".join(lines)


def _round1(x: Decimal) -> float:
    return float(x.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def _ratio(num: int, den: int) -> Optional[Decimal]:
    if den == 0:
        return None
    return Decimal(num) / Decimal(den)


def metrics_from_counts(tp: int, tn: int, fp: int, fn: int) -> Metrics:
    a = _ratio(tp + tn, tp + tn + fp + fn)
    p = _ratio(tp, tp + fp)
    r = _ratio(tp, tp + fn)
    fpr = _ratio(fp, fp + tn)
    fnr = _ratio(fn, fn + tp)
    f1 = None
    if p is not None and r is not None and (p + r) > 0:
        f1 = 2 * p * r / (p + r)
    return Metrics(
        tp=tp, tn=tn, fp=fp, fn=fn,
        a=None if a is None else _round1(a * 100),
        p=None if p is None else _round1(p * 100),
        r=None if r is None else _round1(r * 100),
        fpr=None if fpr is None else _round1(fpr * 100),
        fnr=None if fnr is None else _round1(fnr * 100),
        f1=None if f1 is None else _round1(f1 * 100),
    )


def evaluate(predictions: list[int], labels: list[int]) -> Metrics:
    """Confusion counts plus derived percentages (1 = vulnerable)."""
    if not predictions or not labels:
        raise UsageError("evaluate needs non-empty prediction and label lists")
    if len(predictions) != len(labels):
        raise UsageError(
            f"prediction/label length mismatch: {len(predictions)} vs {len(labels)}"
        )
    tp = tn = fp = fn = 0
    for pred, lab in zip(predictions, labels):
        if lab == 1 and pred == 1:
            tp += 1
        elif lab == 0 and pred == 0:
            tn += 1
        elif lab == 0 and pred == 1:
            fp += 1
        else:
            fn += 1
    return metrics_from_counts(tp, tn, fp, fn)
