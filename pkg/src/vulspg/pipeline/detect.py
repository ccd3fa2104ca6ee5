"""Program-level detection: a program is flagged as soon as any one of
its slice property graphs is classified vulnerable."""

from __future__ import annotations

from dataclasses import dataclass, field

from vulspg.model import Model, encode_for_model, predict_label
from vulspg.pipeline.generate import GenerationOptions, generate_spgs


@dataclass
class SpgVerdict:
    kind: str
    element: str
    file: str
    line: int
    probability: float  # p(vulnerable)
    verdict: int


@dataclass
class ProgramReport:
    path: str
    verdict: int
    no_coverage: bool
    spgs: list[SpgVerdict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "verdict": self.verdict,
            "no_coverage": self.no_coverage,
            "spgs": [vars(s) for s in self.spgs],
        }


def detect_program(
    path: str, model: Model, options: GenerationOptions | None = None
) -> ProgramReport:
    """Classify every slice graph of the program; verdict 1 iff any graph
    is predicted vulnerable. Zero extractable criteria yields verdict 0
    with an explicit no-coverage flag."""
    spgs = generate_spgs(path, None, options)
    if not spgs:
        return ProgramReport(path=path, verdict=0, no_coverage=True)
    report = ProgramReport(path=path, verdict=0, no_coverage=False)
    for spg in spgs:
        p = model.forward(encode_for_model(spg, model))
        verdict = predict_label(p)
        report.spgs.append(
            SpgVerdict(
                kind=spg.criterion.kind.value,
                element=spg.criterion.code_element,
                file=spg.criterion_file,
                line=spg.criterion.line,
                probability=float(p.data[1]),
                verdict=verdict,
            )
        )
        if verdict == 1:
            report.verdict = 1
    return report
