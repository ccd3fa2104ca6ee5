from vulspg.pipeline.coverage import CoverageReport, coverage_report
from vulspg.pipeline.dataset import (
    ProgramEntry,
    check_no_leakage,
    load_manifest,
    split_dataset,
    write_manifest,
)
from vulspg.pipeline.detect import ProgramReport, SpgVerdict, detect_program
from vulspg.pipeline.generate import (
    GenerationOptions,
    generate_for_entry,
    generate_spgs,
    statement_sentences,
)
from vulspg.pipeline.metrics import Metrics, evaluate, metrics_from_counts
from vulspg.pipeline.synth import make_coverage_corpus, make_learning_corpus
from vulspg.pipeline.train import TrainConfig, TrainResult, accuracy, train

__all__ = [
    "CoverageReport",
    "GenerationOptions",
    "Metrics",
    "ProgramEntry",
    "ProgramReport",
    "SpgVerdict",
    "TrainConfig",
    "TrainResult",
    "accuracy",
    "check_no_leakage",
    "coverage_report",
    "detect_program",
    "evaluate",
    "generate_for_entry",
    "generate_spgs",
    "load_manifest",
    "make_coverage_corpus",
    "make_learning_corpus",
    "metrics_from_counts",
    "split_dataset",
    "statement_sentences",
    "train",
    "write_manifest",
]
