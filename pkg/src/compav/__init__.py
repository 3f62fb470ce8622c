"""Intrinsic authorship verification with compression models."""

__version__ = "0.1.0"

from .calibration import calibrate_eer, eer_oracle  # noqa: E402
from .compression import CompressorKind, compressed_length, triple_lengths  # noqa: E402
from .dissimilarity import MeasureKind, cbc, cdm, clm, clm_from_cdm, generalized, ncd  # noqa: E402
from .estimator import CompressionVerifier  # noqa: E402
from .verification import (  # noqa: E402
    Decision,
    Document,
    EvaluationReport,
    Problem,
    VerifierModel,
    concat_known,
    decide,
    evaluate,
    score_problem,
    train,
)

__all__ = [
    "CompressionVerifier",
    "CompressorKind",
    "MeasureKind",
    "Document",
    "Problem",
    "Decision",
    "VerifierModel",
    "EvaluationReport",
    "compressed_length",
    "triple_lengths",
    "ncd",
    "cbc",
    "clm",
    "cdm",
    "clm_from_cdm",
    "generalized",
    "calibrate_eer",
    "eer_oracle",
    "concat_known",
    "score_problem",
    "decide",
    "train",
    "evaluate",
]
