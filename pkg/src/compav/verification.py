"""Problems, scoring, decisions and the serialisable verifier model.

A problem pairs a questioned document with one or more documents by a known
author. The known documents are concatenated (sorted by id, no separator)
into ``D_known`` and the problem's score is ``measure(C(D_known), C(D_unknown),
C(D_known D_unknown))``. A problem is answered ``Y`` when its score is
strictly below the threshold and ``N`` otherwise.
"""

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from . import __version__
from .compression import CompressorKind, describe, resolve_compressor
from .dissimilarity import DissimilarityScore, MeasureKind, measure
from .exceptions import ModelFormatError, UnlabeledProblem
from .metrics import MetricBlock, compute_metrics

__all__ = [
    "Document",
    "Problem",
    "VerifierModel",
    "Decision",
    "EvaluationReport",
    "concat_known",
    "score_problem",
    "score_problems",
    "problem_lengths",
    "decide",
    "train",
    "evaluate",
    "MODEL_FORMAT_VERSION",
    "REPORT_FORMAT_VERSION",
]

MODEL_FORMAT_VERSION = 1
REPORT_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Document:
    id: str
    text: str

    @property
    def data(self):
        return self.text.encode("utf-8")


@dataclass(frozen=True)
class Problem:
    id: str
    unknown: Document
    known: tuple
    truth: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "known", tuple(self.known))
        if not self.known:
            raise ValueError(f"problem {self.id!r} has no known documents")
        if self.truth is not None and self.truth not in ("Y", "N"):
            raise ValueError(f"problem {self.id!r}: truth must be 'Y', 'N' or None, got {self.truth!r}")


@dataclass(frozen=True)
class Decision:
    problem_id: str
    score: DissimilarityScore
    answer: str
    out_of_range: bool


def _format_theta(theta):
    # 17 significant digits always round-trip a double exactly.
    return format(theta, ".17g")


@dataclass(frozen=True)
class VerifierModel:
    """Trained artifact: compressor, measure and threshold.

    ``compressor`` may also be a ``bytes -> int`` callable for experiments;
    such models cannot be serialised.
    """

    compressor: object
    measure: MeasureKind
    theta: float
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not callable(self.compressor) or isinstance(self.compressor, CompressorKind):
            object.__setattr__(self, "compressor", CompressorKind.parse(self.compressor))
        object.__setattr__(self, "measure", MeasureKind.parse(self.measure))
        object.__setattr__(self, "theta", float(self.theta))
        if not math.isfinite(self.theta):
            raise ValueError(f"theta must be finite, got {self.theta}")

    def with_theta(self, theta):
        return VerifierModel(self.compressor, self.measure, theta, dict(self.metadata))

    def descriptor(self):
        if not isinstance(self.compressor, CompressorKind):
            raise TypeError("models with a custom compressor callable are not serialisable")
        return {
            "format_version": MODEL_FORMAT_VERSION,
            "compressor": self.compressor.value,
            "compressor_config": describe(self.compressor),
            "measure": self.measure.value,
            "theta": _format_theta(self.theta),
            "metadata": self.metadata,
        }

    def to_json(self):
        return json.dumps(self.descriptor(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text):
        try:
            doc = json.loads(text)
            if not isinstance(doc, dict):
                raise ModelFormatError("model document must be a JSON object")
            version = doc.get("format_version")
            if version != MODEL_FORMAT_VERSION:
                raise ModelFormatError(f"unsupported model format_version {version!r}")
            return cls(
                compressor=doc["compressor"],
                measure=doc["measure"],
                theta=float(doc["theta"]),
                metadata=dict(doc.get("metadata") or {}),
            )
        except ModelFormatError:
            raise
        except (ValueError, KeyError, TypeError) as exc:
            raise ModelFormatError(f"invalid model: {exc}") from exc

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path):
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except (OSError, UnicodeDecodeError) as exc:
            raise ModelFormatError(f"cannot read model {path}: {exc}") from exc
        return cls.from_json(text)


def concat_known(problem):
    """Join the known documents in ascending id order without separators."""
    ordered = sorted(problem.known, key=lambda d: d.id)
    return Document(id=f"{problem.id}/known", text="".join(d.text for d in ordered))


def _lengths(compressor, problem):
    x = concat_known(problem).data
    y = problem.unknown.data
    return resolve_compressor(compressor)(x, y)


def score_problem(model, problem):
    """Dissimilarity between ``D_known`` and ``D_unknown`` under ``model``."""
    return measure(model.measure, *_lengths(model.compressor, problem))


def _lengths_task(args):
    return _lengths(*args)


def problem_lengths(compressor, problems, jobs=1):
    """``(C(x), C(y), C(xy))`` for each problem, optionally in worker processes.

    Output order follows input order regardless of ``jobs``.
    """
    problems = list(problems)
    if not callable(compressor) or isinstance(compressor, CompressorKind):
        compressor = CompressorKind.parse(compressor)
    tasks = [(compressor, p) for p in problems]
    if jobs is None or jobs <= 1 or len(problems) < 2 or not isinstance(compressor, CompressorKind):
        return [_lengths_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_lengths_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def score_problems(compressor, kind, problems, jobs=1):
    kind = MeasureKind.parse(kind)
    return [measure(kind, *t) for t in problem_lengths(compressor, problems, jobs=jobs)]


def _decision(problem_id, score, theta):
    answer = "Y" if score.value < theta else "N"
    return Decision(problem_id, score, answer, score.out_of_range)


def decide(model, problem):
    return _decision(problem.id, score_problem(model, problem), model.theta)


def train(compressor, measure, training_corpus, *, subsample_balance=False, seed=None,
          corpus_id=None, jobs=1):
    """Score a labelled corpus and calibrate the threshold at the EER."""
    from .estimator import CompressionVerifier

    est = CompressionVerifier(compressor=compressor, measure=measure,
                              subsample_balance=subsample_balance, random_state=seed, n_jobs=jobs)
    est.fit(list(training_corpus))
    return est.to_model(corpus_id=corpus_id)


@dataclass
class EvaluationReport:
    decisions: list
    truths: list
    metrics: MetricBlock
    model: VerifierModel
    duration: float
    timestamp: str
    corpus_id: Optional[str] = None

    def rows(self):
        return [
            {
                "id": d.problem_id,
                "score": d.score.value,
                "answer": d.answer,
                "truth": t,
                "out_of_range": d.out_of_range,
            }
            for d, t in zip(self.decisions, self.truths)
        ]

    def to_dict(self):
        return {
            "format_version": REPORT_FORMAT_VERSION,
            "tool_version": __version__,
            "corpus": self.corpus_id,
            "model": self.model.descriptor(),
            "metrics": self.metrics.to_dict(),
            "n_problems": len(self.decisions),
            "n_out_of_range": sum(d.out_of_range for d in self.decisions),
            "rows": self.rows(),
            "timestamp": self.timestamp,
            "duration_seconds": round(self.duration, 3),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"


def evaluate(model, eval_corpus, *, jobs=1, corpus_id=None):
    """Decide every problem of a labelled corpus and compute all metrics.

    Problems are reported in id order whatever the input order or ``jobs``.
    """
    problems = sorted(eval_corpus, key=lambda p: p.id)
    for p in problems:
        if p.truth is None:
            raise UnlabeledProblem(f"problem {p.id!r} has no truth label")
    start = time.perf_counter()
    scores = score_problems(model.compressor, model.measure, problems, jobs=jobs)
    decisions = [_decision(p.id, s, model.theta) for p, s in zip(problems, scores)]
    duration = time.perf_counter() - start
    truths = [p.truth for p in problems]
    metrics = compute_metrics([(t, d.answer, d.score.value) for t, d in zip(truths, decisions)])
    return EvaluationReport(
        decisions=decisions,
        truths=truths,
        metrics=metrics,
        model=model,
        duration=duration,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        corpus_id=corpus_id,
    )
