"""Verification performance measures.

Records are ``(truth, answer, score)`` triples where ``truth`` is ``"Y"`` or
``"N"``, ``answer`` is ``"Y"``, ``"N"`` or ``None`` for an unanswered problem
and ``score`` is a dissimilarity (lower means more likely same author).

Recall and precision follow the competition-style definitions: recall is
correct answers over all problems, precision is correct answers over
answered problems.
"""

from dataclasses import asdict, dataclass
from typing import NamedTuple, Optional

from .exceptions import EmptyInput, SingleClass

__all__ = [
    "MetricRecord",
    "MetricBlock",
    "accuracy",
    "pan_recall_precision_f1",
    "roc_auc",
    "roc_auc_bruteforce",
    "c_at_1",
    "final_score",
    "compute_metrics",
]


class MetricRecord(NamedTuple):
    truth: str
    answer: Optional[str]
    score: float


@dataclass(frozen=True)
class MetricBlock:
    accuracy: float
    recall: float
    precision: float
    f1: float
    auc: Optional[float]
    c_at_1: float
    final_score: Optional[float]

    def to_dict(self, ndigits=6):
        return {k: (None if v is None else round(v, ndigits)) for k, v in asdict(self).items()}


def _records(records):
    records = [MetricRecord(*r) for r in records]
    if not records:
        raise EmptyInput("no problems to score")
    return records


def _counts(records):
    n = len(records)
    n_u = sum(1 for r in records if r.answer is None)
    n_c = sum(1 for r in records if r.answer is not None and r.answer == r.truth)
    return n, n_c, n_u


def accuracy(records):
    n, n_c, _ = _counts(_records(records))
    return n_c / n


def pan_recall_precision_f1(records):
    n, n_c, n_u = _counts(_records(records))
    if n_u == n or n_c == 0:
        return 0.0, 0.0, 0.0
    recall = n_c / n
    precision = n_c / (n - n_u)
    return recall, precision, 2 * recall * precision / (recall + precision)


def roc_auc(records):
    """Probability that a random Y problem scores lower than a random N problem.

    Ties count half. Computed from average ranks (Mann-Whitney U).
    """
    records = _records(records)
    y = [r.score for r in records if r.truth == "Y"]
    n = [r.score for r in records if r.truth == "N"]
    if not y or not n:
        raise SingleClass("AUC needs at least one Y and one N problem")

    # Rank the N scores among all scores; an N ranked above a Y is a correct pair.
    pooled = sorted([(s, 0) for s in y] + [(s, 1) for s in n])
    # Doubled ranks keep the tie averaging in integers so the result is exact.
    twice_rank_sum = 0
    i = 0
    while i < len(pooled):
        j = i
        n_in_block = 0
        while j < len(pooled) and pooled[j][0] == pooled[i][0]:
            n_in_block += pooled[j][1]
            j += 1
        twice_rank_sum += (i + 1 + j) * n_in_block
        i = j
    twice_u = twice_rank_sum - len(n) * (len(n) + 1)
    return twice_u / (2 * len(y) * len(n))


def roc_auc_bruteforce(records):
    """Quadratic pairwise AUC, kept as a reference for ``roc_auc``."""
    records = _records(records)
    y = [r.score for r in records if r.truth == "Y"]
    n = [r.score for r in records if r.truth == "N"]
    if not y or not n:
        raise SingleClass("AUC needs at least one Y and one N problem")
    twice_credit = 0
    for a in y:
        for b in n:
            if a < b:
                twice_credit += 2
            elif a == b:
                twice_credit += 1
    return twice_credit / (2 * len(y) * len(n))


def c_at_1(records):
    n, n_c, n_u = _counts(_records(records))
    return (n_c + n_u * n_c / n) / n


def final_score(records):
    return roc_auc(records) * c_at_1(records)


def compute_metrics(records):
    """Full metric block. AUC and final score are None for single-class input."""
    records = _records(records)
    recall, precision, f1 = pan_recall_precision_f1(records)
    c1 = c_at_1(records)
    try:
        auc = roc_auc(records)
    except SingleClass:
        auc = None
    return MetricBlock(
        accuracy=accuracy(records),
        recall=recall,
        precision=precision,
        f1=f1,
        auc=auc,
        c_at_1=c1,
        final_score=None if auc is None else auc * c1,
    )
