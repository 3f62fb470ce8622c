"""Decision-threshold calibration at the equal error rate.

``calibrate_eer`` walks the sorted same-author scores upward and the sorted
different-author scores downward until they cross, then places the
threshold between the crossing values. ``eer_oracle`` is an independent
brute-force search used to check it.

A problem is accepted when its score is strictly below the threshold, so
FAR counts different-author scores ``< theta`` and FRR counts same-author
scores ``>= theta``.
"""

import math
import random
from bisect import bisect_left
from dataclasses import dataclass

from .exceptions import EmptyScoreSet, LengthMismatch

__all__ = [
    "LabeledScore",
    "calibrate_eer",
    "eer_oracle",
    "error_rates",
    "balance_by_subsampling",
]


@dataclass(frozen=True)
class LabeledScore:
    score: float
    label: str

    def __post_init__(self):
        if not math.isfinite(self.score):
            raise ValueError(f"score must be finite, got {self.score}")
        if self.label not in ("Y", "N"):
            raise ValueError(f"label must be 'Y' or 'N', got {self.label!r}")


def _check_nonempty(y_scores, n_scores):
    if len(y_scores) == 0 or len(n_scores) == 0:
        raise EmptyScoreSet("need at least one Y and one N score")


def calibrate_eer(y_scores, n_scores):
    """Threshold at which false acceptances and false rejections balance.

    Both lists must have the same length.
    """
    y = sorted(float(s) for s in y_scores)
    n = sorted(float(s) for s in n_scores)
    _check_nonempty(y, n)
    if len(y) != len(n):
        raise LengthMismatch("Number of Y and N problems mismatch!")

    ell = len(y)
    i = 0
    j = ell - 1
    theta = None
    for _ in range(ell):
        if y[i] < n[j]:
            i += 1
            j -= 1
            continue
        if y[i] == n[j]:
            theta = y[i]
            break
        if i == 0:
            theta = 0.5 * (y[i] + n[j])
        else:
            theta = 0.5 * (min(y[i], n[j + 1]) + max(y[i - 1], n[j]))
        break
    if i == ell:
        theta = 0.5 * (y[i - 1] + n[j + 1])
    return theta


def error_rates(theta, y_scores, n_scores):
    """Return ``(FAR, FRR)`` at ``theta``."""
    far = sum(1 for s in n_scores if s < theta) / len(n_scores)
    frr = sum(1 for s in y_scores if s >= theta) / len(y_scores)
    return far, frr


def eer_oracle(y_scores, n_scores):
    """Exhaustive search for the threshold minimising ``|FAR - FRR|``.

    Candidates are the midpoints between adjacent merged scores plus one
    point below the minimum and one above the maximum. Ties go to the
    smaller ``FAR + FRR``, then to the smaller threshold.
    """
    y = [float(s) for s in y_scores]
    n = [float(s) for s in n_scores]
    _check_nonempty(y, n)
    merged = sorted(y + n)
    candidates = [merged[0] - 1.0, merged[-1] + 1.0]
    candidates += [0.5 * (a + b) for a, b in zip(merged, merged[1:])]
    y_sorted = sorted(y)
    n_sorted = sorted(n)
    best = None
    for theta in candidates:
        far = bisect_left(n_sorted, theta) / len(n)
        frr = (len(y) - bisect_left(y_sorted, theta)) / len(y)
        key = (abs(far - frr), far + frr, theta)
        if best is None or key < best:
            best = key
    return best[2]


def balance_by_subsampling(y_scores, n_scores, seed=None):
    """Randomly drop scores from the larger class until both have equal size."""
    y = list(y_scores)
    n = list(n_scores)
    rng = random.Random(seed)
    if len(y) > len(n):
        y = rng.sample(y, len(n))
    elif len(n) > len(y):
        n = rng.sample(n, len(y))
    return y, n
