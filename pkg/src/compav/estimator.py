"""scikit-learn compatible wrapper around the compression verifier.

``X`` is a sequence of problems (see ``utils.validation.check_problems``),
``y`` the matching Y/N labels. ``fit`` calibrates the EER threshold on the
training scores, ``predict`` answers ``"Y"`` / ``"N"``.
"""

import math
from datetime import datetime, timezone

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from .calibration import balance_by_subsampling, calibrate_eer
from .dissimilarity import MeasureKind
from .utils.validation import check_labels, check_problems
from .verification import VerifierModel, score_problems


class CompressionVerifier(ClassifierMixin, BaseEstimator):
    """Intrinsic authorship verifier based on compressed lengths.

    Parameters
    ----------
    compressor : {"ppm", "deflate", "bzip2", "zip", "lzw"} or callable
        Compressor used for ``C(.)``. A ``bytes -> int`` callable is accepted
        for experiments.
    measure : {"ncd", "cbc", "clm", "cdm"}
        Dissimilarity measure.
    threshold : float, optional
        Fixed decision threshold. When given, ``fit`` skips calibration.
    subsample_balance : bool
        Downsample the larger class of training scores so the calibration
        sees equally many Y and N problems.
    random_state : int, optional
        Seed for ``subsample_balance``.
    n_jobs : int
        Worker processes used for scoring.
    """

    def __init__(self, compressor="ppm", measure="cbc", threshold=None,
                 subsample_balance=False, random_state=None, n_jobs=1):
        self.compressor = compressor
        self.measure = measure
        self.threshold = threshold
        self.subsample_balance = subsample_balance
        self.random_state = random_state
        self.n_jobs = n_jobs

    def _scores(self, problems):
        scores = score_problems(self.compressor, self.measure, problems, jobs=self.n_jobs)
        return np.array([s.value for s in scores], dtype=float)

    def fit(self, X, y=None):
        problems = check_problems(X)
        if self.threshold is not None:
            self.theta_ = float(self.threshold)
            self.classes_ = np.array(["N", "Y"])
            self.train_scores_ = np.array([], dtype=float)
            self.train_labels_ = np.array([], dtype=object)
            return self
        labels = check_labels(problems, y)
        scores = self._scores(problems)
        y_scores = [s for s, lab in zip(scores, labels) if lab == "Y"]
        n_scores = [s for s, lab in zip(scores, labels) if lab == "N"]
        if self.subsample_balance:
            y_scores, n_scores = balance_by_subsampling(y_scores, n_scores, seed=self.random_state)
        self.theta_ = calibrate_eer(y_scores, n_scores)
        self.classes_ = np.array(["N", "Y"])
        self.train_scores_ = scores
        self.train_labels_ = np.array(labels, dtype=object)
        self.n_training_y_ = len(y_scores)
        self.n_training_n_ = len(n_scores)
        return self

    def score_samples(self, X):
        """Raw dissimilarity scores; lower means more likely the same author."""
        return self._scores(check_problems(X))

    def decision_function(self, X):
        """``theta - score``: positive values are answered ``Y``."""
        check_is_fitted(self, "theta_")
        return self.theta_ - self.score_samples(X)

    def predict(self, X):
        check_is_fitted(self, "theta_")
        scores = self.score_samples(X)
        return np.where(scores < self.theta_, "Y", "N").astype(object)

    def to_model(self, corpus_id=None):
        check_is_fitted(self, "theta_")
        if not math.isfinite(self.theta_):
            raise ValueError("fitted threshold is not finite")
        metadata = {
            "training_corpus": corpus_id,
            "trained_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }
        return VerifierModel(self.compressor, MeasureKind.parse(self.measure), self.theta_, metadata)

    @classmethod
    def from_model(cls, model, n_jobs=1):
        est = cls(compressor=model.compressor, measure=model.measure, threshold=model.theta,
                  n_jobs=n_jobs)
        est.theta_ = model.theta
        est.classes_ = np.array(["N", "Y"])
        return est
