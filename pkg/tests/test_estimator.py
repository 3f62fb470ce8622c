import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from compav.estimator import CompressionVerifier
from compav.verification import VerifierModel


def test_params_round_trip():
    est = CompressionVerifier(compressor="lzw", measure="ncd", n_jobs=2)
    params = est.get_params()
    assert params["compressor"] == "lzw"
    assert params["measure"] == "ncd"
    assert params["threshold"] is None
    other = clone(est)
    assert other.get_params() == params
    assert not hasattr(other, "theta_")
    est.set_params(measure="cdm")
    assert est.measure == "cdm"


def test_fit_predict_synthetic(synthetic):
    est = CompressionVerifier().fit(synthetic)
    pred = est.predict(synthetic)
    assert list(pred) == [p.truth for p in synthetic]
    assert list(est.classes_) == ["N", "Y"]
    assert est.n_training_y_ == est.n_training_n_ == 3
    assert est.score(synthetic, [p.truth for p in synthetic]) == 1.0


def test_decision_function_sign(synthetic):
    est = CompressionVerifier(compressor="deflate").fit(synthetic)
    dec = est.decision_function(synthetic)
    assert np.array_equal(dec > 0, est.predict(synthetic) == "Y")


def test_pairs_with_explicit_labels(prose_list):
    a, b = prose_list[0][:1000], prose_list[90][:1000]
    X = [(a, a), ([b], b), (a, b), (b, a)]
    est = CompressionVerifier(compressor="deflate").fit(X, ["Y", "yes", "N", False])
    assert list(est.predict(X)) == ["Y", "Y", "N", "N"]


def test_fixed_threshold_skips_calibration(synthetic):
    est = CompressionVerifier(threshold=2.0).fit(synthetic)
    assert est.theta_ == 2.0
    assert set(est.predict(synthetic)) == {"Y"}


def test_not_fitted(synthetic):
    with pytest.raises(NotFittedError):
        CompressionVerifier().predict(synthetic)


def test_bad_input():
    with pytest.raises(TypeError):
        CompressionVerifier().score_samples([42])
    with pytest.raises(ValueError):
        CompressionVerifier().fit([("a", "b")], ["Y", "N"])


def test_model_conversion(synthetic):
    est = CompressionVerifier(compressor="bzip2", measure="clm").fit(synthetic)
    model = est.to_model(corpus_id="syn")
    assert isinstance(model, VerifierModel)
    assert model.metadata["training_corpus"] == "syn"
    back = CompressionVerifier.from_model(VerifierModel.from_json(model.to_json()))
    assert back.theta_ == est.theta_
    assert list(back.predict(synthetic)) == list(est.predict(synthetic))
