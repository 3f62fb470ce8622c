import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from compav.dissimilarity import (
    DissimilarityScore,
    MeasureKind,
    cbc,
    cdm,
    check_normalizer_order,
    clm,
    clm_from_cdm,
    generalized,
    measure,
    ncd,
    nominal_range,
)

lengths = st.integers(min_value=1, max_value=10**6)
triples = st.tuples(lengths, lengths, lengths)


@pytest.mark.parametrize(
    "fn, triple, expected",
    [
        (ncd, (4, 6, 10), 1.0),
        (ncd, (5, 5, 5), 0.0),
        (ncd, (100, 120, 130), 0.25),
        (cbc, (4, 6, 10), 1.0),
        (cbc, (5, 5, 5), 0.0),
        (clm, (4, 6, 10), 1.0),
        (clm, (5, 5, 5), 0.0),
        (clm, (100, 120, 130), 0.30769),
        (cdm, (5, 5, 5), 0.5),
        (cdm, (4, 6, 10), 1.0),
        (cdm, (100, 120, 130), 0.59091),
    ],
)
def test_worked_values(fn, triple, expected):
    assert fn(*triple).value == pytest.approx(expected, abs=1e-5)


def test_exact_derived_values():
    assert cbc(100, 120, 130).value == pytest.approx(0.178416, abs=1e-6)
    assert cbc(100, 120, 130).value == pytest.approx(1 - 90 / math.sqrt(12000), abs=1e-9)
    assert clm(100, 120, 130).value == pytest.approx(1 - 90 / 130, abs=1e-9)
    assert cdm(100, 120, 130).value == pytest.approx(130 / 220, abs=1e-12)


@pytest.mark.parametrize(
    "value, expected", [(0.5, 0.0), (1.0, 1.0), (0.59091, 0.30769)]
)
def test_clm_from_cdm_examples(value, expected):
    assert clm_from_cdm(value) == pytest.approx(expected, abs=1e-4)


def test_clm_from_cdm_zero():
    with pytest.raises(ZeroDivisionError):
        clm_from_cdm(0)


@pytest.mark.parametrize(
    "kind, triple", [("ncd", (100, 120, 130)), ("cbc", (4, 6, 10)), ("clm", (5, 5, 5))]
)
def test_generalized_matches_dedicated(kind, triple):
    assert generalized(*triple, kind).value == pytest.approx(measure(kind, *triple).value, abs=1e-12)


@pytest.mark.parametrize("fn", [ncd, cbc, clm, cdm])
def test_rejects_zero_lengths(fn):
    with pytest.raises(ValueError):
        fn(0, 5, 5)
    with pytest.raises(ValueError):
        fn(5, 0, 5)


def test_score_carries_measure_and_flag():
    s = ncd(4, 6, 12)
    assert isinstance(s, DissimilarityScore)
    assert s.measure is MeasureKind.NCD
    assert s.out_of_range
    assert not ncd(100, 120, 130).out_of_range
    assert cdm(5, 5, 4).out_of_range
    assert float(s) == s.value


def test_nominal_ranges():
    assert nominal_range("cdm") == (0.5, 1.0)
    for kind in ("ncd", "cbc", "clm"):
        assert nominal_range(kind) == (0.0, 1.0)


def test_parse_measure():
    assert MeasureKind.parse("CBC") is MeasureKind.CBC
    with pytest.raises(ValueError):
        MeasureKind.parse("nid")


def _oracle(kind, cx, cy, cxy):
    # Exact rational arithmetic; CBC needs one irrational step at the end.
    cx, cy, cxy = Fraction(cx), Fraction(cy), Fraction(cxy)
    if kind == "ncd":
        return float((cxy - min(cx, cy)) / max(cx, cy))
    if kind == "cbc":
        return 1 - float(cx + cy - cxy) / math.sqrt(float(cx * cy))
    if kind == "clm":
        return float(1 - (cx - (cxy - cy)) / cxy)
    return float(cxy / (cx + cy))


@given(triples)
def test_matches_exact_oracle(t):
    for kind in ("ncd", "cbc", "clm", "cdm"):
        assert measure(kind, *t).value == pytest.approx(_oracle(kind, *t), abs=1e-12, rel=1e-12)


@given(triples)
def test_exceeds_one_iff_negative_numerator(t):
    cx, cy, cxy = t
    for fn in (ncd, cbc, clm):
        expected = cx + cy - cxy < 0
        if fn is ncd:
            # NCD's numerator is cxy - min, which equals max - (cx + cy - cxy).
            expected = cxy - min(cx, cy) > max(cx, cy)
        assert (fn(*t).value > 1) == expected


@given(lengths, lengths)
def test_normalizer_chain_for_positive_lengths(cx, cy):
    assert math.sqrt(cx * cy) <= max(cx, cy) <= cx + cy


@st.composite
def chained_triples(draw):
    cx = draw(lengths)
    cy = draw(lengths)
    cxy = draw(st.integers(max(cx, cy), cx + cy))
    return cx, cy, cxy


@given(chained_triples())
def test_score_ordering_inside_normalizer_chain(t):
    assert check_normalizer_order(*t)
    # With a non-negative shared numerator a larger normaliser gives a larger
    # score, and sqrt(cx*cy) <= max(cx, cy) <= cxy orders the normalisers.
    c, n, l_ = cbc(*t).value, ncd(*t).value, clm(*t).value
    tol = 1e-12
    assert c <= n + tol
    assert n <= l_ + tol


@given(triples)
def test_cdm_below_half_iff_clm_negative(t):
    assert (cdm(*t).value < 0.5) == (clm(*t).value < 0)


@given(triples)
def test_clm_equals_mapped_cdm(t):
    assert clm_from_cdm(cdm(*t).value) == pytest.approx(clm(*t).value, abs=1e-12, rel=1e-12)


@given(st.floats(min_value=1e-6, max_value=1.0), st.floats(min_value=1e-6, max_value=1.0))
def test_clm_from_cdm_monotone(a, b):
    assume(a < b)
    assert clm_from_cdm(a) < clm_from_cdm(b)


def test_normalizer_order_violation_is_logged(caplog):
    caplog.set_level("DEBUG", logger="compav.dissimilarity")
    assert not check_normalizer_order(10, 10, 25)
    assert "outside" in caplog.text
    assert check_normalizer_order(10, 10, 15)
