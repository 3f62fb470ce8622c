import logging
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compav.compression import (
    CompressorKind,
    _lzw,
    _ppm,
    compress,
    compressed_length,
    describe,
    resolve_compressor,
    triple_lengths,
)
from compav.exceptions import EmptyInput

ALL_KINDS = list(CompressorKind)

logger = logging.getLogger(__name__)


def test_five_kinds():
    assert {k.value for k in CompressorKind} == {"ppm", "deflate", "bzip2", "zip", "lzw"}
    for kind in ALL_KINDS:
        assert describe(kind)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_empty_input_rejected(kind):
    with pytest.raises(EmptyInput):
        compressed_length(kind, b"")
    with pytest.raises(EmptyInput):
        triple_lengths(kind, b"x", b"")


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_length_matches_output(kind):
    data = b"the quick brown fox jumps over the lazy dog " * 20
    assert compressed_length(kind, data) == len(compress(kind, data))


def test_lzw_repeated_symbol_compresses():
    data = b"a" * 128
    assert compressed_length(CompressorKind.LZW, data) < len(data)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_deterministic(kind, prose_list):
    d = prose_list[5]
    assert compressed_length(kind, d) == compressed_length(kind, d)
    assert compress(kind, d) == compress(kind, d)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_no_state_leaks_between_calls(kind, prose_list):
    target = prose_list[10]
    expected = len(compress(kind, target))
    for other in prose_list[:3]:
        compress(kind, other)
    assert len(compress(kind, target)) == expected


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_sublinear_growth_on_repetition(kind):
    unit = b"sixteen byte run"
    for n in (64, 128):
        assert compressed_length(kind, unit * (2 * n)) < 2 * compressed_length(kind, unit * n)


def test_ppm_beats_deflate_on_prose(prose_list):
    assert len(prose_list) == 100
    wins = sum(
        compressed_length("ppm", d) <= compressed_length("deflate", d) for d in prose_list
    )
    assert wins >= 90


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_self_concatenation_is_cheap(kind, prose_list):
    exceptions = 0
    for d in prose_list[:20]:
        cx, cy, cxy = triple_lengths(kind, d, d)
        exceptions += not cxy < cx + cy
    assert exceptions == 0


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_triple_consistent_with_single(kind, prose_list):
    x, y = prose_list[1][:2048], prose_list[80][:2048]
    cx, cy, cxy = triple_lengths(kind, x, y)
    assert cx == compressed_length(kind, x)
    assert cy == compressed_length(kind, y)
    assert cxy == compressed_length(kind, x.encode() + y.encode())


def test_bzip2_cross_author_pairs_mostly_subadditive(prose_list):
    pydoc = [d for d in prose_list[:60]]
    licences = [d for d in prose_list[60:]]
    violations = 0
    pairs = list(zip(pydoc[:20], licences[:20]))
    for a, b in pairs:
        cx, cy, cxy = triple_lengths("bzip2", a[:2048], b[:2048])
        if cxy > cx + cy:
            violations += 1
            logger.info("bzip2 C(xy) > C(x) + C(y): %d > %d", cxy, cx + cy)
    assert violations <= len(pairs) // 2


def test_strings_are_utf8_encoded():
    text = "naïve café"
    assert compressed_length("deflate", text) == compressed_length("deflate", text.encode("utf-8"))


def test_resolve_callable_compressor():
    triple = resolve_compressor(len)
    assert triple(b"ab", b"cdefg") == (2, 5, 7)


def test_unknown_kind():
    with pytest.raises(ValueError):
        CompressorKind.parse("xz")


class TestPPM:
    def test_round_trip_on_prose(self, prose_list):
        data = prose_list[0].encode()
        assert _ppm.decompress(_ppm.compress(data), len(data)) == data

    @settings(max_examples=60, deadline=None)
    @given(data=st.binary(min_size=1, max_size=300), order=st.integers(0, 7),
           memory=st.sampled_from([60, 600, 1 << 20]))
    def test_round_trip(self, data, order, memory):
        payload = _ppm.compress(data, order, memory)
        assert _ppm.decompress(payload, len(data), order, memory) == data

    @settings(max_examples=60, deadline=None)
    @given(data=st.binary(min_size=2, max_size=300), cut=st.integers(1, 299))
    def test_prefix_lengths_match_standalone(self, data, cut):
        cut = min(cut, len(data))
        head, full = _ppm.prefix_lengths(data, cut)
        assert head == _ppm.compressed_size(data[:cut])
        assert full == _ppm.compressed_size(data)

    def test_memory_restart_still_decodes(self, prose_list):
        data = "".join(prose_list[:3]).encode()
        payload = _ppm.compress(data, memory=4096)
        assert _ppm.decompress(payload, len(data), memory=4096) == data

    def test_higher_order_helps_text(self, prose_list):
        data = prose_list[2].encode()
        assert _ppm.compressed_size(data, order=4) < _ppm.compressed_size(data, order=0)

    def test_nonempty_output(self):
        assert _ppm.compressed_size(b"a") >= 1


class TestLZW:
    @settings(max_examples=80, deadline=None)
    @given(st.binary(min_size=1, max_size=2000))
    def test_round_trip(self, data):
        assert _lzw.decompress(_lzw.compress(data)) == data

    def test_round_trip_past_dictionary_freeze(self):
        rng = random.Random(7)
        data = bytes(rng.randrange(256) for _ in range(200_000))
        payload = _lzw.compress(data)
        assert _lzw.decompress(payload) == data
        assert _lzw.compressed_size(data) == len(payload)

    def test_code_width_starts_at_nine_bits(self):
        # Two distinct literals: two 9-bit codes, padded to three bytes.
        assert len(_lzw.compress(b"ab")) == 3

    def test_widths_cap_at_sixteen(self):
        widths = list(_lzw._widths(70_000))
        assert widths[0] == 9
        assert widths[-1] == 16
        assert widths == sorted(widths)
