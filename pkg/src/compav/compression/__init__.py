"""Compressed-length oracles for the five supported compressors.

Only output lengths matter downstream; every function here is pure and
deterministic. Documents are compressed as UTF-8 bytes.
"""

import bz2
import enum
import gzip
import io
import zipfile
from functools import lru_cache

from ..exceptions import EmptyInput
from . import _lzw, _ppm

__all__ = [
    "CompressorKind",
    "compressed_length",
    "compress",
    "triple_lengths",
    "resolve_compressor",
    "describe",
]


class CompressorKind(str, enum.Enum):
    PPM = "ppm"
    DEFLATE = "deflate"
    BZIP2 = "bzip2"
    ZIP = "zip"
    LZW = "lzw"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown compressor {value!r}; expected one of {choices}") from None


# Fixed entry metadata keeps zip output independent of the wall clock.
_ZIP_DATE = (1980, 1, 1, 0, 0, 0)


def _zip(data):
    buf = io.BytesIO()
    info = zipfile.ZipInfo("d", date_time=_ZIP_DATE)
    info.compress_type = zipfile.ZIP_DEFLATED
    with zipfile.ZipFile(buf, "w") as zf:
        zf.writestr(info, data, compress_type=zipfile.ZIP_DEFLATED, compresslevel=9)
    return buf.getvalue()


_COMPRESSORS = {
    CompressorKind.PPM: _ppm.compress,
    CompressorKind.DEFLATE: lambda data: gzip.compress(data, compresslevel=9, mtime=0),
    CompressorKind.BZIP2: lambda data: bz2.compress(data, 9),
    CompressorKind.ZIP: _zip,
    CompressorKind.LZW: _lzw.compress,
}

_SIZERS = {
    CompressorKind.PPM: _ppm.compressed_size,
    CompressorKind.LZW: _lzw.compressed_size,
}


def describe(kind):
    """Human-readable description of a compressor's configuration."""
    kind = CompressorKind.parse(kind)
    return {
        CompressorKind.PPM: (
            f"PPM order {_ppm.DEFAULT_ORDER}, escape method D, full exclusion, "
            f"{_ppm.DEFAULT_MEMORY >> 20} MiB model memory"
        ),
        CompressorKind.DEFLATE: "gzip (deflate level 9)",
        CompressorKind.BZIP2: "bzip2 level 9",
        CompressorKind.ZIP: "zip single entry (deflate level 9)",
        CompressorKind.LZW: f"LZW {_lzw.MIN_WIDTH}-{_lzw.MAX_WIDTH} bit codes, frozen dictionary",
    }[kind]


def _as_bytes(data):
    if isinstance(data, str):
        data = data.encode("utf-8")
    else:
        data = bytes(data)
    if not data:
        raise EmptyInput("cannot compress an empty document")
    return data


def compress(kind, data):
    """Return the compressor output for ``data``."""
    return _COMPRESSORS[CompressorKind.parse(kind)](_as_bytes(data))


@lru_cache(maxsize=4096)
def _cached_length(kind, data):
    sizer = _SIZERS.get(kind)
    if sizer is not None:
        return sizer(data)
    return len(_COMPRESSORS[kind](data))


def compressed_length(kind, data):
    """Byte length of ``kind``'s output for ``data``.

    Raises EmptyInput for zero-length data.
    """
    return _cached_length(CompressorKind.parse(kind), _as_bytes(data))


def triple_lengths(kind, x, y):
    """Return ``(C(x), C(y), C(xy))`` where ``xy`` is the raw concatenation."""
    x = _as_bytes(x)
    y = _as_bytes(y)
    kind = CompressorKind.parse(kind)
    if kind is CompressorKind.PPM:
        cx, cxy = _ppm.prefix_lengths(x + y, len(x))
        return cx, compressed_length(kind, y), cxy
    return compressed_length(kind, x), compressed_length(kind, y), compressed_length(kind, x + y)


def resolve_compressor(compressor):
    """Turn a kind name or a ``bytes -> int`` callable into a triple function.

    Callables make it possible to score with stand-in compressors such as the
    identity ``len``.
    """
    if callable(compressor) and not isinstance(compressor, CompressorKind):
        def triple(x, y):
            x = _as_bytes(x)
            y = _as_bytes(y)
            return compressor(x), compressor(y), compressor(x + y)
        return triple
    kind = CompressorKind.parse(compressor)
    return lambda x, y: triple_lengths(kind, x, y)
