"""Compression-based dissimilarity measures.

Every measure is a function of the three compressed lengths
``cx = C(x)``, ``cy = C(y)`` and ``cxy = C(xy)``. NCD, CBC and CLM share the
form ``1 - (cx + cy - cxy) / N`` and differ only in the normaliser ``N``;
CDM is ``cxy / (cx + cy)`` and maps onto CLM via ``2 - 1/CDM``.

Scores outside the nominal range are returned as-is and flagged, never
clamped, since clamping would distort rankings.
"""

import enum
import logging
import math
from dataclasses import dataclass

logger = logging.getLogger(__name__)

__all__ = [
    "MeasureKind",
    "DissimilarityScore",
    "ncd",
    "cbc",
    "clm",
    "cdm",
    "clm_from_cdm",
    "generalized",
    "normalizer",
    "measure",
    "nominal_range",
    "check_normalizer_order",
]


class MeasureKind(str, enum.Enum):
    NCD = "ncd"
    CBC = "cbc"
    CLM = "clm"
    CDM = "cdm"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown measure {value!r}; expected one of {choices}") from None


def nominal_range(kind):
    return (0.5, 1.0) if MeasureKind.parse(kind) is MeasureKind.CDM else (0.0, 1.0)


@dataclass(frozen=True)
class DissimilarityScore:
    value: float
    measure: MeasureKind

    @property
    def out_of_range(self):
        lo, hi = nominal_range(self.measure)
        return not lo <= self.value <= hi

    def __float__(self):
        return self.value


def _check(cx, cy, cxy):
    if cx < 1 or cy < 1:
        raise ValueError(f"compressed lengths must be >= 1, got cx={cx}, cy={cy}")
    if cxy < 0:
        raise ValueError(f"compressed length of the concatenation must be >= 0, got {cxy}")


def ncd(cx, cy, cxy):
    _check(cx, cy, cxy)
    return DissimilarityScore((cxy - min(cx, cy)) / max(cx, cy), MeasureKind.NCD)


def cbc(cx, cy, cxy):
    _check(cx, cy, cxy)
    return DissimilarityScore(1.0 - (cx + cy - cxy) / math.sqrt(cx * cy), MeasureKind.CBC)


def clm(cx, cy, cxy):
    """Chen-Li metric with the conditional length approximated as ``cxy - cy``."""
    _check(cx, cy, cxy)
    if cxy < 1:
        raise ValueError("CLM needs cxy >= 1")
    conditional = cxy - cy
    return DissimilarityScore(1.0 - (cx - conditional) / cxy, MeasureKind.CLM)


def cdm(cx, cy, cxy):
    _check(cx, cy, cxy)
    return DissimilarityScore(cxy / (cx + cy), MeasureKind.CDM)


def clm_from_cdm(cdm_value):
    if cdm_value == 0:
        raise ZeroDivisionError("CDM value of 0 has no CLM equivalent")
    return 2.0 - 1.0 / cdm_value


def normalizer(kind, cx, cy, cxy):
    kind = MeasureKind.parse(kind)
    if kind is MeasureKind.NCD:
        return max(cx, cy)
    if kind is MeasureKind.CBC:
        return math.sqrt(cx * cy)
    if kind is MeasureKind.CLM:
        return cxy
    return cx + cy


def generalized(cx, cy, cxy, kind):
    """Shared-numerator form ``1 - (cx + cy - cxy) / N(x, y)``.

    CDM does not fit the form and is computed with its own formula.
    """
    kind = MeasureKind.parse(kind)
    _check(cx, cy, cxy)
    if kind is MeasureKind.CDM:
        return cdm(cx, cy, cxy)
    return DissimilarityScore(1.0 - (cx + cy - cxy) / normalizer(kind, cx, cy, cxy), kind)


_DEDICATED = {
    MeasureKind.NCD: ncd,
    MeasureKind.CBC: cbc,
    MeasureKind.CLM: clm,
    MeasureKind.CDM: cdm,
}


def measure(kind, cx, cy, cxy):
    return _DEDICATED[MeasureKind.parse(kind)](cx, cy, cxy)


def check_normalizer_order(cx, cy, cxy):
    """Return True when ``max(cx, cy) <= cxy <= cx + cy``.

    Real compressors can violate this; a violation is logged at debug level
    and otherwise tolerated.
    """
    ok = max(cx, cy) <= cxy <= cx + cy
    if not ok:
        logger.debug("C(xy)=%d outside [max(C(x), C(y)), C(x)+C(y)] = [%d, %d]",
                     cxy, max(cx, cy), cx + cy)
    return ok
