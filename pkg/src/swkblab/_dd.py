"""Vectorised double-double arithmetic for polynomial evaluation.

Only the handful of error-free transformations needed by a Horner loop are
provided. Products use Dekker splitting, so inputs must stay below ~1e300.
"""
from fractions import Fraction

import numpy as np

_SPLIT = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    s = a + b
    err = b - (s - a)
    return s, err


def _split(a):
    t = _SPLIT * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def fraction_to_dd(c: Fraction) -> tuple[float, float]:
    """Round an exact rational to the nearest double-double pair."""
    hi = float(c)
    lo = float(c - Fraction(hi))
    return hi, lo


def horner_dd(hi: np.ndarray, lo: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Evaluate sum_k (hi[k] + lo[k]) x**k in double-double, returning doubles.

    ``hi`` and ``lo`` are ordered by ascending degree.
    """
    x = np.asarray(x, dtype=float)
    s_hi = np.full(x.shape, hi[-1])
    s_lo = np.full(x.shape, lo[-1])
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(len(hi) - 2, -1, -1):
            p, e = two_prod(s_hi, x)
            e = e + s_lo * x
            p, e = quick_two_sum(p, e)
            s, t = two_sum(p, hi[k])
            t = t + e + lo[k]
            s_hi, s_lo = quick_two_sum(s, t)
    return s_hi + s_lo
