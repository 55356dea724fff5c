"""256-bin histograms: counting, edge-padded box smoothing, CDFs and dynamic range."""

from __future__ import annotations

import io
from typing import NamedTuple

import numpy as np

from .image_io import GrayImage

__all__ = [
    "NUM_LEVELS",
    "Histogram",
    "DynamicRange",
    "EmptyHistogramError",
    "compute_histogram",
    "smooth",
    "cdf",
    "dynamic_range",
    "histogram_to_csv",
]

NUM_LEVELS = 256


class EmptyHistogramError(ValueError):
    """Raised when an operation needs a histogram with positive mass."""


class Histogram:
    """Real-valued frequencies over the intensity levels 0..255.

    The bins are stored read-only; operations return new histograms, so
    ``total`` always equals the sum of the current bins.
    """

    __slots__ = ("_bins", "_total")

    def __init__(self, bins):
        arr = np.array(bins, dtype=np.float64, copy=True)
        if arr.shape != (NUM_LEVELS,):
            raise ValueError(f"histogram needs exactly {NUM_LEVELS} bins, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("histogram bins must be finite")
        if np.any(arr < 0):
            raise ValueError("histogram bins must be non-negative")
        arr.flags.writeable = False
        self._bins = arr
        self._total = float(arr.sum())

    @property
    def bins(self) -> np.ndarray:
        return self._bins

    @property
    def total(self) -> float:
        return self._total

    def __getitem__(self, index):
        return self._bins[index]

    def __len__(self):
        return NUM_LEVELS

    def __eq__(self, other):
        if not isinstance(other, Histogram):
            return NotImplemented
        return bool(np.array_equal(self._bins, other._bins))

    def __repr__(self):
        nz = np.flatnonzero(self._bins)
        span = f"{nz[0]}..{nz[-1]}" if nz.size else "empty"
        return f"Histogram(total={self._total:g}, support={span})"


class DynamicRange(NamedTuple):
    lo: int
    hi: int


def compute_histogram(image: GrayImage) -> Histogram:
    counts = np.bincount(image.pixels.ravel(), minlength=NUM_LEVELS)
    return Histogram(counts)


def smooth(h: Histogram, n: int) -> Histogram:
    """Moving average of width ``2n+1`` over the histogram padded with its edge bins.

    The left padding repeats ``bins[0]`` and the right padding repeats
    ``bins[255]``, so the output keeps 256 bins.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"smoothing half-width must be a positive integer, got {n}")
    n = int(n)
    padded = np.pad(h.bins, n, mode="edge")
    # sum first, divide once: equal windows of integer counts stay bit-identical
    out = np.convolve(padded, np.ones(2 * n + 1), mode="valid") / (2 * n + 1)
    # round-off can leave -0.0 or tiny negatives where mass cancels
    np.maximum(out, 0.0, out=out)
    return Histogram(out)


def cdf(h: Histogram) -> np.ndarray:
    """Normalized cumulative distribution; the last entry is exactly 1."""
    if not h.total > 0:
        raise EmptyHistogramError("cannot take the CDF of an empty histogram")
    c = np.cumsum(h.bins)
    c /= c[-1]
    c[-1] = 1.0
    return c


def dynamic_range(h: Histogram, significance: float = 0.001) -> DynamicRange:
    """First and last bins holding more than ``significance * total``.

    Falls back to the strictly non-zero bins when no bin passes the threshold.
    """
    if not 0 <= significance < 1:
        raise ValueError(f"significance must lie in [0, 1), got {significance}")
    if not h.total > 0:
        raise EmptyHistogramError("dynamic range of an empty histogram is undefined")
    idx = np.flatnonzero(h.bins > significance * h.total)
    if idx.size == 0:
        idx = np.flatnonzero(h.bins > 0)
    return DynamicRange(int(idx[0]), int(idx[-1]))


def histogram_to_csv(h: Histogram) -> str:
    buf = io.StringIO()
    buf.write("intensity,frequency\n")
    for i, v in enumerate(h.bins):
        buf.write(f"{i},{v:.10g}\n")
    return buf.getvalue()
