"""Broadening a fitted mixture and mapping the image onto it.

The fitted means are spread linearly from the occupied range ``[lo, hi]``
to ``[0, 255]``, widths are stretched by the same factor, and the image is
remapped with the histogram-matching LUT from its own CDF to the CDF of
the broadened mixture.
"""

from __future__ import annotations

import io

import numpy as np

from .fitting import FitParams, fit_gmm
from .gmm import SIGMA_FLOOR, GmmModel, gaussian_pdf
from .histogram import (
    NUM_LEVELS,
    DynamicRange,
    Histogram,
    cdf,
    compute_histogram,
    dynamic_range,
)
from .image_io import GrayImage

__all__ = [
    "Lut",
    "DegenerateRangeError",
    "diffuse_means",
    "stretch_variances",
    "build_target_histogram",
    "histogram_match",
    "apply_lut",
    "enhance",
    "lut_to_csv",
]

_LEVELS = np.arange(NUM_LEVELS, dtype=np.float64)


class DegenerateRangeError(ValueError):
    """The occupied intensity range has zero width; there is nothing to stretch."""


class Lut:
    """Monotone non-decreasing 256-entry intensity mapping."""

    __slots__ = ("_table",)

    def __init__(self, table):
        arr = np.asarray(table)
        if arr.shape != (NUM_LEVELS,):
            raise ValueError(f"LUT needs {NUM_LEVELS} entries, got shape {arr.shape}")
        if arr.min() < 0 or arr.max() > 255:
            raise ValueError("LUT entries must lie in [0, 255]")
        arr = arr.astype(np.uint8)
        if np.any(np.diff(arr.astype(np.int16)) < 0):
            raise ValueError("LUT must be monotone non-decreasing")
        arr.flags.writeable = False
        self._table = arr

    @classmethod
    def identity(cls) -> Lut:
        return cls(np.arange(NUM_LEVELS))

    @property
    def table(self) -> np.ndarray:
        return self._table

    def __getitem__(self, i):
        return self._table[i]

    def __eq__(self, other):
        if not isinstance(other, Lut):
            return NotImplemented
        return bool(np.array_equal(self._table, other._table))

    def __repr__(self):
        return f"Lut([{self._table[0]}, ..., {self._table[-1]}])"


def _check_range(drange: DynamicRange) -> tuple[int, int]:
    lo, hi = int(drange[0]), int(drange[1])
    if hi <= lo:
        raise DegenerateRangeError(f"degenerate dynamic range [{lo}, {hi}]")
    return lo, hi


def diffuse_means(model: GmmModel, drange: DynamicRange) -> np.ndarray:
    """Map fitted means linearly from ``[lo, hi]`` onto ``[0, 255]``.

    Means outside the range are clamped to it first.
    """
    lo, hi = _check_range(drange)
    mu = np.clip(model.means, lo, hi)
    return (mu - lo) / (hi - lo) * 255.0


def stretch_variances(model: GmmModel, drange: DynamicRange) -> np.ndarray:
    """Widen each component by ``256 / (hi - lo)``; returns standard deviations."""
    lo, hi = _check_range(drange)
    return model.sigmas * (256.0 / (hi - lo))


def build_target_histogram(means, sigmas, weights) -> Histogram:
    means, sigmas, weights = (np.asarray(a, dtype=np.float64).ravel() for a in (means, sigmas, weights))
    if not means.size == sigmas.size == weights.size:
        raise ValueError(
            f"parameter length mismatch: {means.size} means, {sigmas.size} sigmas, {weights.size} weights")
    if np.any(sigmas < SIGMA_FLOOR):
        raise ValueError(f"sigmas must be >= {SIGMA_FLOOR}")
    if means.size == 0:
        return Histogram(np.zeros(NUM_LEVELS))
    dens = gaussian_pdf(_LEVELS[:, None], means[None, :], sigmas[None, :])
    return Histogram(dens @ weights)


def _check_cdf(c, name):
    c = np.asarray(c, dtype=np.float64)
    if c.shape != (NUM_LEVELS,):
        raise ValueError(f"{name} must have {NUM_LEVELS} entries")
    if np.any(np.diff(c) < 0):
        raise ValueError(f"{name} is not non-decreasing")
    return c


def histogram_match(cdf_src, cdf_dst) -> Lut:
    """For each source level, the smallest destination level whose CDF reaches it."""
    src = _check_cdf(cdf_src, "cdf_src")
    dst = _check_cdf(cdf_dst, "cdf_dst")
    table = np.searchsorted(dst, src, side="left")
    return Lut(np.minimum(table, NUM_LEVELS - 1))


def apply_lut(image: GrayImage, lut: Lut) -> GrayImage:
    return GrayImage(lut.table[image.pixels])


def enhance(image: GrayImage, params: FitParams | None = None) -> tuple[GrayImage, GmmModel, Lut]:
    """Run the full enhancement and return ``(enhanced, model, lut)``.

    Images whose occupied range collapses to one level come back unchanged
    with an empty model and the identity LUT.
    """
    if params is None:
        params = FitParams()
    h = compute_histogram(image)
    drange = dynamic_range(h, params.significance)
    if drange.hi <= drange.lo:
        return image, GmmModel((), params.alpha, h.total), Lut.identity()

    model = fit_gmm(h, params)
    if len(model) == 0:
        return image, model, Lut.identity()
    target = build_target_histogram(
        diffuse_means(model, drange),
        stretch_variances(model, drange),
        model.weights,
    )
    lut = histogram_match(cdf(h), cdf(target))
    return apply_lut(image, lut), model, lut


def lut_to_csv(lut: Lut) -> str:
    buf = io.StringIO()
    buf.write("input,output\n")
    for i, v in enumerate(lut.table):
        buf.write(f"{i},{int(v)}\n")
    return buf.getvalue()
