"""Greedy, one-component-at-a-time Gaussian mixture fitting of a histogram.

Each pass locates the dominant peak by correlating the working histogram
with a fixed-width Gaussian, bounds it by the nearest local minima, infers
its width from peak-to-neighbour drop ratios, scales it to the peak height,
and subtracts it. Passes repeat until the extracted weight covers a fraction
``alpha`` of the histogram mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .gmm import SIGMA_FLOOR, GaussianComponent, GmmModel, gaussian_pdf
from .histogram import NUM_LEVELS, EmptyHistogramError, Histogram, smooth

__all__ = [
    "FitParams",
    "Boundaries",
    "estimate_mean",
    "find_boundaries",
    "variance_candidates",
    "estimate_variance",
    "estimate_weight",
    "subtract_component",
    "fit_gmm",
]


@dataclass(frozen=True)
class FitParams:
    alpha: float = 0.95
    sigma0: float = 2.0
    smooth_n: int = 2
    max_components: int = 20
    significance: float = 0.001

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not self.sigma0 > 0:
            raise ValueError(f"sigma0 must be positive, got {self.sigma0}")
        if int(self.smooth_n) != self.smooth_n or self.smooth_n < 1:
            raise ValueError(f"smooth_n must be a positive integer, got {self.smooth_n}")
        if int(self.max_components) != self.max_components or self.max_components < 1:
            raise ValueError(f"max_components must be a positive integer, got {self.max_components}")
        if not 0 <= self.significance < 1:
            raise ValueError(f"significance must lie in [0, 1), got {self.significance}")


_FLAT_LOG_RATIO = 1e-12
_ROUNDOFF = 8 * np.finfo(np.float64).eps


class Boundaries(NamedTuple):
    lb: int
    ub: int


@lru_cache(maxsize=8)
def _correlation_kernel(sigma0: float) -> np.ndarray:
    # row I holds N(j | I, sigma0^2) for j = 0..255
    levels = np.arange(NUM_LEVELS, dtype=np.float64)
    k = gaussian_pdf(levels[None, :], levels[:, None], sigma0)
    k.flags.writeable = False
    return k


def estimate_mean(h: Histogram, sigma0: float = 2.0) -> int:
    """Level whose Gaussian-weighted neighbourhood holds the most mass.

    Correlating with a Gaussian of std ``sigma0`` instead of taking the raw
    argmax keeps the estimate on target when the peak bin itself is dented.
    Ties go to the smallest level.
    """
    if not h.total > 0:
        raise EmptyHistogramError("cannot locate a peak in an empty histogram")
    score = _correlation_kernel(float(sigma0)) @ h.bins
    return int(np.argmax(score))


def _valley_edges(b: np.ndarray) -> np.ndarray:
    """Mask of bins that sit on the edge of a local-minimum run.

    A run of equal values is a local minimum when the bins just outside it
    are higher (beyond the array counts as higher). Shoulders, where the
    run is higher on one side and lower on the other, are not minima.
    """
    n = b.size
    mask = np.zeros(n, dtype=bool)
    start = 0
    while start < n:
        end = start
        while end + 1 < n and b[end + 1] == b[start]:
            end += 1
        left_higher = start == 0 or b[start - 1] > b[start]
        right_higher = end == n - 1 or b[end + 1] > b[end]
        if left_higher and right_higher:
            mask[start] = mask[end] = True
        start = end + 1
    return mask


def find_boundaries(h_s: Histogram, mu: int) -> Boundaries:
    """Nearest local minima of the smoothed histogram on each side of ``mu``.

    ``lb`` is the largest level <= ``mu`` on a local minimum and ``ub`` the
    smallest level >= ``mu``; a flat valley resolves to its edge nearest
    ``mu``. Without a minimum the histogram edge (0 or 255) is used.
    """
    mu = int(mu)
    if not 0 <= mu < NUM_LEVELS:
        raise ValueError(f"mu must lie in [0, 255], got {mu}")
    edges = _valley_edges(h_s.bins)
    below = np.flatnonzero(edges[:mu + 1])
    above = np.flatnonzero(edges[mu:])
    lb = int(below[-1]) if below.size else 0
    ub = mu + int(above[0]) if above.size else NUM_LEVELS - 1
    return Boundaries(lb, ub)


def variance_candidates(h_s: Histogram, mu: int, b: Boundaries) -> np.ndarray:
    """Per-displacement width estimates ``d / sqrt(2 ln R)`` with ``R = h_s[mu] / h_s[mu +- d]``.

    Displacements run forward to ``ub`` and backward to ``lb``; entries with a
    zero denominator or ``R <= 1`` (up to round-off) are dropped.
    """
    bins = h_s.bins
    peak = bins[mu]
    if not peak > 0:
        raise ValueError(f"histogram is empty at mu={mu}")
    fwd = np.arange(1, b.ub - mu + 1)
    bwd = np.arange(1, mu - b.lb + 1)
    d = np.concatenate([fwd, bwd]).astype(np.float64)
    vals = np.concatenate([bins[mu + fwd], bins[mu - bwd]])
    ok = vals > 0
    d, vals = d[ok], vals[ok]
    log_r = np.log(peak) - np.log(vals)
    # ratios within round-off of 1 are flat, not a decay
    ok = log_r > _FLAT_LOG_RATIO
    return d[ok] / np.sqrt(2.0 * log_r[ok])


def estimate_variance(h_s: Histogram, mu: int, b: Boundaries) -> float:
    """Robust component width: the median of the drop-ratio candidates.

    Returns the standard deviation (not the variance), never below
    ``SIGMA_FLOOR``; with no usable candidate the floor itself is returned.
    """
    mu = int(mu)
    cand = variance_candidates(h_s, mu, b)
    if cand.size == 0:
        return SIGMA_FLOOR
    # a width beyond the window's reach is not resolved by the window
    reach = max(b.ub - mu, mu - b.lb, 1)
    return max(min(float(np.median(cand)), float(reach)), SIGMA_FLOOR)


def estimate_weight(h_s: Histogram, mu: int, sigma: float) -> float:
    """Scale that makes the component's peak equal ``h_s[mu]``."""
    if sigma < SIGMA_FLOOR:
        raise ValueError(f"sigma must be >= {SIGMA_FLOOR}, got {sigma}")
    peak = h_s.bins[int(mu)]
    if not peak > 0:
        raise ValueError(f"non-positive peak value at mu={mu}")
    return math.sqrt(2.0 * math.pi) * sigma * float(peak)


def subtract_component(h: Histogram, c: GaussianComponent) -> Histogram:
    """Remove a component from the histogram, clamping at zero.

    Remainders within a few ulps of the original bin count as zero, so the
    peak bin of a component sized by ``estimate_weight`` ends exactly at 0.
    """
    out = h.bins - c.bins()
    out[out <= _ROUNDOFF * h.bins] = 0.0
    return Histogram(out)


def _peak_bin(work: np.ndarray, mu: int, sigma0: float) -> int:
    # correlation can peak on an empty bin between two spikes; fall back to
    # the tallest bin within the kernel's reach, then to the global maximum
    reach = max(1, int(math.ceil(3 * sigma0)))
    lo, hi = max(0, mu - reach), min(NUM_LEVELS, mu + reach + 1)
    window = work[lo:hi]
    if window.max() > 0:
        return lo + int(np.argmax(window))
    return int(np.argmax(work))


def fit_gmm(h_org: Histogram, params: FitParams | None = None) -> GmmModel:
    """Greedily decompose ``h_org`` into Gaussian components.

    The histogram is smoothed once; components are then extracted from that
    working copy until their summed weight reaches ``alpha * total``, the
    component cap is hit, or the tallest remaining bin drops below
    ``significance * total``. A histogram with a single populated bin is
    left unsmoothed so it is captured by one floor-width component.
    """
    if params is None:
        params = FitParams()
    total = h_org.total
    if not total > 0:
        raise EmptyHistogramError("cannot fit an empty histogram")

    if np.count_nonzero(h_org.bins) > 1:
        work = smooth(h_org, params.smooth_n)
    else:
        work = h_org

    components: list[GaussianComponent] = []
    extracted = 0.0
    target = params.alpha * total
    while len(components) < params.max_components and extracted < target:
        bins = work.bins
        if bins.max() < params.significance * total or bins.max() <= 0:
            break
        mu = estimate_mean(work, params.sigma0)
        if bins[mu] <= 0:
            mu = _peak_bin(bins, mu, params.sigma0)
        bounds = find_boundaries(work, mu)
        sigma = estimate_variance(work, mu, bounds)
        weight = min(estimate_weight(work, mu, sigma), total - extracted)
        if weight <= 0:
            break
        comp = GaussianComponent(float(mu), sigma, weight)
        components.append(comp)
        extracted += weight
        work = subtract_component(work, comp)

    return GmmModel(tuple(components), params.alpha, total)
