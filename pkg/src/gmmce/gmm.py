"""Gaussian mixtures over the intensity axis."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .histogram import NUM_LEVELS, DynamicRange, Histogram

__all__ = [
    "SIGMA_FLOOR",
    "WEIGHT_SLACK",
    "GaussianComponent",
    "GmmModel",
    "gaussian_pdf",
    "evaluate",
    "evaluate_bins",
    "residual_sse",
    "model_to_json",
    "model_from_json",
]

# components narrower than half a level carry no meaning at 8-bit resolution
SIGMA_FLOOR = 0.5
WEIGHT_SLACK = 0.05

_LEVELS = np.arange(NUM_LEVELS, dtype=np.float64)


def gaussian_pdf(x, mu, sigma):
    """Normal density with mean ``mu`` and standard deviation ``sigma``; broadcasts."""
    sigma = np.asarray(sigma, dtype=np.float64)
    if np.any(sigma <= 0):
        raise ValueError("sigma must be positive")
    z = (np.asarray(x, dtype=np.float64) - mu) / sigma
    out = np.exp(-0.5 * z * z) / (math.sqrt(2.0 * math.pi) * sigma)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class GaussianComponent:
    mu: float
    sigma: float
    weight: float

    def __post_init__(self):
        if not 0.0 <= self.mu <= NUM_LEVELS - 1:
            raise ValueError(f"mu must lie in [0, 255], got {self.mu}")
        if not self.sigma >= SIGMA_FLOOR:
            raise ValueError(f"sigma must be >= {SIGMA_FLOOR}, got {self.sigma}")
        if not self.weight > 0:
            raise ValueError(f"weight must be positive, got {self.weight}")

    def bins(self) -> np.ndarray:
        return self.weight * gaussian_pdf(_LEVELS, self.mu, self.sigma)


@dataclass(frozen=True)
class GmmModel:
    """Components in extraction order, with the coverage target and the fitted mass."""

    components: tuple[GaussianComponent, ...] = ()
    alpha: float = 0.95
    source_total: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.total_weight > self.source_total * (1 + WEIGHT_SLACK):
            raise ValueError("component weights exceed the source histogram mass")

    def __len__(self):
        return len(self.components)

    @property
    def total_weight(self) -> float:
        return float(sum(c.weight for c in self.components))

    @property
    def means(self) -> np.ndarray:
        return np.array([c.mu for c in self.components], dtype=np.float64)

    @property
    def sigmas(self) -> np.ndarray:
        return np.array([c.sigma for c in self.components], dtype=np.float64)

    @property
    def weights(self) -> np.ndarray:
        return np.array([c.weight for c in self.components], dtype=np.float64)

    def truncated(self, k: int) -> GmmModel:
        """The model made of the first ``k`` extracted components."""
        return GmmModel(self.components[:k], self.alpha, self.source_total)

    def heaviest(self, k: int) -> list[GaussianComponent]:
        return sorted(self.components, key=lambda c: c.weight, reverse=True)[:k]


def evaluate(model: GmmModel, I):
    """Mixture value ``sum_j w_j N(I | mu_j, sigma_j)`` at level(s) ``I``."""
    x = np.asarray(I, dtype=np.float64)
    total = np.zeros_like(x)
    for c in model.components:
        total = total + c.weight * gaussian_pdf(x, c.mu, c.sigma)
    return total[()] if total.ndim == 0 else total


def evaluate_bins(model: GmmModel) -> np.ndarray:
    """The mixture sampled at all 256 integer levels."""
    return evaluate(model, _LEVELS)


def residual_sse(model: GmmModel, h: Histogram) -> float:
    diff = h.bins - evaluate_bins(model)
    return float(np.dot(diff, diff))


def model_to_json(model: GmmModel, drange: DynamicRange | None = None, indent: int | None = 2) -> str:
    """Serialize a fitted model; floats keep full round-trip precision."""
    doc = {
        "alpha": float(model.alpha),
        "source_total": float(model.source_total),
        "lo": None if drange is None else int(drange.lo),
        "hi": None if drange is None else int(drange.hi),
        "components": [
            {"mu": float(c.mu), "sigma": float(c.sigma), "weight": float(c.weight)}
            for c in model.components
        ],
    }
    return json.dumps(doc, indent=indent)


def model_from_json(text: str) -> tuple[GmmModel, DynamicRange | None]:
    doc = json.loads(text)
    comps = [GaussianComponent(float(c["mu"]), float(c["sigma"]), float(c["weight"]))
             for c in doc["components"]]
    model = GmmModel(comps, float(doc["alpha"]), float(doc["source_total"]))
    lo, hi = doc.get("lo"), doc.get("hi")
    drange = None if lo is None or hi is None else DynamicRange(int(lo), int(hi))
    return model, drange
