"""Global histogram equalization, the reference method for comparisons."""

import numpy as np

from .histogram import cdf, compute_histogram
from .image_io import GrayImage
from .transform import Lut, apply_lut

__all__ = ["equalization_lut", "histogram_equalize"]


def equalization_lut(image: GrayImage) -> Lut:
    # round half up: floor(x + 0.5), not numpy's half-to-even
    c = cdf(compute_histogram(image))
    return Lut(np.floor(255.0 * c + 0.5).astype(np.int64))


def histogram_equalize(image: GrayImage) -> GrayImage:
    """Map each pixel ``v`` to ``round(255 * CDF(v))``.

    A constant image therefore becomes all-255.
    """
    return apply_lut(image, equalization_lut(image))
