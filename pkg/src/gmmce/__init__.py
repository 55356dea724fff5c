"""Contrast enhancement by greedy Gaussian mixture modeling of image histograms."""

from .baselines import histogram_equalize
from .fitting import (
    Boundaries,
    FitParams,
    estimate_mean,
    estimate_variance,
    estimate_weight,
    find_boundaries,
    fit_gmm,
    subtract_component,
)
from .gmm import (
    SIGMA_FLOOR,
    GaussianComponent,
    GmmModel,
    evaluate,
    gaussian_pdf,
    model_from_json,
    model_to_json,
    residual_sse,
)
from .histogram import (
    DynamicRange,
    EmptyHistogramError,
    Histogram,
    cdf,
    compute_histogram,
    dynamic_range,
    smooth,
)
from .image_io import GrayImage, PgmError, load_pgm, read_pgm, save_pgm, write_pgm
from .metrics import mean_brightness_error, residual_curve, shannon_entropy
from .transform import (
    DegenerateRangeError,
    Lut,
    apply_lut,
    build_target_histogram,
    diffuse_means,
    enhance,
    histogram_match,
    stretch_variances,
)

__all__ = [
    "apply_lut",
    "Boundaries",
    "build_target_histogram",
    "cdf",
    "compute_histogram",
    "DegenerateRangeError",
    "diffuse_means",
    "dynamic_range",
    "DynamicRange",
    "EmptyHistogramError",
    "enhance",
    "estimate_mean",
    "estimate_variance",
    "estimate_weight",
    "evaluate",
    "find_boundaries",
    "fit_gmm",
    "FitParams",
    "gaussian_pdf",
    "GaussianComponent",
    "GmmModel",
    "GrayImage",
    "Histogram",
    "histogram_equalize",
    "histogram_match",
    "load_pgm",
    "Lut",
    "mean_brightness_error",
    "model_from_json",
    "model_to_json",
    "PgmError",
    "read_pgm",
    "residual_curve",
    "residual_sse",
    "save_pgm",
    "shannon_entropy",
    "SIGMA_FLOOR",
    "smooth",
    "stretch_variances",
    "subtract_component",
    "write_pgm",
]

__version__ = "0.1.0"
