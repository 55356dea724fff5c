"""Fit a Gaussian mixture to a histogram and watch the residual fall.

We build a histogram from three known Gaussians, fit it greedily, and print
each extracted component next to the residual left after adding it.
"""

import numpy as np

import gmmce
from gmmce.metrics import residual_curve

levels = np.arange(256)
truth = [(60, 8, 4e4), (128, 12, 3e4), (200, 10, 3e4)]
bins = sum(w * gmmce.gaussian_pdf(levels, mu, s) for mu, s, w in truth)
h = gmmce.Histogram(bins)

model = gmmce.fit_gmm(h)
curve = residual_curve(model, h)

print(f"{len(model)} components cover {model.total_weight / h.total:.1%} of the mass")
print(f"{'k':>3} {'mu':>6} {'sigma':>7} {'weight':>10} {'residual':>12}")
print(f"{0:>3} {'':>6} {'':>7} {'':>10} {curve[0]:>12.4g}")
for k, c in enumerate(model.components, 1):
    print(f"{k:>3} {c.mu:>6.0f} {c.sigma:>7.2f} {c.weight:>10.0f} {curve[k]:>12.4g}")

# the first three line up with the generator; later ones mop up the overlap
print("\ngenerator:", ", ".join(f"N({m}, {s}^2) x {w:g}" for m, s, w in truth))
