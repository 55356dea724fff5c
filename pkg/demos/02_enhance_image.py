"""Enhance a low-contrast image and look at what the transfer curve did.

Usage: python3 demos/02_enhance_image.py [input.pgm] [output.pgm]

Without arguments a synthetic image with two narrow modes at 110 and 140 is
used. The fitted means get spread across the full range and each mode keeps
its shape, only wider.
"""

import sys

import numpy as np

import gmmce


def synthetic(side=256):
    rng = np.random.default_rng(0)
    n = side * side
    pix = np.concatenate([rng.normal(110, 4, n // 2), rng.normal(140, 4, n - n // 2)])
    return gmmce.GrayImage(np.clip(np.rint(rng.permutation(pix)), 0, 255).astype(np.uint8).reshape(side, side))


image = gmmce.load_pgm(sys.argv[1]) if len(sys.argv) > 1 else synthetic()
out, model, lut = gmmce.enhance(image)

h_in = gmmce.compute_histogram(image)
h_out = gmmce.compute_histogram(out)
print("input range: ", tuple(gmmce.dynamic_range(h_in)))
print("output range:", tuple(gmmce.dynamic_range(h_out)))

drange = gmmce.dynamic_range(h_in)
moved = gmmce.diffuse_means(model, drange)
print("\nfitted means and where they were sent:")
for c, new in zip(model.components, moved):
    print(f"  {c.mu:6.1f} -> {new:6.1f}   (sigma {c.sigma:.2f}, weight {c.weight / h_in.total:.1%})")

print("\ntransfer curve, every 16th level:")
print("  " + " ".join(f"{i:>3}" for i in range(0, 256, 16)))
print("  " + " ".join(f"{int(lut.table[i]):>3}" for i in range(0, 256, 16)))

if len(sys.argv) > 2:
    gmmce.save_pgm(sys.argv[2], out)
    print(f"\nwrote {sys.argv[2]}")
