"""Deterministic synthetic covers and watermarks for tests, demos and benchmarks."""

from __future__ import annotations

import numpy as np
from scipy import ndimage


def synthetic_cover(size: int = 512, seed: int = 0) -> np.ndarray:
    """Gradient background, a few flat shapes and smoothed texture."""
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:size, 0:size] / size
    img = 60 + 110 * xx + 40 * np.sin(3 * np.pi * yy)
    for _ in range(6):
        cy, cx = rng.uniform(0.15, 0.85, 2)
        r = rng.uniform(0.05, 0.18)
        img[(yy - cy) ** 2 + (xx - cx) ** 2 < r * r] = rng.uniform(30, 220)
    x0, y0, x1, y1 = (np.sort(rng.uniform(0.1, 0.9, 2)).tolist() + np.sort(rng.uniform(0.1, 0.9, 2)).tolist())
    img[(xx > x0) & (xx < y0) & (yy > x1) & (yy < y1)] += 25
    texture = ndimage.gaussian_filter(rng.normal(0, 1, (size, size)), 1.5)
    img += 18 * texture / texture.std()
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def synthetic_mark(size: int = 64, seed: int = 0) -> np.ndarray:
    """A {0,1} logo-like bitmap: ring, bar and sparse random dots."""
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:size, 0:size] - (size - 1) / 2
    rr = np.hypot(yy, xx)
    mark = (rr > size * 0.25) & (rr < size * 0.4)
    mark |= (np.abs(yy) < size * 0.06) & (np.abs(xx) < size * 0.3)
    mark |= rng.random((size, size)) < 0.08
    return mark.astype(np.uint8)
