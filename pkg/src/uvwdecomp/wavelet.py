"""Orthonormal 2D Haar transform and wavelet soft thresholding.

Level 1 is the finest scale. On a 2x2 block ``[[a, b], [c, d]]`` one level
produces

    approx = (a + b + c + d) / 2      horizontal = (a + b - c - d) / 2
    vertical = (a - b + c - d) / 2    diagonal = (a - b - c + d) / 2

which is the separable product of the 1D pair map
``(a, b) -> ((a + b)/sqrt(2), (a - b)/sqrt(2))``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, InvalidParameterError
from .grid import as_image


@dataclass
class WaveletPyramid:
    """``details[k]`` holds the (horizontal, vertical, diagonal) bands of level k+1."""

    approx: np.ndarray
    details: list

    @property
    def levels(self):
        return len(self.details)

    def coefficients(self):
        """All coefficients flattened: approximation first, then details fine to coarse."""
        parts = [self.approx.ravel()]
        for bands in self.details:
            parts.extend(b.ravel() for b in bands)
        return np.concatenate(parts)

    def map_details(self, fn):
        """New pyramid with ``fn(band, level_index)`` applied to each detail band."""
        details = [tuple(fn(b, k) for b in bands) for k, bands in enumerate(self.details)]
        return WaveletPyramid(self.approx.copy(), details)

    def __add__(self, other):
        return WaveletPyramid(self.approx + other.approx,
                              [tuple(a + b for a, b in zip(x, y))
                               for x, y in zip(self.details, other.details)])

    def __rmul__(self, scalar):
        return WaveletPyramid(scalar * self.approx,
                              [tuple(scalar * b for b in bands) for bands in self.details])


def check_divisible(shape, levels):
    if levels < 1:
        raise InvalidParameterError(f"levels must be >= 1, got {levels}")
    step = 2 ** levels
    m, n = shape
    if m % step or n % step:
        pm, pn = (-m) % step, (-n) % step
        raise InvalidInputError(
            f"{m}x{n} image is not divisible by 2**{levels}={step}; "
            f"pad by {pm} rows and {pn} columns")


def _analysis(x):
    a = x[0::2, 0::2]
    b = x[0::2, 1::2]
    c = x[1::2, 0::2]
    d = x[1::2, 1::2]
    return ((a + b + c + d) / 2.0,
            ((a + b - c - d) / 2.0, (a - b + c - d) / 2.0, (a - b - c + d) / 2.0))


def _synthesis(approx, bands):
    h, v, dg = bands
    out = np.empty((2 * approx.shape[0], 2 * approx.shape[1]))
    out[0::2, 0::2] = (approx + h + v + dg) / 2.0
    out[0::2, 1::2] = (approx + h - v - dg) / 2.0
    out[1::2, 0::2] = (approx - h + v - dg) / 2.0
    out[1::2, 1::2] = (approx - h - v + dg) / 2.0
    return out


def dwt2(f, levels=3):
    f = as_image(f, "f")
    check_divisible(f.shape, levels)
    details = []
    approx = f
    for _ in range(levels):
        approx, bands = _analysis(approx)
        details.append(bands)
    return WaveletPyramid(approx, details)


def idwt2(pyr):
    approx = np.asarray(pyr.approx, dtype=np.float64)
    for k in range(pyr.levels - 1, -1, -1):
        bands = pyr.details[k]
        if any(np.shape(b) != approx.shape for b in bands):
            raise InvalidInputError(
                f"level {k + 1} detail bands {[np.shape(b) for b in bands]} do not match "
                f"approximation {approx.shape}")
        approx = _synthesis(approx, bands)
    return approx


def soft_threshold(c, t):
    """``sign(c) * max(|c| - t, 0)``; ``t`` may be an array broadcast against ``c``."""
    return np.sign(c) * np.maximum(np.abs(c) - t, 0.0)


def wst(f, threshold, levels=3):
    """Soft-threshold every detail coefficient; the approximation band is kept."""
    if threshold < 0:
        raise InvalidParameterError(f"threshold must be >= 0, got {threshold}")
    pyr = dwt2(f, levels)
    return idwt2(pyr.map_details(lambda b, k: soft_threshold(b, threshold)))


def besov_project(x, delta, levels=3):
    """Projection onto the Besov ball of radius ``delta``: ``x - wst(x, 2*delta)``."""
    if delta < 0:
        raise InvalidParameterError(f"delta must be >= 0, got {delta}")
    x = as_image(x, "x")
    if delta == 0:
        check_divisible(x.shape, levels)
        return np.zeros_like(x)
    return x - wst(x, 2.0 * delta, levels)


def wst_spatial(x, base, nu_pyr):
    """Soft thresholding with a per-coefficient threshold ``base * nu_level[i, j]**2``.

    ``nu_pyr`` supplies one grid per level, each matching that level's
    detail-band shape.
    """
    if base < 0:
        raise InvalidParameterError(f"base threshold must be >= 0, got {base}")
    x = as_image(x, "x")
    levels = len(nu_pyr)
    pyr = dwt2(x, levels)
    for k, bands in enumerate(pyr.details):
        if np.shape(nu_pyr[k]) != bands[0].shape:
            raise InvalidInputError(
                f"partition pyramid level {k + 1} has shape {np.shape(nu_pyr[k])}, "
                f"detail bands have {bands[0].shape}")
    return idwt2(pyr.map_details(lambda b, k: soft_threshold(b, base * nu_pyr[k] ** 2)))
