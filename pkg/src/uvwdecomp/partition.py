"""Texture partition fields from the local variance of the two-part texture."""

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import uniform_filter

from .errors import InvalidInputError, InvalidParameterError
from .grid import as_image
from .projection import ProjectorParams, decompose_uv


def local_variance(v, window):
    """Windowed variance with fixed normalizers.

    At each pixel returns ``sum(v**2)/L**2 - (sum(v)/L**2)**2`` over the
    ``L x L`` window centered there. Windows are clipped at the border and
    the missing pixels count as zero, so the ``1/L**2`` normalizer is kept
    everywhere.
    """
    v = as_image(v, "v")
    if not isinstance(window, (int, np.integer)) or window < 3 or window % 2 == 0:
        raise InvalidParameterError(f"window must be an odd integer >= 3, got {window!r}")
    mean = uniform_filter(v, size=window, mode="constant", cval=0.0)
    mean_sq = uniform_filter(v * v, size=window, mode="constant", cval=0.0)
    return mean_sq - mean * mean


def normalize_partition(raw, floor=0.01):
    """Affine min-max map of ``raw`` onto ``[floor, 1 - floor]``.

    A constant field maps to 0.5 everywhere.
    """
    if not 0 < floor < 0.5:
        raise InvalidParameterError(f"floor must lie in (0, 0.5), got {floor}")
    raw = np.asarray(raw, dtype=np.float64)
    if not np.all(np.isfinite(raw)):
        raise InvalidInputError("partition input contains NaN or Inf")
    lo = raw.min()
    hi = raw.max()
    if hi == lo:
        return np.full_like(raw, 0.5)
    nu = np.clip(floor + (1.0 - 2.0 * floor) * (raw - lo) / (hi - lo), floor, 1.0 - floor)
    nu[raw == hi] = 1.0 - floor
    return nu


def compute_partition(f, lam, mu, window, projector=None, floor=0.01,
                      outer_max=50, outer_tol=0.5):
    """Return ``(nu1, nu2)`` from the texture part of the two-part split of ``f``.

    ``nu1`` is large in textured regions, ``nu2 = 1 - nu1``.
    """
    split = decompose_uv(f, lam, mu, projector or ProjectorParams(),
                         outer_max=outer_max, outer_tol=outer_tol)
    nu1 = normalize_partition(local_variance(split.v, window), floor)
    return nu1, 1.0 - nu1


@dataclass
class PartitionPyramid:
    """Per-level partition grids; ``levels[0]`` matches the finest detail band."""

    levels: list

    def __len__(self):
        return len(self.levels)

    def __getitem__(self, level):
        return self.levels[level]


def _block_mean(a):
    m, n = a.shape
    # odd sizes: the trailing partial block averages only the pixels it has
    pm, pn = (-m) % 2, (-n) % 2
    if pm or pn:
        padded = np.pad(a, ((0, pm), (0, pn)))
        counts = np.pad(np.ones_like(a), ((0, pm), (0, pn)))
    else:
        padded, counts = a, None
    s = padded[0::2, 0::2] + padded[1::2, 0::2] + padded[0::2, 1::2] + padded[1::2, 1::2]
    if counts is None:
        return s / 4.0
    c = counts[0::2, 0::2] + counts[1::2, 0::2] + counts[0::2, 1::2] + counts[1::2, 1::2]
    return s / c


def pyramidalize(nu, levels):
    """Recursive 2x2 block means of ``nu``, one grid per wavelet level."""
    nu = np.asarray(nu, dtype=np.float64)
    if nu.ndim != 2:
        raise InvalidInputError(f"partition must be 2D, got shape {nu.shape}")
    if levels < 1 or 2 ** levels > min(nu.shape):
        raise InvalidParameterError(
            f"levels must lie in [1, log2(min dimension)] for a {nu.shape[0]}x{nu.shape[1]} field, got {levels}")
    grids = []
    cur = nu
    for _ in range(levels):
        cur = _block_mean(cur)
        grids.append(cur)
    return PartitionPyramid(grids)
