"""Discrete differential operators on 2D grids.

Images are plain ``float64`` arrays of shape ``(rows, cols)``. Axis 0 is the
first gradient component, axis 1 the second. The gradient uses forward
differences with a zero last row/column (Neumann), and ``divergence`` is its
exact negative adjoint, as required by Chambolle's dual projection.
"""

from typing import NamedTuple

import numpy as np

from .errors import InvalidInputError


class VectorField(NamedTuple):
    g1: np.ndarray
    g2: np.ndarray

    def magnitude(self):
        return np.sqrt(self.g1 * self.g1 + self.g2 * self.g2)


def as_image(x, name="image"):
    """Validate and convert ``x`` to a finite 2D float64 array (at least 2x2)."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 2:
        raise InvalidInputError(f"{name} must be 2D, got shape {arr.shape}")
    if arr.shape[0] < 2 or arr.shape[1] < 2:
        raise InvalidInputError(f"{name} must be at least 2x2, got {arr.shape[0]}x{arr.shape[1]}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains NaN or Inf")
    return arr


def _same_shape(a, b, what):
    if a.shape != b.shape:
        raise InvalidInputError(f"{what}: dimension mismatch {a.shape} vs {b.shape}")


def gradient(u):
    """Forward-difference gradient with zero last row (g1) and last column (g2)."""
    u = as_image(u)
    g1 = np.zeros_like(u)
    g2 = np.zeros_like(u)
    g1[:-1, :] = u[1:, :] - u[:-1, :]
    g2[:, :-1] = u[:, 1:] - u[:, :-1]
    return VectorField(g1, g2)


def divergence(p):
    """Backward-difference divergence, the negative adjoint of :func:`gradient`.

    Only ``g1[:-1]`` and ``g2[:, :-1]`` enter the result; the entries the
    gradient always leaves at zero are ignored.
    """
    g1 = as_image(p[0], "g1")
    g2 = as_image(p[1], "g2")
    _same_shape(g1, g2, "divergence")
    d = np.zeros_like(g1)
    d[:-1, :] += g1[:-1, :]
    d[1:, :] -= g1[:-1, :]
    d[:, :-1] += g2[:, :-1]
    d[:, 1:] -= g2[:, :-1]
    return d


def total_variation(u):
    """Isotropic discrete total variation: sum of gradient magnitudes."""
    return float(np.sum(gradient(u).magnitude()))


def l2_distance(a, b):
    a = as_image(a, "a")
    b = as_image(b, "b")
    _same_shape(a, b, "l2_distance")
    d = a - b
    return float(np.sqrt(np.sum(d * d)))


def inner(a, b):
    """Standard inner product of two images or two vector fields."""
    if isinstance(a, tuple):
        return float(np.sum(a[0] * b[0]) + np.sum(a[1] * b[1]))
    return float(np.sum(np.asarray(a) * np.asarray(b)))

