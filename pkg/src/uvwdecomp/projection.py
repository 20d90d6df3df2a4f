"""Chambolle's projection onto G-balls and the two-part solvers built on it."""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, InvalidParameterError
from .grid import VectorField, as_image, divergence, gradient, total_variation


@dataclass(frozen=True)
class ProjectorParams:
    """Dual fixed-point settings.

    Sweeps stop once the sup-norm change of the dual field is at most
    ``tol * max(sup|p|, 1e-12)``. The dual field saturates at 1 in typical
    use, where this is an absolute tolerance; for very large radii ``p``
    stays tiny and the relative form avoids stopping after one sweep.
    """

    tau: float = 0.125
    max_iter: int = 200
    tol: float = 1e-4

    def __post_init__(self):
        if not 0 < self.tau <= 0.25:
            raise InvalidParameterError(f"tau must lie in (0, 0.25], got {self.tau}")
        if self.max_iter < 1:
            raise InvalidParameterError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.tol < 0:
            raise InvalidParameterError(f"tol must be >= 0, got {self.tol}")


@dataclass
class TwoPartResult:
    u: np.ndarray
    v: np.ndarray
    iterations: int
    converged: bool
    trace: list = field(default_factory=list)


def _check_radius(radius, name="lambda"):
    if not radius > 0 or not np.isfinite(radius):
        raise InvalidParameterError(f"{name} must be a positive finite scalar, got {radius}")


def project_g_ball_dual(f, radius, params=None, p0=None, callback=None):
    """Projection onto the G-ball of radius ``radius``, also returning the dual field.

    Runs the semi-implicit dual iteration

        p <- (p + tau * grad(div p - f/radius)) / (1 + tau * |grad(div p - f/radius)|)

    from ``p0`` (zero by default) and returns ``(radius * div p, p)``. Every
    iterate satisfies ``|p| <= 1`` pointwise, given a feasible ``p0``.
    ``callback(p, sweep)`` is invoked after each sweep.
    """
    f = as_image(f, "f")
    _check_radius(radius)
    params = params or ProjectorParams()
    tau = params.tau
    g = f / radius
    if p0 is None:
        p1 = np.zeros_like(f)
        p2 = np.zeros_like(f)
    else:
        p1, p2 = (np.array(c, dtype=np.float64) for c in p0)
        if p1.shape != f.shape or p2.shape != f.shape:
            raise InvalidInputError(f"initial dual field shape {p1.shape} does not match {f.shape}")
    for sweep in range(1, params.max_iter + 1):
        d1, d2 = gradient(divergence((p1, p2)) - g)
        denom = 1.0 + tau * np.sqrt(d1 * d1 + d2 * d2)
        n1 = (p1 + tau * d1) / denom
        n2 = (p2 + tau * d2) / denom
        change = max(np.max(np.abs(n1 - p1)), np.max(np.abs(n2 - p2)))
        scale = max(np.max(np.abs(n1)), np.max(np.abs(n2)), 1e-12)
        p1, p2 = n1, n2
        if callback is not None:
            callback(VectorField(p1, p2), sweep)
        if change <= params.tol * scale:
            break
    return radius * divergence((p1, p2)), VectorField(p1, p2)


def project_g_ball(f, radius, params=None, callback=None):
    """Project ``f`` onto the G-ball of the given radius (cold start, see
    :func:`project_g_ball_dual`)."""
    return project_g_ball_dual(f, radius, params, callback=callback)[0]


class WarmProjector:
    """G-ball projector that restarts each call from the previous dual field.

    Outer loops project slowly changing inputs; reusing the dual field
    accumulates sweeps across calls instead of restarting from zero.
    """

    def __init__(self, radius, params=None):
        _check_radius(radius)
        self.radius = radius
        self.params = params or ProjectorParams()
        self.dual = None

    def __call__(self, f):
        out, self.dual = project_g_ball_dual(f, self.radius, self.params, self.dual)
        return out


def rof_energy(u, f, lam):
    """ROF functional TV(u) + ||f - u||^2 / (2 lam)."""
    r = np.asarray(f) - np.asarray(u)
    return total_variation(u) + float(np.sum(r * r)) / (2.0 * lam)


def two_part_energy(u, v, f, lam):
    """Data-plus-TV part of the u+v functional; the G-ball constraint on v is implicit."""
    r = np.asarray(f) - np.asarray(u) - np.asarray(v)
    return total_variation(u) + float(np.sum(r * r)) / (2.0 * lam)


def rof_denoise(f, lam, params=None):
    """ROF restoration u = f - P_{G_lam}(f); returns (u, v = f - u)."""
    f = as_image(f, "f")
    u = f - project_g_ball(f, lam, params)
    return TwoPartResult(u=u, v=f - u, iterations=1, converged=True)


def decompose_uv(f, lam, mu, params=None, outer_max=50, outer_tol=0.5, callback=None):
    """Two-part structure/texture split by alternating projections.

    Starting from ``u = v = 0``, repeats

        v <- P_{G_mu}(f - u)
        u <- f - v - P_{G_lam}(f - v)

    until the sup-norm change of both components is at most ``outer_tol``.
    ``u + v`` is not ``f``: the remainder ``P_{G_lam}(f - v)`` is what the
    fidelity term leaves unexplained.
    """
    f = as_image(f, "f")
    _check_radius(lam, "lambda")
    _check_radius(mu, "mu")
    if outer_max < 1:
        raise InvalidParameterError(f"outer_max must be >= 1, got {outer_max}")
    u = np.zeros_like(f)
    v = np.zeros_like(f)
    proj_v = WarmProjector(mu, params)
    proj_u = WarmProjector(lam, params)
    trace = []
    converged = False
    for it in range(1, outer_max + 1):
        v_new = proj_v(f - u)
        fv = f - v_new
        u_new = fv - proj_u(fv)
        change = max(np.max(np.abs(u_new - u)), np.max(np.abs(v_new - v)))
        u, v = u_new, v_new
        trace.append(float(change))
        if callback is not None:
            callback(u, v, it)
        if change <= outer_tol:
            converged = True
            break
    return TwoPartResult(u=u, v=v, iterations=it, converged=converged, trace=trace)
