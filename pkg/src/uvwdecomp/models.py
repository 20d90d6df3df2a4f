"""Three-part structure/texture/noise decompositions.

Three iterative schemes share the loop skeleton: zero initialization, a w
update, a v update, a u update, and a stop once the largest sup-norm change
of the three components drops to ``eps`` or ``n_step`` iterations have run.

* ``decompose_jg``: texture and noise both in G-balls, weighted by the
  partition fields ``nu1``/``nu2``.
* ``decompose_ac``: noise in a Besov ball, extracted by wavelet shrinkage.
* ``decompose_jg2``: Besov noise with a location-dependent shrinkage driven
  by the pyramidal ``nu2``.
"""

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidInputError, InvalidParameterError, NumericalFailureError
from .grid import as_image
from .partition import compute_partition, pyramidalize
from .projection import ProjectorParams, WarmProjector
from .wavelet import besov_project, check_divisible, wst_spatial


def universal_threshold(sigma, eta, n_pixels):
    """Besov radius ``eta * sigma * sqrt(ln N)`` (natural logarithm)."""
    return eta * sigma * math.sqrt(math.log(n_pixels))


@dataclass(frozen=True)
class ModelParams:
    """Parameters for all three models; each model reads the fields it needs.

    ``lam`` is the fidelity weight. JG uses ``mu1``/``mu2``; AC and JG2 use
    ``mu``, ``sigma``, ``eta`` (or an explicit ``delta``). ``kappa`` keeps
    the divisions by ``nu`` finite.
    """

    lam: float = 50.0
    mu: float = 1000.0
    mu1: float = 1000.0
    mu2: float = 10.0
    sigma: float = 20.0
    eta: float = 0.2
    delta: float | None = None
    kappa: float = 0.01
    eps: float = 0.5
    n_step: int = 30
    window: int = 7
    levels: int = 3
    nu_floor: float = 0.01
    projector: ProjectorParams = field(default_factory=ProjectorParams)

    def __post_init__(self):
        for name in ("lam", "mu", "mu1", "mu2", "eta", "kappa", "eps"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise InvalidParameterError(f"{name} must be positive and finite, got {value}")
        if self.sigma < 0:
            raise InvalidParameterError(f"sigma must be >= 0, got {self.sigma}")
        if self.delta is not None and self.delta < 0:
            raise InvalidParameterError(f"delta must be >= 0, got {self.delta}")
        if self.n_step < 1:
            raise InvalidParameterError(f"n_step must be >= 1, got {self.n_step}")
        if self.window < 3 or self.window % 2 == 0:
            raise InvalidParameterError(f"window must be odd and >= 3, got {self.window}")
        if self.levels < 1:
            raise InvalidParameterError(f"levels must be >= 1, got {self.levels}")

    def resolve_delta(self, n_pixels):
        if self.delta is not None:
            return self.delta
        return universal_threshold(self.sigma, self.eta, n_pixels)

    def with_(self, **changes):
        return replace(self, **changes)


@dataclass
class Decomposition:
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    nu1: np.ndarray | None
    nu2: np.ndarray | None
    residual: np.ndarray
    iterations: int
    converged: bool
    trace: list = field(default_factory=list)
    fidelity: list = field(default_factory=list)

    def weighted_parts(self):
        """``(u, nu1*v, nu2*w)``, or ``(u, v, w)`` when no partition is used."""
        if self.nu1 is None:
            return self.u, self.v, self.w
        return self.u, self.nu1 * self.v, self.nu2 * self.w

    def explained(self):
        """``u + nu1*v + nu2*w`` summed left to right; adding ``residual`` gives ``f``."""
        a, b, c = self.weighted_parts()
        return (a + b) + c

    def denoised(self):
        """Structure plus (weighted) texture, the noise-free estimate."""
        a, b, _ = self.weighted_parts()
        return a + b


def _check_finite(arr, step, iteration):
    if not np.all(np.isfinite(arr)):
        raise NumericalFailureError(step, iteration)


def _check_partition(f, nu1, nu2):
    nu1 = np.asarray(nu1, dtype=np.float64)
    nu2 = np.asarray(nu2, dtype=np.float64)
    for name, nu in (("nu1", nu1), ("nu2", nu2)):
        if nu.shape != f.shape:
            raise InvalidInputError(f"{name} shape {nu.shape} does not match image {f.shape}")
        if not np.all((nu > 0) & (nu < 1)):
            raise InvalidInputError(f"{name} must lie strictly inside (0, 1)")
    if np.max(np.abs(nu1 + nu2 - 1.0)) > 1e-12:
        raise InvalidInputError("nu2 must equal 1 - nu1")
    return nu1, nu2


def _run(f, params, nu1, nu2, update_w, update_v, callback):
    lam = params.lam
    project_u = WarmProjector(lam, params.projector)
    u = np.zeros_like(f)
    v = np.zeros_like(f)
    w = np.zeros_like(f)
    weighted = nu1 is not None
    trace = []
    fidelity = []
    converged = False
    for it in range(1, params.n_step + 1):
        w_new = update_w(u, v)
        _check_finite(w_new, "w update", it)
        v_new = update_v(u, w_new)
        _check_finite(v_new, "v update", it)
        g = f - nu1 * v_new - nu2 * w_new if weighted else f - v_new - w_new
        u_new = g - project_u(g)
        _check_finite(u_new, "u update", it)

        change = max(np.max(np.abs(u_new - u)), np.max(np.abs(v_new - v)),
                     np.max(np.abs(w_new - w)))
        u, v, w = u_new, v_new, w_new
        state = Decomposition(u, v, w, nu1, nu2, None, it, False)
        # exact in float64 while the explained part stays within a factor 2 of f
        state.residual = f - state.explained()
        trace.append(float(change))
        fidelity.append(float(np.sum(state.residual ** 2)) / (2.0 * lam))
        state.trace, state.fidelity = trace, fidelity
        if change <= params.eps:
            converged = True
        state.converged = converged
        if callback is not None:
            callback(state)
        if converged:
            break
    return state


def decompose_jg(f, params, nu1, nu2, callback=None):
    """Locally adaptive three-part model with texture and noise in G-balls.

    Per outer iteration:

        w <- P_{G_mu2}((f - u - nu1 v) / (nu2 + kappa))
        v <- P_{G_mu1}((f - u - nu2 w) / (nu1 + kappa))
        u <- g - P_{G_lam}(g),  g = f - nu1 v - nu2 w

    ``callback(state)`` receives the :class:`Decomposition` after each
    iteration.
    """
    f = as_image(f, "f")
    nu1, nu2 = _check_partition(f, nu1, nu2)
    if not params.mu1 > params.mu2:
        warnings.warn(f"JG expects mu1 >> mu2, got mu1={params.mu1}, mu2={params.mu2}",
                      stacklevel=2)
    k = params.kappa
    project_w = WarmProjector(params.mu2, params.projector)
    project_v = WarmProjector(params.mu1, params.projector)

    def update_w(u, v):
        return project_w((f - u - nu1 * v) / (nu2 + k))

    def update_v(u, w):
        return project_v((f - u - nu2 * w) / (nu1 + k))

    return _run(f, params, nu1, nu2, update_w, update_v, callback)


def decompose_ac(f, params, callback=None):
    """Three-part model with Besov-ball noise, solved by alternating projections.

    Per outer iteration:

        w <- (f - u - v) - WST(f - u - v, 2 delta)
        v <- P_{G_mu}(f - u - w)
        u <- g - P_{G_lam}(g),  g = f - v - w
    """
    f = as_image(f, "f")
    check_divisible(f.shape, params.levels)
    delta = params.resolve_delta(f.size)
    project_v = WarmProjector(params.mu, params.projector)

    def update_w(u, v):
        return besov_project(f - u - v, delta, params.levels)

    def update_v(u, w):
        return project_v(f - u - w)

    return _run(f, params, None, None, update_w, update_v, callback)


def jg2_noise_update(r, nu2, nu2_pyr, lam, delta, kappa):
    """Location-adaptive Besov noise estimate for the merged model.

    With ``r = f - u - nu1 v``:

        w = r/(nu2 + kappa) - lam/(delta nu2^2 + kappa)
              * WST_spatial(delta nu2 r / lam ; 2 delta^2 nu2_pyr^2 / lam)
    """
    shrunk = wst_spatial(delta * nu2 * r / lam, 2.0 * delta * delta / lam, nu2_pyr)
    return r / (nu2 + kappa) - lam / (delta * nu2 * nu2 + kappa) * shrunk


def decompose_jg2(f, params, nu1, nu2, callback=None):
    """Merged model: weighted G-ball texture plus location-adaptive Besov noise.

    The v and u updates are those of :func:`decompose_jg` (with ``mu`` as the
    texture radius); w follows :func:`jg2_noise_update`.
    """
    f = as_image(f, "f")
    nu1, nu2 = _check_partition(f, nu1, nu2)
    check_divisible(f.shape, params.levels)
    delta = params.resolve_delta(f.size)
    nu2_pyr = pyramidalize(nu2, params.levels)
    k = params.kappa
    project_v = WarmProjector(params.mu, params.projector)

    def update_w(u, v):
        return jg2_noise_update(f - u - nu1 * v, nu2, nu2_pyr, params.lam, delta, k)

    def update_v(u, w):
        return project_v((f - u - nu2 * w) / (nu1 + k))

    return _run(f, params, nu1, nu2, update_w, update_v, callback)


def partition_for(f, params, mu=None):
    """Partition fields for ``f`` from the two-part split with ``params.lam``.

    ``mu`` defaults to ``params.mu1``, the texture radius of the JG model.
    """
    return compute_partition(f, params.lam, params.mu1 if mu is None else mu, params.window,
                             params.projector, floor=params.nu_floor)
