"""Synthetic ground-truth images, reproducible Gaussian noise and metrics.

Noise stream
------------
``add_gaussian_noise`` draws uniforms from NumPy's ``PCG64`` bit generator
seeded with ``seed`` (``Generator.random``: ``(next_uint64 >> 11) * 2**-53``)
and turns consecutive pairs ``(a, b)`` into normals with Box-Muller:

    r = sqrt(-2 ln(1 - a)),  z0 = r cos(2 pi b),  z1 = r sin(2 pi b)

filling the image in row-major order (z0 then z1). Any implementation of
PCG64 plus this transform reproduces the stream.
"""

import math
import shlex
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, InvalidParameterError
from .grid import as_image


@dataclass(frozen=True)
class Rect:
    row: int
    col: int
    height: int
    width: int
    level: float


@dataclass(frozen=True)
class TexturePatch:
    """Sinusoid ``amplitude * sin(2 pi frequency (x cos t + y sin t))`` added on a patch.

    ``orientation`` is the wave direction in degrees; 0 varies along columns.
    Coordinates are relative to the patch corner.
    """

    row: int
    col: int
    height: int
    width: int
    amplitude: float
    frequency: float
    orientation: float = 0.0


@dataclass(frozen=True)
class SyntheticSpec:
    size: int = 64
    background: float = 100.0
    rects: tuple = ()
    textures: tuple = ()
    noise: float | None = None


def default_spec():
    """64x64 square-plus-texture test image (noise level 20)."""
    return SyntheticSpec(
        size=64,
        background=100.0,
        rects=(Rect(6, 6, 24, 24, 180.0),),
        textures=(TexturePatch(34, 34, 24, 24, 40.0, 0.25, 0.0),),
        noise=20.0,
    )


def _check_bounds(item, size):
    if (item.row < 0 or item.col < 0 or item.height < 1 or item.width < 1
            or item.row + item.height > size or item.col + item.width > size):
        raise InvalidInputError(f"{item} does not fit inside a {size}x{size} image")


def make_synthetic(spec):
    """Return ``(clean, texture_mask)`` for ``spec``."""
    if spec.size < 2:
        raise InvalidInputError(f"size must be >= 2, got {spec.size}")
    img = np.full((spec.size, spec.size), float(spec.background))
    mask = np.zeros(img.shape, dtype=bool)
    for r in spec.rects:
        _check_bounds(r, spec.size)
        img[r.row:r.row + r.height, r.col:r.col + r.width] = r.level
    for t in spec.textures:
        _check_bounds(t, spec.size)
        y, x = np.mgrid[0:t.height, 0:t.width].astype(np.float64)
        theta = math.radians(t.orientation)
        phase = 2.0 * math.pi * t.frequency * (x * math.cos(theta) + y * math.sin(theta))
        img[t.row:t.row + t.height, t.col:t.col + t.width] += t.amplitude * np.sin(phase)
        mask[t.row:t.row + t.height, t.col:t.col + t.width] = True
    return img, mask


def standard_normals(shape, seed):
    """Row-major Box-Muller normals from a PCG64 uniform stream (see module doc)."""
    n = int(np.prod(shape))
    rng = np.random.Generator(np.random.PCG64(seed))
    uniforms = rng.random(2 * ((n + 1) // 2))
    a = uniforms[0::2]
    b = uniforms[1::2]
    radius = np.sqrt(-2.0 * np.log1p(-a))
    z = np.empty(2 * a.size)
    z[0::2] = radius * np.cos(2.0 * np.pi * b)
    z[1::2] = radius * np.sin(2.0 * np.pi * b)
    return z[:n].reshape(shape)


def add_gaussian_noise(clean, sigma, seed):
    if sigma < 0:
        raise InvalidParameterError(f"sigma must be >= 0, got {sigma}")
    clean = as_image(clean, "clean")
    if sigma == 0:
        return clean.copy()
    return clean + sigma * standard_normals(clean.shape, seed)


def snr_db(reference, estimate):
    """``10 log10(sum ref^2 / sum (ref - est)^2)``; ``inf`` when the error is zero."""
    reference = as_image(reference, "reference")
    estimate = as_image(estimate, "estimate")
    if reference.shape != estimate.shape:
        raise InvalidInputError(f"snr_db: dimension mismatch {reference.shape} vs {estimate.shape}")
    err = float(np.sum((reference - estimate) ** 2))
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(float(np.sum(reference ** 2)) / err)


def error_energy(reference, estimate, mask=None):
    """Squared error, optionally split into ``(inside mask, outside mask)``."""
    d2 = (np.asarray(reference, dtype=np.float64) - np.asarray(estimate, dtype=np.float64)) ** 2
    if mask is None:
        return float(np.sum(d2))
    mask = np.asarray(mask, dtype=bool)
    return float(np.sum(d2[mask])), float(np.sum(d2[~mask]))


def masked_norm(x, mask):
    """l2 norm of ``x`` restricted to ``mask``."""
    x = np.asarray(x, dtype=np.float64)
    return float(np.sqrt(np.sum(x[np.asarray(mask, dtype=bool)] ** 2)))


# -- plain-text spec files ------------------------------------------------
#
#   size = 64
#   background = 100
#   rect = ROW COL HEIGHT WIDTH LEVEL                      (repeatable)
#   texture = ROW COL HEIGHT WIDTH AMPLITUDE FREQ [ORIENT] (repeatable)
#   noise = 20                                             (optional)

def parse_synthetic_spec(text):
    size, background, noise = 64, 100.0, None
    rects, textures = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidInputError(f"synthetic spec line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        fields = shlex.split(value)
        try:
            if key == "size":
                size = int(value)
            elif key == "background":
                background = float(value)
            elif key == "noise":
                noise = float(value)
            elif key == "rect":
                if len(fields) != 5:
                    raise ValueError("rect needs 5 fields")
                r, c, h, w = (int(x) for x in fields[:4])
                rects.append(Rect(r, c, h, w, float(fields[4])))
            elif key == "texture":
                if len(fields) not in (6, 7):
                    raise ValueError("texture needs 6 or 7 fields")
                r, c, h, w = (int(x) for x in fields[:4])
                textures.append(TexturePatch(r, c, h, w, *(float(x) for x in fields[4:])))
            else:
                raise ValueError(f"unknown key '{key}'")
        except ValueError as exc:
            raise InvalidInputError(f"synthetic spec line {lineno}: {exc}") from None
    return SyntheticSpec(size, background, tuple(rects), tuple(textures), noise)


def format_synthetic_spec(spec):
    lines = [f"size = {spec.size}", f"background = {spec.background:g}"]
    lines += [f"rect = {r.row} {r.col} {r.height} {r.width} {r.level:g}" for r in spec.rects]
    lines += [f"texture = {t.row} {t.col} {t.height} {t.width} {t.amplitude:g} "
              f"{t.frequency:g} {t.orientation:g}" for t in spec.textures]
    if spec.noise is not None:
        lines.append(f"noise = {spec.noise:g}")
    return "\n".join(lines) + "\n"
