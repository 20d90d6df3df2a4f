"""Command-line front end.

    uvwdecomp --model jg --input noisy.pgm --out result --lambda 50 --mu1 1000 --mu2 10 --window 7
    uvwdecomp --model ac --synthetic scene.txt --out result --lambda 20 --mu 1000 --sigma 20 --eta 0.2

Writes ``<out>_u.pgm``, ``<out>_v.pgm``, ``<out>_w.pgm`` (three-part models),
``<out>_nu.pgm`` (jg, jg2) and ``<out>_report.txt``.
"""

import argparse
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .errors import (InvalidInputError, InvalidParameterError, NumericalFailureError,
                     PGMFormatError, UnsupportedFormatError)
from .grid import l2_distance
from .models import ModelParams, decompose_ac, decompose_jg, decompose_jg2, partition_for
from .pgm import read_image, write_image
from .projection import ProjectorParams, decompose_uv
from .synth import add_gaussian_noise, make_synthetic, parse_synthetic_spec, snr_db

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CODES = {
    InvalidInputError: 3,
    InvalidParameterError: 4,
    NumericalFailureError: 5,
    OSError: 6,
    PGMFormatError: 7,
    UnsupportedFormatError: 8,
}

REQUIRED = {
    "uv": ("lambda", "mu"),
    "jg": ("lambda", "mu1", "mu2", "window"),
    "ac": ("lambda", "mu", "sigma", "eta"),
    "jg2": ("lambda", "mu", "sigma", "eta", "window"),
}

# flag name -> (ModelParams/ProjectorParams field, converter)
NUMERIC_FLAGS = {
    "lambda": ("lam", float),
    "mu": ("mu", float),
    "mu1": ("mu1", float),
    "mu2": ("mu2", float),
    "sigma": ("sigma", float),
    "eta": ("eta", float),
    "delta": ("delta", float),
    "kappa": ("kappa", float),
    "eps": ("eps", float),
    "max-iter": ("n_step", int),
    "window": ("window", int),
    "levels": ("levels", int),
    "tau": ("tau", float),
    "proj-iter": ("max_iter", int),
    "proj-tol": ("tol", float),
    "seed": ("seed", int),
}
PROJECTOR_FIELDS = {"tau", "max_iter", "tol"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    model: str
    out: str
    input: str | None = None
    synthetic: str | None = None
    raw: dict = field(default_factory=dict)
    seed: int = 0

    def value(self, flag):
        name, conv = NUMERIC_FLAGS[flag]
        text = self.raw[flag]
        try:
            value = conv(text)
        except ValueError:
            raise UsageError(f"--{flag}: cannot parse {text!r} as {conv.__name__}") from None
        if isinstance(value, float) and not math.isfinite(value):
            raise UsageError(f"--{flag}: value must be finite, got {text!r}")
        return value

    def params(self):
        model_kw, proj_kw = {}, {}
        for flag in self.raw:
            name = NUMERIC_FLAGS[flag][0]
            if name == "seed":
                continue
            (proj_kw if name in PROJECTOR_FIELDS else model_kw)[name] = self.value(flag)
        return ModelParams(projector=ProjectorParams(**proj_kw), **model_kw)


def build_parser():
    p = argparse.ArgumentParser(
        prog="uvwdecomp",
        description="Decompose a grayscale image into structure, texture and noise.")
    p.add_argument("--model", required=True, choices=sorted(REQUIRED))
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="8-bit PGM (P5 or P2) to decompose")
    src.add_argument("--synthetic", help="synthetic scene description to generate instead")
    p.add_argument("--out", required=True, help="output prefix")
    for flag in NUMERIC_FLAGS:
        p.add_argument(f"--{flag}", dest=flag.replace("-", "_"), metavar="X")
    return p


def parse_config(argv):
    args = build_parser().parse_args(argv)
    raw = {flag: getattr(args, flag.replace("-", "_")) for flag in NUMERIC_FLAGS}
    raw = {k: v for k, v in raw.items() if v is not None}
    for flag in REQUIRED[args.model]:
        if flag not in raw and not (flag in ("sigma", "eta") and "delta" in raw):
            raise UsageError(f"--{flag} is required for model {args.model}")
    config = RunConfig(model=args.model, out=args.out, input=args.input,
                       synthetic=args.synthetic, raw=raw)
    if "seed" in raw:
        config.seed = config.value("seed")
    return config


def _load(config, params):
    """Return ``(f, clean_or_None)``."""
    if config.input is not None:
        return read_image(config.input), None
    with open(config.synthetic, encoding="utf-8") as fh:
        spec = parse_synthetic_spec(fh.read())
    clean, _ = make_synthetic(spec)
    sigma = spec.noise if spec.noise is not None else (
        params.sigma if "sigma" in config.raw else 0.0)
    return add_gaussian_noise(clean, sigma, config.seed), clean


def _pad(f, levels):
    step = 2 ** levels
    pm, pn = (-f.shape[0]) % step, (-f.shape[1]) % step
    return np.pad(f, ((0, pm), (0, pn)), mode="edge")


def _run_model(config, params, f):
    """Return ``(components, nu, residual, iterations, converged, final_change, estimate)``."""
    if config.model == "uv":
        res = decompose_uv(f, params.lam, params.mu, params.projector,
                           outer_max=params.n_step, outer_tol=params.eps)
        final = res.trace[-1] if res.trace else 0.0
        return ({"u": res.u, "v": res.v}, None, f - (res.u + res.v), res.iterations,
                res.converged, final, res.u + res.v)
    if config.model == "ac":
        dec = decompose_ac(f, params)
        nu = None
    else:
        texture_mu = params.mu1 if config.model == "jg" else params.mu
        nu1, nu2 = partition_for(f, params, mu=texture_mu)
        solver = decompose_jg if config.model == "jg" else decompose_jg2
        dec = solver(f, params, nu1, nu2)
        nu = nu1
    return ({"u": dec.u, "v": dec.v, "w": dec.w}, nu, dec.residual, dec.iterations,
            dec.converged, dec.trace[-1], dec.denoised())


def _fmt(x):
    return repr(float(x)) if isinstance(x, (float, np.floating)) else str(x)


def run(config):
    params = config.params()
    f, clean = _load(config, params)
    shape = f.shape
    work = _pad(f, params.levels) if config.model in ("ac", "jg2") else f
    comps, nu, residual, iterations, converged, final_change, estimate = \
        _run_model(config, params, work)
    crop = (slice(0, shape[0]), slice(0, shape[1]))

    prefix = config.out
    for name, img in comps.items():
        write_image(f"{prefix}_{name}.pgm", img[crop], "clamp" if name == "u" else "center")
    if nu is not None:
        write_image(f"{prefix}_nu.pgm", 255.0 * nu[crop], "clamp")
    if clean is not None:
        write_image(f"{prefix}_f.pgm", f, "clamp")

    lines = [
        f"model = {config.model}",
        f"source = {config.input if config.input is not None else config.synthetic}",
        f"size = {shape[1]}x{shape[0]}",
        f"padded_size = {work.shape[1]}x{work.shape[0]}",
    ]
    lines += [f"param.{flag} = {text}" for flag, text in config.raw.items()]
    if config.model in ("ac", "jg2"):
        lines.append(f"delta = {_fmt(params.resolve_delta(work.size))}")
    lines += [
        f"iterations = {iterations}",
        f"converged = {str(converged).lower()}",
        f"final_change = {_fmt(final_change)}",
        f"residual_norm = {_fmt(np.sqrt(np.sum(residual[crop] ** 2)))}",
    ]
    if clean is not None:
        lines += [
            f"snr_noisy_db = {_fmt(snr_db(clean, f))}",
            f"snr_estimate_db = {_fmt(snr_db(clean, estimate[crop]))}",
            f"l2_noisy = {_fmt(l2_distance(clean, f))}",
            f"l2_estimate = {_fmt(l2_distance(clean, estimate[crop]))}",
        ]
    report = "\n".join(lines) + "\n"
    with open(f"{prefix}_report.txt", "w", encoding="utf-8") as fh:
        fh.write(report)
    return report


def exit_code_for(exc):
    for cls in type(exc).__mro__:
        if cls in EXIT_CODES:
            return EXIT_CODES[cls]
    return 1


def main(argv=None):
    try:
        config = parse_config(argv)
        run(config)
    except SystemExit as exc:  # argparse usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        print(f"uvwdecomp: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidInputError, InvalidParameterError, NumericalFailureError, OSError) as exc:
        print(f"uvwdecomp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
