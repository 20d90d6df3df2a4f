"""Sweep the fidelity weight for one model and print the denoising error per value."""

import argparse

import numpy as np

from uvwdecomp.synth import add_gaussian_noise, default_spec, make_synthetic
from uvwdecomp.grid import l2_distance

from run_synthetic_comparison import PARAMS, run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--model", choices=sorted(PARAMS), default="jg")
    ap.add_argument("--values", type=float, nargs="+", default=[10, 20, 50, 100, 200])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    clean, _ = make_synthetic(default_spec())
    f = add_gaussian_noise(clean, 20.0, args.seed)
    print(f"noisy l2 {l2_distance(clean, f):.1f}")
    for lam in args.values:
        dec = run(args.model, f, PARAMS[args.model].with_(lam=lam))
        print(f"lambda {lam:8g}  l2 {l2_distance(clean, dec.denoised()):8.1f}  "
              f"iters {dec.iterations:3d}  residual {np.linalg.norm(dec.residual):8.1f}")


if __name__ == "__main__":
    main()
