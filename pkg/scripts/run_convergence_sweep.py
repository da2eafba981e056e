#!/usr/bin/env python3
"""Convergence-rate sweep for the non-periodic test functions.

Doubles the grid from N=32 up to N=256 and reports the fitted log-log
slope of the max-norm derivative error for each method. Spectral methods
with correct jump information should show slopes far steeper than the
finite-difference order; plain FFT differentiation should stagnate.

Usage:
    python3 scripts/run_convergence_sweep.py [--function log_fn] [--out sweep.csv]
"""

from __future__ import annotations

import argparse
import sys

from gfs.bench import ExperimentConfig, convergence_sweep, emit_csv

DEFAULT_METHODS = ("gfs", "fft", "fd", "eckhoff")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--function", default="gaussian")
    parser.add_argument("--n-modes", type=int, default=3)
    parser.add_argument("--out", default=None)
    args = parser.parse_args(argv)

    config = ExperimentConfig(
        function=args.function,
        methods=DEFAULT_METHODS,
        N_list=(32, 64, 128, 256),
        n_modes=args.n_modes,
        q=4 * args.n_modes,
    )
    report, slopes = convergence_sweep(config)
    for method in sorted(slopes):
        print(f"slope {method}: {slopes[method]:.2f}")
    if args.out is not None:
        emit_csv(report, args.out)
        print(f"wrote {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
