#!/usr/bin/env python3
"""Reproduce the headline derivative-error tables.

Runs every benchmark function through the GFS differentiator and the
baseline methods at a range of grid sizes, then writes one CSV per
function into results/ (created next to this script's parent).

Usage:
    python3 scripts/run_error_tables.py [--out-dir results]
"""

from __future__ import annotations

import argparse
import pathlib
import sys

from gfs.bench import ExperimentConfig, emit_csv, run_experiment

CASES = [
    ("modulated_sine", {}, 2),
    ("gaussian", {}, 3),
    ("log_fn", {}, 3),
    ("multimode", {}, 4),
    ("monomial", {"m": 1}, 1),
    ("monomial", {"m": 3}, 3),
]

METHODS = ("gfs", "fft", "fd", "roache", "eckhoff")
SIZES = (32, 64, 128, 256)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results")
    args = parser.parse_args(argv)

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    for name, params, n_modes in CASES:
        config = ExperimentConfig(
            function=name,
            params=params,
            methods=METHODS,
            N_list=SIZES,
            n_modes=n_modes,
            q=4 * n_modes,
        )
        report = run_experiment(config)
        tag = "_".join([name] + [f"{k}{v}" for k, v in sorted(params.items())])
        path = out_dir / f"errors_{tag}.csv"
        emit_csv(report, str(path))
        print(f"wrote {path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
