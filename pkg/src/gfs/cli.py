"""Command line front end for the benchmark harness.

Examples:

    gfs-bench --function gaussian --method gfs --method fft --N 64 --N 128 \
        --n-modes 3 --jumps analytic --out gaussian.csv
    gfs-bench --config runs/multimode.cfg
    gfs-bench --function gaussian --method gfs --N 32 --N 64 --N 128 --sweep
    gfs-bench leakage --N 128 --out leakage.csv
"""

from __future__ import annotations

import argparse
import sys

from gfs.bench import ExperimentConfig, convergence_sweep, emit_csv, leakage_demo, run_experiment


def _parse_param(text):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    key, raw = text.split("=", 1)
    for cast in (int, float):
        try:
            return key, cast(raw)
        except ValueError:
            continue
    return key, raw


def _build_parser():
    p = argparse.ArgumentParser(
        prog="gfs-bench",
        description="Spectral-derivative accuracy benchmarks.")
    p.add_argument("mode", nargs="?", default="bench", choices=["bench", "leakage"],
                   help="bench (default) runs error tables; leakage runs the "
                        "two-mode spectrum demo")
    p.add_argument("--config", help="flat key=value config file; command line "
                                    "flags override its entries")
    p.add_argument("--function", help="catalog function name")
    p.add_argument("--param", action="append", default=[], metavar="K=V",
                   help="function parameter override (repeatable)")
    p.add_argument("--method", action="append", default=[],
                   help="method to run: gfs, fft, fd, roache, eckhoff, prony "
                        "(repeatable)")
    p.add_argument("--N", action="append", default=[], type=int,
                   help="grid size (repeatable)")
    p.add_argument("--n-modes", type=int, default=2,
                   help="non-harmonic modes per family for gfs")
    p.add_argument("--q", type=int, default=8,
                   help="jump count for roache/eckhoff")
    p.add_argument("--prony-M", default="N/2",
                   help="Prony exponential count: integer, N/2, or Nk")
    p.add_argument("--jumps", default="analytic",
                   help="jump source for gfs: analytic or fd:<r>")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--sweep", action="store_true",
                   help="also report log-log convergence slopes (needs >= 3 N)")
    return p


def read_config_file(path):
    """Flat key=value file, one pair per line, # comments allowed.

    List-valued keys (method, N, param) take comma-separated values.
    """
    entries = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            entries[key] = val
    return entries


_LIST_KEYS = {"method", "N", "param"}


def apply_config(args, entries):
    """Fill argparse defaults from a config file without clobbering flags."""
    for key, val in entries.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise ValueError(f"unknown config key {key!r}")
        if key in _LIST_KEYS:
            parts = [s.strip() for s in val.split(",") if s.strip()]
            if not getattr(args, attr):
                setattr(args, attr, [int(s) for s in parts] if key == "N" else parts)
        elif getattr(args, attr) in (None, _build_parser().get_default(attr)):
            cast = int if attr in ("n_modes", "q") else str
            setattr(args, attr, cast(val))
    return args


def _config_from_args(args):
    params = dict(_parse_param(s) for s in args.param)
    return ExperimentConfig(
        function=args.function,
        params=params,
        methods=tuple(args.method) if args.method else ("gfs",),
        N_list=tuple(args.N) if args.N else (64,),
        n_modes=args.n_modes,
        q=args.q,
        prony_M=args.prony_M,
        jump_source=args.jumps,
    )


def _emit(report, out):
    if out:
        emit_csv(report, out)
    else:
        emit_csv(report, "/dev/stdout")


def _run_leakage(args):
    N = args.N[0] if args.N else 128
    rep = leakage_demo(N)
    lines = ["quantity,index,value"]
    for k, a in rep.recovered_sine_modes:
        lines.append(f"mode_wavenumber,,{k.real:.8f}")
        lines.append(f"mode_amplitude,,{a.real:.8f}")
    for i, v in enumerate(rep.raw_spectrum):
        lines.append(f"raw_spectrum,{i},{v:.5e}")
    for i, v in enumerate(rep.periodic_spectrum):
        lines.append(f"periodic_spectrum,{i},{v:.5e}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.config:
            apply_config(args, read_config_file(args.config))
        if args.mode == "leakage":
            _run_leakage(args)
            return 0
        if not args.function:
            raise ValueError("--function is required (flag or config file)")
        cfg = _config_from_args(args)
        if args.sweep:
            report, slopes = convergence_sweep(cfg)
            _emit(report, args.out)
            for method in sorted(slopes):
                sys.stderr.write(f"slope {method}: {slopes[method]:.3f}\n")
        else:
            _emit(run_experiment(cfg), args.out)
    except (OSError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
