"""Experiment runner: derivative-error tables, convergence sweeps, CSV output."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from gfs.baselines import IllConditioned, eckhoff_derivative, fft_derivative, prony_derivative, prony_fit, roache_derivative
from gfs.core import build_aperiodic_model, gfs_decompose, gfs_derivative
from gfs.functions import get_function
from gfs.grid import lp_error_norm, make_grid, sample, to_standard_interval
from gfs.jumps import GridTooSmall, estimate_jumps, fd_differentiate, jumps_from_analytic, to_standard_jumps

PI = math.pi

KNOWN_METHODS = ("gfs", "fft", "fd", "roache", "eckhoff", "prony")


@dataclass(frozen=True)
class ExperimentConfig:
    function: str
    params: dict = field(default_factory=dict)
    methods: tuple = ("gfs",)
    N_list: tuple = (64,)
    n_modes: int = 2
    q: int = 8
    prony_M: str = "N/2"  # "N/2", "Nk", or an integer literal
    jump_source: str = "analytic"  # "analytic" or "fd:<r>"
    fd_order: int = 6
    derivative_order: int = 1
    a: float = -PI
    b: float = PI

    def __post_init__(self):
        for m in self.methods:
            if m not in KNOWN_METHODS:
                raise ValueError(f"unknown method {m!r}; choices {KNOWN_METHODS}")
        if self.jump_source != "analytic" and not self.jump_source.startswith("fd:"):
            raise ValueError("jump_source must be 'analytic' or 'fd:<r>'")
        if self.derivative_order != 1:
            raise ValueError("only first derivatives are benchmarked")

    @property
    def fd_jump_order(self):
        if self.jump_source.startswith("fd:"):
            return int(self.jump_source.split(":", 1)[1])
        return None


@dataclass(frozen=True)
class ExperimentRow:
    method: str
    function: str
    N: int
    param: str  # n for gfs, q for roache/eckhoff, M for prony, r for fd
    jump_source: str
    e_inf: float
    e_2: float
    wall_ms: float
    note: str = ""


@dataclass(frozen=True)
class ExperimentReport:
    rows: tuple

    def filter(self, method=None, N=None):
        out = [r for r in self.rows
               if (method is None or r.method == method)
               and (N is None or r.N == N)]
        return ExperimentReport(rows=tuple(out))


def _gfs_jumps(cfg, f, u, q):
    r = cfg.fd_jump_order
    if r is None:
        return jumps_from_analytic(f, q)
    return estimate_jumps(u, q, r)


def _method_param(cfg, method, N):
    if method == "gfs":
        return str(cfg.n_modes)
    if method in ("roache", "eckhoff"):
        return str(cfg.q)
    if method == "prony":
        return str(resolve_prony_M(cfg, N))
    if method == "fd":
        return str(cfg.fd_order)
    return ""


def resolve_prony_M(cfg, N):
    rule = str(cfg.prony_M)
    if rule == "N/2":
        return N // 2
    if rule == "Nk":
        return int(cfg.params.get("n_modes", 30))
    return int(rule)


def _run_single(cfg, f, method, N):
    grid = make_grid(cfg.a, cfg.b, N)
    u = sample(f, grid)
    exact = np.array([f.derivative(x, 1) for x in grid.nodes()])

    t0 = time.perf_counter()
    if method == "gfs":
        jumps = _gfs_jumps(cfg, f, u, 4 * cfg.n_modes)
        approx = gfs_derivative(gfs_decompose(u, cfg.n_modes, jumps), 1).values
    elif method == "fft":
        approx = fft_derivative(u).values
    elif method == "fd":
        approx = fd_differentiate(u, cfg.fd_order).values
    elif method == "roache":
        approx = roache_derivative(u, jumps_from_analytic(f, cfg.q), cfg.q).values
    elif method == "eckhoff":
        approx = eckhoff_derivative(u, jumps_from_analytic(f, cfg.q)).values
    elif method == "prony":
        fit = prony_fit(u, resolve_prony_M(cfg, N))
        approx = prony_derivative(fit, grid.nodes())
    else:  # pragma: no cover - guarded in config
        raise ValueError(method)
    wall_ms = (time.perf_counter() - t0) * 1e3

    err = approx - exact
    return (lp_error_norm(err, math.inf, grid.dx),
            lp_error_norm(err, 2, grid.dx), wall_ms)


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Compute first-derivative errors for every (method, N) pair.

    Method-level numerical failures (Prony ill-conditioning, grids too
    small for the requested stencils) become rows with infinite error and
    a reason tag rather than aborting the run.
    """
    f = get_function(cfg.function, **cfg.params)
    rows = []
    for method in sorted(cfg.methods):
        for N in sorted(cfg.N_list):
            jump_src = cfg.jump_source if method == "gfs" else (
                "analytic" if method in ("roache", "eckhoff") else "")
            try:
                e_inf, e_2, wall_ms = _run_single(cfg, f, method, N)
                note = ""
            except (IllConditioned, GridTooSmall) as exc:
                e_inf = e_2 = math.inf
                wall_ms = 0.0
                note = type(exc).__name__
            rows.append(ExperimentRow(
                method=method, function=cfg.function, N=N,
                param=_method_param(cfg, method, N), jump_source=jump_src,
                e_inf=e_inf, e_2=e_2, wall_ms=wall_ms, note=note))
    return ExperimentReport(rows=tuple(rows))


def _fmt(v):
    if math.isinf(v):
        return "inf"
    return f"{v:.5e}"


def emit_csv(report: ExperimentReport, path):
    """Write the report; floats in scientific notation, 6 significant digits."""
    lines = ["method,function,N,param,jump_source,e_inf,e_2,wall_ms"]
    for r in report.rows:
        lines.append(",".join([
            r.method, r.function, str(r.N), r.param, r.jump_source,
            _fmt(r.e_inf), _fmt(r.e_2), _fmt(r.wall_ms)]))
    try:
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc


def loglog_slope(Ns, errs):
    """Least-squares log-log slope over the longest decreasing segment.

    Returns NaN when no two consecutive finite, decreasing points exist.
    """
    pts = [(n, e) for n, e in sorted(zip(Ns, errs)) if np.isfinite(e) and e > 0]
    best = []
    run = [pts[0]] if pts else []
    for prev, cur in zip(pts, pts[1:]):
        if cur[1] < prev[1]:
            run.append(cur)
        else:
            run = [cur]
        if len(run) > len(best):
            best = list(run)
    if len(best) < 2:
        return float("nan")
    logN = np.log([p[0] for p in best])
    logE = np.log([p[1] for p in best])
    return float(np.polyfit(logN, logE, 1)[0])


def convergence_sweep(cfg: ExperimentConfig):
    """Run the experiment over cfg.N_list and fit per-method error slopes."""
    if len(cfg.N_list) < 3:
        raise ValueError("convergence sweep needs at least 3 grid sizes")
    report = run_experiment(cfg)
    slopes = {}
    for method in cfg.methods:
        rows = [r for r in report.rows if r.method == method]
        slopes[method] = loglog_slope([r.N for r in rows],
                                      [r.e_inf for r in rows])
    return report, slopes


@dataclass(frozen=True)
class LeakageReport:
    N: int
    recovered_sine_modes: tuple  # (wavenumber, amplitude) pairs
    raw_spectrum: np.ndarray  # |DFT| of the raw samples, bins 0..N/2
    periodic_spectrum: np.ndarray  # |DFT| of the periodic remainder


def leakage_demo(N, k1=5.3, k2=12.4, a1=0.7, a2=1.0):
    """Two-non-integer-mode demo: recovered modes plus DFT magnitude spectra."""
    if N < 64:
        raise ValueError("N must be >= 64")
    f = get_function("leakage_demo", k1=k1, k2=k2, a1=a1, a2=a2)
    grid = make_grid(-PI, PI, N)
    u = sample(f, grid)
    jumps = jumps_from_analytic(f, 8)
    dec = gfs_decompose(u, 2, jumps)

    def half_spectrum(values):
        spec = np.abs(np.fft.rfft(values[:-1])) / (N / 2.0)
        return spec

    modes = tuple(sorted(((k, a) for k, a in dec.aperiodic.sine_modes),
                         key=lambda ka: abs(ka[0])))
    return LeakageReport(
        N=N,
        recovered_sine_modes=modes,
        raw_spectrum=half_spectrum(u.values),
        periodic_spectrum=half_spectrum(dec.periodic),
    )
