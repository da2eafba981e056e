"""One-sided finite-difference stencils and endpoint jump estimation.

Stencil weights are solved in exact rational arithmetic: the moment matrix
is a Vandermonde in the node offsets and is hopeless in floating point for
widths beyond ~15, while the exact solution is rational with small integer
structure. Solved weights are cached per (derivative, offsets) key.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from gfs.grid import SampledSignal

# Analytic jumps that are exactly zero are replaced by this value so the
# Hankel systems stay formally nonzero; FD-estimated jumps carry their own
# truncation error and are never regularized.
ZERO_JUMP_REGULARIZATION = 1e-15


class GridTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class StencilWeights:
    d: int
    weights: tuple  # Fractions, one per stencil node
    side: str  # "forward" or "backward"

    @property
    def width(self):
        return len(self.weights)

    def as_floats(self):
        return np.array([float(w) for w in self.weights])


_weights_cache = {}
_cache_lock = threading.Lock()


def stencil_weights_at_offsets(d, offsets):
    """Exact weights a_m with sum_m a_m * s_m^n / n! = delta(n, d), n = 0..M.

    ``offsets`` are integer node offsets s_m relative to the evaluation
    point; the approximation is u^(d)(x) ~ dx^-d * sum a_m u(x + s_m dx).
    """
    offsets = tuple(int(s) for s in offsets)
    if len(set(offsets)) != len(offsets):
        raise ValueError("stencil offsets must be distinct")
    if len(offsets) <= d:
        raise ValueError("stencil width must exceed derivative order")
    key = (int(d), offsets)
    with _cache_lock:
        cached = _weights_cache.get(key)
    if cached is not None:
        return cached

    M = len(offsets) - 1
    A = [[Fraction(s) ** n / factorial(n) for s in offsets] for n in range(M + 1)]
    rhs = [Fraction(1) if n == d else Fraction(0) for n in range(M + 1)]
    weights = _solve_rational(A, rhs)

    with _cache_lock:
        _weights_cache[key] = weights
    return weights


def _solve_rational(A, b):
    """Gaussian elimination with partial pivoting over Fractions."""
    n = len(b)
    A = [row[:] for row in A]
    b = b[:]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(A[r][col]))
        if A[pivot][col] == 0:
            raise ValueError("singular moment system")
        A[col], A[pivot] = A[pivot], A[col]
        b[col], b[pivot] = b[pivot], b[col]
        for r in range(col + 1, n):
            if A[r][col] == 0:
                continue
            f = A[r][col] / A[col][col]
            for c in range(col, n):
                A[r][c] -= f * A[col][c]
            b[r] -= f * b[col]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = b[r] - sum(A[r][c] * x[c] for c in range(r + 1, n))
        x[r] = acc / A[r][r]
    return tuple(x)


def fd_weights(d, width, side="forward"):
    """One-sided stencil of the given width for the d-th derivative.

    Forward uses offsets 0..width-1 (left boundary); backward uses
    0..-(width-1) (right boundary). Formal accuracy is width - d.
    """
    d = int(d)
    width = int(width)
    if width <= d:
        raise ValueError(f"width {width} must exceed derivative order {d}")
    if side == "forward":
        offsets = range(width)
    elif side == "backward":
        offsets = range(0, -width, -1)
    else:
        raise ValueError(f"side must be 'forward' or 'backward', got {side!r}")
    return StencilWeights(d=d, weights=stencil_weights_at_offsets(d, offsets), side=side)


@dataclass(frozen=True)
class JumpData:
    """Endpoint derivative jumps J_m = u^(m)(b) - u^(m)(a), m = 0..q-1."""

    J: np.ndarray
    source: str  # "analytic" or "fd:<r>"

    def __post_init__(self):
        J = np.asarray(self.J, dtype=float)
        object.__setattr__(self, "J", J)
        if J.ndim != 1 or J.size < 1:
            raise ValueError("J must be a nonempty vector")
        if not np.all(np.isfinite(J)):
            raise ValueError("jumps must be finite")

    @property
    def q(self):
        return self.J.size


def jumps_from_analytic(f, q):
    """Exact jumps from the catalog's closed-form derivatives.

    Zero jumps are replaced by 1e-15 to keep the downstream Hankel systems
    formally nonzero. A jump also counts as zero when it is pure floating
    point cancellation between two large endpoint derivatives (a periodic
    function evaluated near the seam never cancels exactly in doubles).
    """
    J = np.empty(q)
    for m in range(q):
        jm = f.analytic_jump(m)
        scale = max(abs(f.derivative(-math.pi, m)), abs(f.derivative(math.pi, m)))
        if jm == 0.0 or abs(jm) <= 1e-12 * scale:
            jm = ZERO_JUMP_REGULARIZATION
        J[m] = jm
    return JumpData(J=J, source="analytic")


def estimate_jumps(u: SampledSignal, q, r):
    """FD-estimated jumps from samples, uniform stencil width q-1+r.

    J_0 comes straight from the endpoint samples; derivative orders
    1..q-1 use the forward stencil at the left boundary and the backward
    stencil at the right boundary, each scaled by dx^-m.
    """
    q = int(q)
    r = int(r)
    if q < 1:
        raise ValueError("q must be >= 1")
    grid = u.grid
    W = q - 1 + r
    if q > 1 and grid.N + 1 < 2 * W:
        raise GridTooSmall(
            f"grid has {grid.N + 1} nodes, need {2 * W} for stencil width {W}")
    J = np.empty(q)
    J[0] = u.values[-1] - u.values[0]
    dx = grid.dx
    for m in range(1, q):
        fw = fd_weights(m, W, "forward").as_floats()
        bw = fd_weights(m, W, "backward").as_floats()
        left = fw @ u.values[:W] / dx ** m
        right = bw @ u.values[-1:-W - 1:-1] / dx ** m
        J[m] = right - left
    return JumpData(J=J, source=f"fd:{r}")


def to_standard_jumps(jumps: JumpData, grid):
    """Rescale jumps to derivatives w.r.t. the standard variable on [-pi, pi].

    The affine map x -> x* multiplies the m-th derivative by
    (2 pi / (b - a))^m, so jumps divide by that factor.
    """
    from gfs.grid import standard_chain_factor

    factor = standard_chain_factor(grid)
    if factor == 1.0:
        return jumps
    J = jumps.J / factor ** np.arange(jumps.q)
    return JumpData(J=J, source=jumps.source)


def fd_differentiate(u: SampledSignal, r=6):
    """First derivative by order-r central stencils, offset near boundaries.

    All stencils have width r+1; node i < r/2 uses the stencil anchored at
    the left boundary (offsets -i..r-i), mirrored on the right, so order r
    holds at every node.
    """
    r = int(r)
    if r % 2 != 0 or r > 8 or r < 2:
        raise ValueError("r must be even and in 2..8")
    grid = u.grid
    N = grid.N
    if N + 1 < r + 1:
        raise GridTooSmall(f"grid has {N + 1} nodes, need {r + 1}")
    half = r // 2
    dx = grid.dx
    out = np.empty(N + 1)

    central = np.array([float(w) for w in
                        stencil_weights_at_offsets(1, range(-half, half + 1))])
    interior = slice(half, N - half + 1)
    windows = np.lib.stride_tricks.sliding_window_view(u.values, r + 1)
    out[interior] = windows @ central / dx

    for i in range(half):
        w_left = np.array([float(c) for c in
                           stencil_weights_at_offsets(1, range(-i, r + 1 - i))])
        out[i] = w_left @ u.values[:r + 1] / dx
        w_right = np.array([float(c) for c in
                            stencil_weights_at_offsets(1, range(-(r - i), i + 1))])
        out[N - i] = w_right @ u.values[N - r:] / dx
    return SampledSignal(grid, out)
