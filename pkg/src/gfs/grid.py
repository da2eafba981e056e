"""Uniform grids on [a, b], sampled signals, and discrete L^p error norms."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class BadSample(ValueError):
    """A test function produced a non-finite value at some grid node."""

    def __init__(self, message, node_index):
        super().__init__(message)
        self.node_index = node_index


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with N intervals and N+1 nodes including both endpoints."""

    a: float
    b: float
    N: int

    def __post_init__(self):
        if self.b <= self.a:
            raise ValueError("require b > a")
        if self.N < 8:
            raise ValueError("require N >= 8")

    @property
    def dx(self):
        return (self.b - self.a) / self.N

    def nodes(self):
        return self.a + self.dx * np.arange(self.N + 1)

    @property
    def length(self):
        return self.b - self.a


@dataclass(frozen=True)
class SampledSignal:
    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.shape != (self.grid.N + 1,):
            raise ValueError(
                f"expected {self.grid.N + 1} values, got {values.shape}")
        if not np.all(np.isfinite(values)):
            idx = int(np.flatnonzero(~np.isfinite(values))[0])
            raise BadSample(f"non-finite sample at node {idx}", idx)


def make_grid(a, b, N):
    return GridSpec(float(a), float(b), int(N))


def to_standard_interval(x, grid):
    """Affine map of [a, b] onto [-pi, pi].

    Derivatives transform with the chain factor 2*pi/(b-a), applied by
    callers when converting derivative values back to the original interval.
    """
    x0 = 0.5 * (grid.a + grid.b)
    return 2.0 * math.pi * (np.asarray(x, dtype=float) - x0) / grid.length


def standard_chain_factor(grid):
    """d(x*)/dx for the map of [a, b] onto [-pi, pi]."""
    return 2.0 * math.pi / grid.length


def sample(f, grid):
    """Sample a catalog function or plain callable at all N+1 grid nodes."""
    fn = f.value if hasattr(f, "value") else f
    values = np.asarray([fn(x) for x in grid.nodes()], dtype=float)
    return SampledSignal(grid, values)


def lp_error_norm(e, p, dx):
    """Discrete norm: max|e_i| for p=inf, (dx * sum|e_i|^p)^(1/p) otherwise."""
    e = np.asarray(e, dtype=float).ravel()
    if e.size == 0:
        raise ValueError("empty error vector")
    if p == math.inf:
        return float(np.max(np.abs(e)))
    if p <= 0:
        raise ValueError("p must be positive or inf")
    return float((dx * np.sum(np.abs(e) ** p)) ** (1.0 / p))
