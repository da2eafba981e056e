"""Aperiodic/periodic decomposition via non-harmonic sine and cosine modes.

Pipeline per mode family (sine <- even jumps, cosine <- odd jumps):

1. Solve the Hankel system of jumps for the elementary symmetric
   polynomials of the squared wavenumbers (pseudoinverse; the matrix is
   legitimately rank-deficient for simple inputs, in which case the family
   shrinks to the numerical rank).
2. Root the characteristic polynomial; each root is a squared wavenumber,
   mapped to a mode by the principal complex square root.
3. Solve the transposed Vandermonde system in (i k)^2 for the scaled
   amplitudes, then unscale through 2 sin(k pi) (sine) or
   -2 k sin(k pi) (cosine).

Modes within floating-point distance of an integer carry no jump
information (sin(k pi) ~ 0) and are dropped; their content is
representable by the periodic FFT part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from gfs.grid import GridSpec, SampledSignal, to_standard_interval, standard_chain_factor
from gfs.jumps import JumpData, to_standard_jumps
from gfs.linalg import (DegenerateNodes, complex_principal_sqrt, count_distinct,
                        polynomial_roots, solve_least_squares,
                        solve_transposed_vandermonde)
from gfs.spectral import spectral_derivative_periodic

PI = math.pi

# Below this, sin(k*pi) makes the amplitude map singular (k is numerically
# an integer): drop the mode.
NEAR_HARMONIC_TOL = 1e-12

# A family whose jumps are all at the regularization floor is periodic to
# machine precision; produce no modes at all.
EMPTY_FAMILY_TOL = 1e-13

# Allowed imaginary leakage when evaluating the (formally real) model.
REALNESS_TOL = 1e-10


class RealnessViolation(ArithmeticError):
    """The aperiodic model produced a non-negligible imaginary part."""


@dataclass(frozen=True)
class AperiodicModel:
    """Complex sine/cosine modes (k, amplitude) representing u_a(x)."""

    sine_modes: tuple = ()
    cosine_modes: tuple = ()

    @property
    def n_s(self):
        return len(self.sine_modes)

    @property
    def n_c(self):
        return len(self.cosine_modes)

    @property
    def empty(self):
        return not self.sine_modes and not self.cosine_modes


def solve_elementary_symmetric(jumps: JumpData, parity, n):
    """Elementary symmetric polynomials of the squared wavenumbers.

    ``parity`` selects the jump subsequence: "even" (J_0, J_2, ...) feeds
    the sine family, "odd" (J_1, J_3, ...) the cosine family. Returns the
    stacked vector (e_n, ..., e_1) and the numerical rank of the Hankel
    matrix.
    """
    J = _family_jumps(jumps, parity)
    if J.size < 2 * n:
        raise ValueError(f"need {2 * n} {parity} jumps, have {J.size}")
    # The raw Hankel entries grow like k_max^(2m); without equilibration a
    # handful of large wavenumbers swamps the singular values of the small
    # ones and the rank test misfires. Symmetric diagonal scaling by a
    # geometric estimate of that growth keeps the condition number tame and
    # leaves genuine rank deficiency (fewer actual modes than n) visible.
    c = max(float(np.max(np.abs(J[:2 * n]))), 1.0) ** (1.0 / (2 * n - 1)) if n > 1 else 1.0
    powers = c ** -np.arange(2 * n, dtype=float)
    H = np.array([[J[i + j] * powers[i + j] for j in range(n)]
                  for i in range(n)], dtype=complex)
    rhs = (J[n:2 * n] * powers[n:2 * n]).astype(complex)
    x, rank = solve_least_squares(H, -rhs)
    e = x * c ** (n - np.arange(n, dtype=float))
    return e, rank


def _family_jumps(jumps, parity):
    if parity == "even":
        return jumps.J[0::2]
    if parity == "odd":
        return jumps.J[1::2]
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


def modes_from_symmetric(e, n):
    """Wavenumbers from the characteristic polynomial of the symmetric polys.

    ``e`` is the stacked vector (e_n, ..., e_1). The polynomial is
    lambda^n - e_1 lambda^(n-1) + ... + (-1)^n e_n; each root lambda_j is a
    squared wavenumber, mapped through the principal square root.
    """
    e = np.asarray(e, dtype=complex).ravel()
    if e.size != n:
        raise ValueError("length of e must equal n")
    # Ascending coefficients: coefficient of lambda^j is (-1)^(n-j) e_(n-j).
    coeffs = np.empty(n + 1, dtype=complex)
    coeffs[n] = 1.0
    for j in range(n):
        coeffs[j] = (-1.0) ** (n - j) * e[j]
    lams = polynomial_roots(coeffs)
    n_distinct = count_distinct(lams)
    if n_distinct < n:
        raise DegenerateNodes(
            f"characteristic roots collapse to {n_distinct} distinct values",
            n_distinct=n_distinct)
    return np.array([complex_principal_sqrt(lam) for lam in lams])


def solve_mode_amplitudes(modes, jumps: JumpData, parity):
    """Amplitudes from the transposed Vandermonde system in (i k)^2.

    Sine family: w_j = 2 u_j sin(k_j pi); cosine family:
    w_j = -2 u_j k_j sin(k_j pi). The returned vector contains the
    unscaled amplitudes u_j (NaN marks modes dropped by the
    near-harmonic or zero-wavenumber guards).
    """
    modes = np.asarray(modes, dtype=complex).ravel()
    n = modes.size
    J = _family_jumps(jumps, parity)
    if J.size < n:
        raise ValueError("not enough jumps for the amplitude system")
    nodes = -(modes ** 2)  # (i k)^2
    w = solve_transposed_vandermonde(nodes, J[:n].astype(complex))
    amps = np.empty(n, dtype=complex)
    for j, (k, wj) in enumerate(zip(modes, w)):
        s = np.sin(k * PI)
        if abs(s) < NEAR_HARMONIC_TOL:
            amps[j] = np.nan  # near-harmonic: no jump content, drop
        elif parity == "even":
            amps[j] = wj / (2.0 * s)
        else:
            if abs(k) < NEAR_HARMONIC_TOL:
                amps[j] = np.nan  # k=0 cosine is a constant, periodic
            else:
                amps[j] = -wj / (2.0 * k * s)
    return amps


def _pair_conjugates(modes, amps):
    """Symmetrize conjugate mode pairs so the model is exactly real.

    Roots of a real-coefficient polynomial come as reals or conjugate
    pairs; floating-point asymmetry in the amplitude solve otherwise leaks
    imaginary parts into u_a.
    """
    modes = modes.copy()
    amps = amps.copy()
    used = np.zeros(modes.size, dtype=bool)
    for i in range(modes.size):
        if used[i] or abs(modes[i].imag) < 1e-12 or abs(modes[i].real) < 1e-12:
            continue
        lam_i = modes[i] ** 2
        for j in range(i + 1, modes.size):
            if used[j]:
                continue
            lam_j = modes[j] ** 2
            if abs(lam_j - np.conj(lam_i)) <= 1e-8 * max(1.0, abs(lam_i)):
                modes[j] = np.conj(modes[i])
                a = 0.5 * (amps[i] + np.conj(amps[j]))
                amps[i] = a
                amps[j] = np.conj(a)
                used[i] = used[j] = True
                break
    return modes, amps


def _build_family(jumps, parity, n):
    """Run symmetric-polys -> roots -> amplitudes with rank shrinking.

    A rank-deficient Hankel solve keeps the full n and relies on the
    minimum-norm solution: consistent deficient systems (fewer true modes
    than n, or regularized zero jumps) then yield n distinct roots whose
    spurious members carry negligible amplitude. The family only shrinks
    when the characteristic roots actually collapse, which is the one case
    the amplitude Vandermonde cannot absorb.
    """
    J = _family_jumps(jumps, parity)
    if np.max(np.abs(J[:2 * n])) <= EMPTY_FAMILY_TOL:
        return ()
    while n >= 1:
        e, rank = solve_elementary_symmetric(jumps, parity, n)
        if rank == 0:
            return ()
        try:
            modes = modes_from_symmetric(e, n)
            amps = solve_mode_amplitudes(modes, jumps, parity)
        except DegenerateNodes as exc:
            if exc.n_distinct is None or exc.n_distinct >= n:
                raise
            n = exc.n_distinct
            continue
        keep = ~np.isnan(amps)
        modes, amps = _pair_conjugates(modes[keep], amps[keep])
        return tuple(zip(modes, amps))
    return ()


def build_aperiodic_model(jumps: JumpData, n):
    """Fit sine and cosine mode families to 4n endpoint jumps.

    The families shrink independently when their Hankel matrices are
    rank-deficient; the worst case is an empty (pure-periodic) model.
    """
    n = int(n)
    if jumps.q < 4 * n:
        raise ValueError(f"need q = 4n = {4 * n} jumps, have {jumps.q}")
    sine = _build_family(jumps, "even", n)
    cosine = _build_family(jumps, "odd", n)
    return AperiodicModel(sine_modes=sine, cosine_modes=cosine)


def evaluate_aperiodic(model: AperiodicModel, x, order=0):
    """u_a or its analytic derivative at x (scalar or array) on [-pi, pi].

    Derivatives use the phase shift sin(kx + m pi/2); the result's
    imaginary part must stay below the realness tolerance, otherwise the
    conjugate pairing is broken and RealnessViolation is raised.
    """
    x = np.asarray(x, dtype=float)
    total = np.zeros(x.shape, dtype=complex)
    shift = order * PI / 2.0
    for k, a in model.sine_modes:
        total += a * k ** order * np.sin(k * x + shift)
    for k, a in model.cosine_modes:
        total += a * k ** order * np.cos(k * x + shift)
    scale = 1.0 + np.max(np.abs(total.real)) if total.size else 1.0
    max_imag = np.max(np.abs(total.imag)) if total.size else 0.0
    if max_imag > REALNESS_TOL * scale:
        raise RealnessViolation(
            f"imaginary residual {max_imag:.3e} exceeds {REALNESS_TOL * scale:.3e}")
    out = total.real
    return float(out) if out.ndim == 0 else out


def model_jump(model: AperiodicModel, order):
    """Endpoint jump of the model's order-th derivative (forward formula)."""
    return evaluate_aperiodic(model, PI, order) - evaluate_aperiodic(model, -PI, order)


@dataclass(frozen=True)
class GFSDecomposition:
    """Sampled signal split into a periodic vector and an aperiodic model.

    The aperiodic model lives on the standard interval [-pi, pi]; grids on
    other intervals are handled through the affine map, with jump values
    rescaled by the chain factor per derivative order.
    """

    grid: GridSpec
    periodic: np.ndarray
    aperiodic: AperiodicModel
    jumps: JumpData


def gfs_decompose(u: SampledSignal, n, jumps: JumpData):
    """Split samples into periodic values and an aperiodic mode model."""
    model = build_aperiodic_model(to_standard_jumps(jumps, u.grid), n)
    xs = to_standard_interval(u.grid.nodes(), u.grid)
    periodic = u.values - evaluate_aperiodic(model, xs)
    return GFSDecomposition(grid=u.grid, periodic=periodic,
                            aperiodic=model, jumps=jumps)


def gfs_derivative(dec: GFSDecomposition, order=1):
    """Derivative of the decomposed signal at all grid nodes.

    Periodic part by FFT (nodes 0..N-1, node N from periodic extension),
    aperiodic part analytically; both in standard coordinates, then the
    chain factor maps back to the original interval.
    """
    order = int(order)
    if order < 1:
        raise ValueError("order must be >= 1")
    grid = dec.grid
    dp = spectral_derivative_periodic(dec.periodic, order)
    xs = to_standard_interval(grid.nodes(), grid)
    da = evaluate_aperiodic(dec.aperiodic, xs, order)
    factor = standard_chain_factor(grid) ** order
    return SampledSignal(grid, (dp + da) * factor)


def gfs_differentiate(u: SampledSignal, n, jumps: JumpData, order=1):
    """Convenience wrapper: decompose and differentiate in one call."""
    return gfs_derivative(gfs_decompose(u, n, jumps), order)
