"""Competitor differentiation methods: plain FFT, Roache polynomial
periodization, Bernoulli-polynomial (Eckhoff) reconstruction, and Prony
exponential fitting.

All methods work on the standard interval [-pi, pi]; other grids are
handled through the affine map (jumps rescaled per derivative order, chain
factor applied to the output).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from gfs.grid import SampledSignal, standard_chain_factor, to_standard_interval
from gfs.jumps import JumpData, to_standard_jumps
from gfs.linalg import polynomial_roots, solve_least_squares, vandermonde_matrix
from gfs.spectral import spectral_derivative_periodic

PI = math.pi
TWO_PI = 2.0 * math.pi

BERNOULLI_MAX_ORDER = 32


class IllConditioned(ArithmeticError):
    """A fit became numerically meaningless (expected for Prony at large M)."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


def fft_derivative(u: SampledSignal, order=1):
    """Raw FFT spectral derivative; Gibbs oscillations for non-periodic input."""
    dp = spectral_derivative_periodic(u.values, order)
    factor = standard_chain_factor(u.grid) ** order
    return SampledSignal(u.grid, dp * factor)


# ---------------------------------------------------------------------------
# Bernoulli polynomials and the Eckhoff singular basis


_bernoulli_cache = {}
_bernoulli_lock = threading.Lock()


def _bernoulli_numbers(n_max):
    # B_0 .. B_{n_max} via the standard recurrence, exact rationals.
    B = [Fraction(1)]
    for m in range(1, n_max + 1):
        s = sum(Fraction(comb(m + 1, k)) * B[k] for k in range(m))
        B.append(-s / (m + 1))
    return B


def bernoulli_coefficients(m):
    """Ascending coefficients of the Bernoulli polynomial B_m(x)."""
    if not 1 <= m <= BERNOULLI_MAX_ORDER + 1:
        raise ValueError(f"order {m} outside 1..{BERNOULLI_MAX_ORDER + 1}")
    with _bernoulli_lock:
        cached = _bernoulli_cache.get(m)
        if cached is None:
            nums = _bernoulli_numbers(m)
            # B_m(x) = sum_k C(m, k) B_k x^(m-k) -> ascending power j = m-k
            cached = tuple(float(Fraction(comb(m, m - j)) * nums[m - j])
                           for j in range(m + 1))
            _bernoulli_cache[m] = cached
    return cached


def bernoulli_polynomial(m, x):
    """B_m(x), typically evaluated for x in [0, 1]."""
    coeffs = bernoulli_coefficients(m)
    return float(np.polyval(coeffs[::-1], x))


def eckhoff_V(m, x, beta=-PI):
    """Periodic singular basis V_m(x; beta) built from B_{m+1}.

    V_m(x; beta) = -(2 pi)^m / (m+1)! * B_{m+1}(xi / 2 pi) with
    xi = mod(x - beta, 2 pi). The seam sits at x = beta: evaluation at the
    right end of the period uses xi = 2 pi (interior limit), so both
    endpoint nodes of [beta, beta + 2 pi] get their one-sided values.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    xi = math.fmod(x - beta, TWO_PI)
    if xi < 0.0:
        xi += TWO_PI
    if xi == 0.0 and x > beta:
        xi = TWO_PI
    return -(TWO_PI ** m) / factorial(m + 1) * bernoulli_polynomial(m + 1, xi / TWO_PI)


def eckhoff_singular_part(jumps: JumpData, x):
    """s(x) = sum_m A^m V_m(x; -pi) with A^m = -J_m."""
    return sum(-jumps.J[m] * eckhoff_V(m, x) for m in range(jumps.q))


def eckhoff_singular_derivative(jumps: JumpData, x):
    """s'(x) using d/dx V_m = V_{m-1}; V_0' is the constant -1/(2 pi)."""
    total = -jumps.J[0] * (-1.0 / TWO_PI)
    for m in range(1, jumps.q):
        total += -jumps.J[m] * eckhoff_V(m - 1, x)
    return total


def eckhoff_derivative(u: SampledSignal, jumps: JumpData):
    """Derivative via Bernoulli-polynomial jump subtraction plus FFT.

    The singular part carries all endpoint jumps up to order q-1; the
    remainder is differentiated spectrally and the singular derivative is
    added back analytically.
    """
    grid = u.grid
    sj = to_standard_jumps(jumps, grid)
    xs = to_standard_interval(grid.nodes(), grid)
    s = np.array([eckhoff_singular_part(sj, x) for x in xs])
    smooth_deriv = spectral_derivative_periodic(u.values - s, 1)
    s_deriv = np.array([eckhoff_singular_derivative(sj, x) for x in xs])
    return SampledSignal(grid, (smooth_deriv + s_deriv) * standard_chain_factor(grid))


# ---------------------------------------------------------------------------
# Roache polynomial periodization


def roache_coefficients(jumps: JumpData, q):
    """Coefficients a_0..a_q of the jump-matching polynomial g(x).

    Descending recursion: the top coefficient comes from J_{q-1} alone,
    then each a_k absorbs the contribution of the higher terms to the
    (k-1)-th jump. a_0 is free and set to zero.
    """
    q = int(q)
    if q < 1:
        raise ValueError("q must be >= 1")
    if jumps.q < q:
        raise ValueError(f"need {q} jumps, have {jumps.q}")
    a = np.zeros(q + 1)
    a[q] = jumps.J[q - 1] / (TWO_PI * factorial(q))
    for k in range(q - 1, 0, -1):
        acc = 0.0
        for m in range(k + 1, q + 1):
            span = PI ** (m - k + 1) - (-PI) ** (m - k + 1)
            acc += a[m] * factorial(m) / (factorial(k) * factorial(m - k + 1)) * span
        a[k] = (jumps.J[k - 1] / factorial(k) - acc) / TWO_PI
    return a


def polynomial_jump(coeffs, m):
    """g^(m)(pi) - g^(m)(-pi) for g given by ascending coefficients."""
    total = 0.0
    for k in range(m, len(coeffs)):
        span = PI ** (k - m) - (-PI) ** (k - m)
        total += coeffs[k] * factorial(k) / factorial(k - m) * span
    return total


def roache_derivative(u: SampledSignal, jumps: JumpData, q):
    """Derivative via polynomial reduction-to-periodicity plus FFT."""
    grid = u.grid
    sj = to_standard_jumps(jumps, grid)
    a = roache_coefficients(sj, q)
    xs = to_standard_interval(grid.nodes(), grid)
    g = np.polyval(a[::-1], xs)
    da = a[1:] * np.arange(1, a.size)
    g_deriv = np.polyval(da[::-1], xs)
    smooth_deriv = spectral_derivative_periodic(u.values - g, 1)
    return SampledSignal(grid, (smooth_deriv + g_deriv) * standard_chain_factor(grid))


# ---------------------------------------------------------------------------
# Prony exponential fitting


# A mode contributing more than this factor above the data scale anywhere
# in the domain is numerical garbage, not signal: huge growth rates paired
# with tiny amplitudes arise from rounding noise in the Hankel solve and
# swamp the evaluation with cancellation error.
PRONY_GROWTH_LIMIT = 1e6


@dataclass(frozen=True)
class PronyFit:
    """Exponential-sum model h(x) ~ sum_j c_j exp(phi_j (x - x0))."""

    c: np.ndarray
    phi: np.ndarray
    dx: float
    x0: float

    @property
    def M(self):
        return self.c.size


def prony_fit(u: SampledSignal, M):
    """Fit an M-term exponential sum to the first 2M samples.

    Solves the Hankel system for the Prony polynomial, roots it for the
    nodes z_j, takes principal logs for the exponents, and solves the
    Vandermonde system for the amplitudes. Raises IllConditioned when the
    numbers stop meaning anything, which is the expected outcome for
    large M on smooth data.
    """
    M = int(M)
    if M < 1:
        raise ValueError("M must be >= 1")
    h = u.values
    if h.size < 2 * M:
        raise ValueError(f"need {2 * M} samples, have {h.size}")
    h = h[:2 * M]
    dx = u.grid.dx

    H = np.array([[h[k + m] for k in range(M)] for m in range(M)], dtype=complex)
    rhs = -h[M:2 * M].astype(complex)
    # Direct solve, not a truncated pseudoinverse: the Hankel is routinely
    # near-singular on smooth data yet the unregularized solution still
    # carries the recoverable modes; truncation destroys them.
    try:
        p = np.linalg.solve(H, rhs)
    except np.linalg.LinAlgError:
        p, _ = solve_least_squares(H, rhs)
    if not np.all(np.isfinite(p)):
        raise IllConditioned("Prony polynomial coefficients are non-finite")
    cond = float(np.linalg.cond(H))

    coeffs = np.concatenate([p, [1.0]])  # ascending: p_0 .. p_{M-1}, p_M = 1
    try:
        z = polynomial_roots(coeffs)
    except ArithmeticError as exc:
        raise IllConditioned(f"Prony polynomial rooting failed: {exc}",
                             condition=cond) from exc
    with np.errstate(divide="ignore", invalid="ignore"):
        phi = np.log(z) / dx
    if not np.all(np.isfinite(phi)):
        raise IllConditioned("Prony exponents are non-finite", condition=cond)

    V = vandermonde_matrix(z)
    c = np.linalg.lstsq(V, h[:M].astype(complex), rcond=None)[0]
    if not np.all(np.isfinite(c)):
        raise IllConditioned("Prony amplitudes are non-finite", condition=cond)

    fit = PronyFit(c=c, phi=phi, dx=dx, x0=float(u.grid.a))
    _check_prony_growth(fit, u.grid.length, h, cond)
    return fit


def _check_prony_growth(fit, length, h, cond):
    """Reject fits whose modes dwarf the data anywhere in the domain."""
    scale = max(1.0, float(np.max(np.abs(h))))
    with np.errstate(over="ignore"):
        peak = np.abs(fit.c) * np.exp(np.maximum(fit.phi.real, 0.0) * length)
    worst = float(np.max(peak))
    if not math.isfinite(worst) or worst > PRONY_GROWTH_LIMIT * scale:
        raise IllConditioned(
            f"Prony mode amplification {worst:.2e} exceeds the data scale",
            condition=cond)


def prony_evaluate(fit: PronyFit, x, order=0):
    """Re[sum c_j phi_j^order exp(phi_j (x - x0))]."""
    e = np.exp(np.outer(fit.phi, np.atleast_1d(x) - fit.x0))
    vals = ((fit.c * fit.phi ** order) @ e).real
    return float(vals[0]) if np.ndim(x) == 0 else vals


def prony_derivative(fit: PronyFit, x):
    """First derivative of the fitted exponential sum at x."""
    if fit.M == 0:
        return 0.0 if np.ndim(x) == 0 else np.zeros(np.shape(x))
    return prony_evaluate(fit, x, order=1)
