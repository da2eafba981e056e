"""Dense complex linear algebra and root-finding primitives.

Everything here operates on tiny systems (at most ~16x16), so plain
LAPACK-backed numpy routines are used throughout. The pseudoinverse solve
mirrors the rank-revealing behavior needed by the jump Hankel systems,
which are legitimately rank-deficient for simple inputs.
"""

from __future__ import annotations

import numpy as np

# Relative singular-value cutoff per matrix dimension; double-precision
# SVD noise floor for the well-scaled matrices used here.
DEFAULT_RANK_TOL_FACTOR = 1e-13

# Two nodes closer than this (relative) make the Vandermonde solve
# meaningless in double precision.
DUPLICATE_NODE_TOL = 1e-8

# Residual bound for polynomial_roots, relative to max coefficient.
ROOT_RESIDUAL_TOL = 1e-8


class DegenerateNodes(ValueError):
    """Raised when Vandermonde nodes coincide within tolerance."""

    def __init__(self, message, n_distinct=None):
        super().__init__(message)
        self.n_distinct = n_distinct


def solve_least_squares(A, b, rank_tol=0.0):
    """Minimum-norm least-squares solution of A x = b via SVD.

    Singular values below ``rank_tol * sigma_max`` are treated as zero.
    ``rank_tol=0`` selects the default ``max(rows, cols) * 1e-13``.

    Returns ``(x, rank)`` where rank is the numerical rank used.
    """
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    b = np.asarray(b, dtype=complex).ravel()
    if A.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: A is {A.shape}, b has length {b.shape[0]}")
    if rank_tol < 0:
        raise ValueError("rank_tol must be nonnegative")
    if rank_tol == 0.0:
        rank_tol = max(A.shape) * DEFAULT_RANK_TOL_FACTOR

    U, s, Vh = np.linalg.svd(A, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros(A.shape[1], dtype=complex), 0
    keep = s >= rank_tol * s[0]
    rank = int(np.count_nonzero(keep))
    if rank == 0:
        return np.zeros(A.shape[1], dtype=complex), 0
    inv_s = np.zeros_like(s)
    inv_s[keep] = 1.0 / s[keep]
    x = Vh.conj().T @ (inv_s * (U.conj().T @ b))
    return x, rank


def polynomial_roots(coeffs):
    """All roots (with multiplicity) of c_0 + c_1 x + ... + c_n x^n.

    Uses the companion-matrix eigenvalue method (numpy.roots convention is
    highest-first, so the input is reversed). Degree-0 input is rejected.
    """
    c = np.asarray(coeffs, dtype=complex).ravel()
    if c.size < 2:
        raise ValueError("polynomial degree must be >= 1")
    if c[-1] == 0:
        raise ValueError("leading coefficient must be nonzero")
    roots = np.roots(c[::-1])
    scale = np.max(np.abs(c))
    for r in roots:
        residual = abs(np.polyval(c[::-1], r))
        bound = ROOT_RESIDUAL_TOL * scale * max(1.0, abs(r)) ** (c.size - 1)
        if residual > bound:
            raise ArithmeticError(
                f"root residual {residual:.3e} exceeds bound {bound:.3e}")
    return roots


def vandermonde_matrix(nodes):
    """Transposed Vandermonde matrix: row i holds nodes**i."""
    nodes = np.asarray(nodes, dtype=complex).ravel()
    n = nodes.size
    return np.vander(nodes, n, increasing=True).T


def solve_transposed_vandermonde(nodes, rhs):
    """Solve V w = rhs where V[i, j] = nodes[j]**i.

    Signals DegenerateNodes when two nodes coincide within relative 1e-8;
    the caller is expected to shrink the mode count. Falls back to the
    pseudoinverse if the direct solve fails.
    """
    nodes = np.asarray(nodes, dtype=complex).ravel()
    rhs = np.asarray(rhs, dtype=complex).ravel()
    if nodes.size != rhs.size:
        raise ValueError("nodes and rhs must have equal length")
    n_distinct = count_distinct(nodes)
    if n_distinct < nodes.size:
        raise DegenerateNodes(
            f"only {n_distinct} of {nodes.size} nodes are distinct",
            n_distinct=n_distinct)
    V = vandermonde_matrix(nodes)
    try:
        return np.linalg.solve(V, rhs)
    except np.linalg.LinAlgError:
        x, _ = solve_least_squares(V, rhs)
        return x


def count_distinct(values, tol=DUPLICATE_NODE_TOL):
    """Number of values that remain after merging near-duplicates."""
    values = np.asarray(values, dtype=complex).ravel()
    kept = []
    for v in values:
        if all(abs(v - u) / max(1.0, abs(v)) >= tol for u in kept):
            kept.append(v)
    return len(kept)


def complex_principal_sqrt(z):
    """Principal complex square root, Re(w) >= 0.

    Branch: sqrt(|z|) * exp(i*theta/2) with theta in [-pi, pi]; values on
    the negative real axis map to +i*sqrt(|z|).
    """
    z = complex(z)
    w = np.sqrt(complex(z))
    # numpy already returns the principal branch; nudge exact-negative-real
    # results onto the +i axis for deterministic behavior.
    if w.real < 0.0 or (w.real == 0.0 and w.imag < 0.0):
        w = -w
    return w
