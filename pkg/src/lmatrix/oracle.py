"""Brute-force cross-checks.

Sturm-sequence bisection for symmetric tridiagonal matrices, dense
determinants, finite-section spectra of the Hilbert L-matrix and its Jacobi
inverse, and the discrete-Laplacian fixture with Chebyshev eigenvectors.
None of these routines use the analytic formulas they are meant to verify.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from .errors import ConvergenceError, DomainError, SingularError
from .loperator import (
    ParameterSequence,
    TridiagonalSection,
    dense_section,
    tridiagonal_section,
)

__all__ = [
    "EigenRequest",
    "brute_det",
    "count_below",
    "finite_section_norm_L",
    "finite_section_spectrum_J",
    "hook_matvec",
    "neumann_fixture_residual",
    "tridiag_eigs",
]


@dataclass(frozen=True)
class EigenRequest:
    """Which eigenvalues to compute.

    ``which`` is ``"smallest"`` or ``"largest"`` (uses ``k``) or
    ``"interval"`` (uses ``lo`` and ``hi``, half-open ``(lo, hi]``).
    """

    which: str = "smallest"
    k: int = 1
    lo: float = -math.inf
    hi: float = math.inf

    def __post_init__(self):
        if self.which not in ("smallest", "largest", "interval"):
            raise DomainError(f"unknown eigenvalue request {self.which!r}")
        if self.which != "interval" and self.k < 1:
            raise DomainError("k must be >= 1")
        if self.which == "interval" and not (
            math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo <= self.hi
        ):
            raise DomainError("interval bounds must be finite and ordered")


def _diagonals(t: TridiagonalSection):
    d = np.asarray(t.diag, dtype=float)
    e = np.asarray(t.offdiag, dtype=float)
    return d, e


def count_below(t: TridiagonalSection, mu):
    """Number of eigenvalues strictly below ``mu`` (Sylvester inertia).

    ``mu`` may be a scalar or an array of shifts; the LDL^T pivots are run for
    all shifts at once.
    """
    d, e = _diagonals(t)
    shifts = np.atleast_1d(np.asarray(mu, dtype=float))
    e2 = e * e
    tiny = np.finfo(float).tiny ** 0.5
    counts = np.zeros(shifts.shape, dtype=np.int64)
    piv = d[0] - shifts
    for i in range(len(d)):
        if i:
            piv = (d[i] - shifts) - e2[i - 1] / piv
        piv = np.where(piv == 0.0, -tiny, piv)
        counts += piv < 0
    return int(counts[0]) if np.ndim(mu) == 0 else counts


def _gershgorin(d, e):
    r = np.zeros_like(d)
    r[:-1] += np.abs(e)
    r[1:] += np.abs(e)
    return float(np.min(d - r)), float(np.max(d + r))


def _bisect_indices(t: TridiagonalSection, idx: np.ndarray, lo: float, hi: float, atol: float):
    """Eigenvalues number ``idx`` (0-based, ascending) inside [lo, hi].

    Multisection: every pass evaluates Sturm counts at 31 interior points of
    each bracket at once, shrinking it 32-fold for the cost of one sweep.
    """
    m = 32
    frac = np.arange(1, m) / m
    lo_arr = np.full(idx.shape, lo, dtype=float)
    hi_arr = np.full(idx.shape, hi, dtype=float)
    eps = np.finfo(float).eps
    for _ in range(60):
        width = hi_arr - lo_arr
        if np.all(width <= atol + 4 * eps * np.maximum(np.abs(lo_arr), np.abs(hi_arr))):
            break
        grid = lo_arr[:, None] + width[:, None] * frac[None, :]
        c = count_below(t, grid.ravel()).reshape(grid.shape)
        # eigenvalue idx sits at or above a grid point when count <= idx
        above = c <= idx[:, None]
        n_above = above.sum(axis=1)
        rows = np.arange(len(idx))
        new_lo = np.where(n_above > 0, grid[rows, np.maximum(n_above - 1, 0)], lo_arr)
        new_hi = np.where(n_above < m - 1, grid[rows, np.minimum(n_above, m - 2)], hi_arr)
        lo_arr, hi_arr = new_lo, new_hi
    return 0.5 * (lo_arr + hi_arr)


def tridiag_eigs(t: TridiagonalSection, which: EigenRequest = EigenRequest(), atol: float = 0.0) -> list[float]:
    """Selected eigenvalues of a symmetric tridiagonal matrix, ascending.

    Bisection on Sturm counts from Gershgorin brackets.  With the default
    ``atol = 0`` each eigenvalue is refined to a few ulps, well inside
    ``1e-12 * max(1, |t|_inf)``.
    """
    d, e = _diagonals(t)
    n = len(d)
    if n == 1:
        val = float(d[0])
        if which.which == "interval" and not (which.lo < val <= which.hi):
            return []
        return [val]
    lo, hi = _gershgorin(d, e)
    pad = 1e-12 * max(1.0, abs(lo), abs(hi))
    lo, hi = lo - pad, hi + pad
    if which.which == "smallest":
        idx = np.arange(min(which.k, n))
    elif which.which == "largest":
        idx = np.arange(n - min(which.k, n), n)
    else:
        # half-open (lo, hi]
        c_lo, c_hi = count_below(
            t, np.array([np.nextafter(which.lo, math.inf), np.nextafter(which.hi, math.inf)])
        )
        idx = np.arange(c_lo, c_hi)
        if len(idx) == 0:
            return []
        lo, hi = max(lo, which.lo), min(hi, which.hi)
    return [float(v) for v in _bisect_indices(t, idx, lo, hi, atol)]


def finite_section_spectrum_J(nu: float, n: int, k: int = 1):
    """The ``k`` smallest and ``k`` largest eigenvalues of the n x n section of J_nu."""
    if n < 2:
        raise DomainError("section dimension must be >= 2")
    t = tridiagonal_section(ParameterSequence.hilbert(nu), n)
    small = tridiag_eigs(t, EigenRequest("smallest", k))
    large = tridiag_eigs(t, EigenRequest("largest", k))
    return small, large


def hook_matvec(a_vals: np.ndarray, x: np.ndarray) -> np.ndarray:
    """L_n x in O(n): (L x)_m = a_m sum_{k<=m} x_k + sum_{k>m} a_k x_k."""
    prefix = np.cumsum(x)
    weighted = a_vals * x
    suffix = np.cumsum(weighted[::-1])[::-1]
    suffix = np.append(suffix[1:], 0.0)
    return a_vals * prefix + suffix


def finite_section_norm_L(nu: float, n: int, tol: float = 1e-10, maxiter: int | None = None) -> float:
    """Spectral norm of the n x n section of the Hilbert L-matrix.

    The section is symmetric, so the norm is its largest eigenvalue in
    modulus.  Lanczos iteration (ARPACK) runs on the O(n) hook product; the
    dense matrix is never formed.
    """
    if n < 2:
        raise DomainError("section dimension must be >= 2")
    a_vals = ParameterSequence.hilbert(nu).terms(n)
    if n <= 64:
        return float(np.max(np.abs(np.linalg.eigvalsh(dense_section(ParameterSequence.hilbert(nu), n).entries))))
    op = LinearOperator((n, n), matvec=lambda x: hook_matvec(a_vals, np.ravel(x)), dtype=float)
    v0 = np.ones(n) / math.sqrt(n)
    try:
        vals = eigsh(op, k=1, which="LM", tol=tol, v0=v0, maxiter=maxiter or 20 * n,
                     return_eigenvectors=False)
    except ArpackNoConvergence as exc:
        raise ConvergenceError(f"Lanczos did not converge for nu={nu}, n={n}") from exc
    return float(abs(vals[0]))


def brute_det(a: ParameterSequence, z, n: int) -> complex:
    """det(I - z L_n) from an LU factorization of the dense section."""
    if not 1 <= n <= 500:
        raise DomainError("brute_det supports 1 <= n <= 500")
    m = np.eye(n, dtype=complex) - complex(z) * dense_section(a, n).entries
    sign, logdet = np.linalg.slogdet(m)
    if sign == 0:
        return 0j
    out = complex(sign * np.exp(logdet))
    if not np.isfinite(out):
        raise SingularError("dense determinant is not finite")
    return out


def neumann_fixture_residual(lam: float, n: int) -> float:
    """Residual of the Chebyshev vector on the discrete Laplacian rows.

    ``psi_k = U_k(1 + lam/2) - U_{k-1}(1 + lam/2)``, tested against
    ``psi_{i-1} - 2 psi_i + psi_{i+1} = lam psi_i`` on rows ``1 .. n-2``.
    """
    if not -4.0 <= lam <= 0.0:
        raise DomainError("lambda must lie in [-4, 0]")
    if n < 3:
        raise DomainError("n must be >= 3")
    x = 1.0 + 0.5 * lam
    u = np.empty(n + 1)  # u[k] = U_{k-1}, u[0] = U_{-1} = 0
    u[0], u[1] = 0.0, 1.0
    for k in range(2, n + 1):
        u[k] = 2 * x * u[k - 1] - u[k - 2]
    psi = u[1:] - u[:-1]
    i = np.arange(1, n - 1)
    res = psi[i - 1] - 2 * psi[i] + psi[i + 1] - lam * psi[i]
    return float(np.max(np.abs(res)))
