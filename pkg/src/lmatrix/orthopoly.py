"""Orthogonal polynomials of the Jacobi matrix J_nu.

The monic family obeys

    p_{n+1}(x) = (x - 2 (n+nu)^2) p_n(x) - (n+nu-1)^2 (n+nu)^2 p_{n-1}(x),

with p_0 = 1 and p_1 = x - nu (nu + 1).  The rescaled family
``P_n = (-1)^n p_n / ((nu)_n (nu+1)_n)`` solves the eigenvalue equation
with P_0 = 1 and is orthonormal for the spectral measure of J_nu.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, QuadratureError
from .hilbert import _density_array, check_nu, chi, phi_n, spectral_measure
from .loperator import JacobiCoefficients, ParameterSequence, monic_op
from .quadrature import integrate_exp_tail
from .specfun import pochhammer

__all__ = [
    "MAX_GRAM_DEGREE",
    "Normalization",
    "OrthoPolyEval",
    "P_n",
    "P_n_via_phi",
    "cdh_weight",
    "evaluate",
    "gram_entry",
    "gram_matrix",
    "gram_target",
    "p_n",
]

MAX_GRAM_DEGREE = 12


class Normalization(str, enum.Enum):
    MONIC = "monic"
    ORTHONORMAL = "orthonormal"


@dataclass(frozen=True)
class OrthoPolyEval:
    degree: int
    value: complex
    normalization: Normalization


def p_n(x, nu, n: int) -> complex:
    """Monic p_n(x; nu) = det(x - J_n), carried with a separate binary exponent."""
    nu = check_nu(nu)
    if n < 0:
        raise DomainError("degree must be >= 0")
    return monic_op(JacobiCoefficients(ParameterSequence.hilbert(nu)), x, n)


def _norm_const(nu: float, n: int) -> float:
    return (-1.0) ** n / (pochhammer(nu, n) * pochhammer(nu + 1.0, n))


def P_n(x, nu, n: int) -> complex:
    """Orthonormal P_n(x; nu) = (-1)^n p_n(x; nu) / ((nu)_n (nu+1)_n)."""
    nu = check_nu(nu)
    return _norm_const(nu, n) * p_n(x, nu, n)


def evaluate(x, nu, n: int, normalization: Normalization | str = Normalization.MONIC) -> OrthoPolyEval:
    norm = Normalization(normalization)
    fn = p_n if norm is Normalization.MONIC else P_n
    return OrthoPolyEval(n, fn(x, nu, n), norm)


def P_n_via_phi(z, nu, n: int) -> complex:
    """P_n(1/4 - z^2; nu) from the two solutions phi(+-z).

    ``pi / sin(2 pi z) [chi(z) phi_n(-z) - chi(-z) phi_n(z)]``.  The
    half-integer points, where this is a removable 0/0, are refused.
    """
    nu = check_nu(nu)
    z = complex(z)
    two_z = 2.0 * z
    if abs(two_z.imag) < 1e-12 and abs(two_z.real - round(two_z.real)) < 1e-12:
        raise DomainError("P_n_via_phi is undefined at half-integer z")
    num = chi(z, nu) * phi_n(-z, nu, n) - chi(-z, nu) * phi_n(z, nu, n)
    return math.pi * num / np.sin(math.pi * two_z)


def cdh_weight(t):
    """Continuous dual Hahn weight 2 pi t (1/4 + t^2) sinh(pi t) / cosh^2(pi t)."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("cdh_weight needs t >= 0")
    e = np.exp(-2.0 * np.pi * t)
    # sinh/cosh^2 = tanh * sech, with sech = 2 e^{-pi t} / (1 + e^{-2 pi t})
    sech = 2.0 * np.exp(-np.pi * t) / (1.0 + e)
    out = 2.0 * np.pi * t * (0.25 + t * t) * np.tanh(np.pi * t) * sech
    return float(out) if out.ndim == 0 else out


def _monic_table(x: np.ndarray, nu: float, k: int) -> np.ndarray:
    """p_0 .. p_k at every point of x; shape (len(x), k + 1)."""
    out = np.empty(x.shape + (k + 1,))
    out[..., 0] = 1.0
    if k >= 1:
        out[..., 1] = x - nu * (nu + 1.0)
    for n in range(1, k):
        out[..., n + 1] = (x - 2.0 * (n + nu) ** 2) * out[..., n] - ((n + nu - 1.0) * (n + nu)) ** 2 * out[..., n - 1]
    return out


def gram_target(nu, n: int) -> float:
    """Diagonal value (nu)_n^2 (nu+1)_n^2 of the monic Gram matrix."""
    nu = check_nu(nu)
    return (pochhammer(nu, n) * pochhammer(nu + 1.0, n)) ** 2


def gram_matrix(nu, max_degree: int, quad_tol: float = 1e-10, normalized: bool = False,
                x_max: float | None = None) -> np.ndarray:
    """Gram matrix of p_0 .. p_max_degree against the spectral measure of J_nu.

    Absolutely continuous part by adaptive quadrature in ``t`` (spectral
    point ``1/4 + t^2``), plus the atoms from the zeros of chi.  With
    ``normalized=True`` the orthonormal P_n are used, so the expected value
    is the identity.

    Raises
    ------
    QuadratureError
        If the estimated quadrature error exceeds ``quad_tol`` relative to
        the entry scale.
    """
    nu = check_nu(nu)
    if not 0 <= max_degree <= MAX_GRAM_DEGREE:
        raise DomainError(f"degree must lie in [0, {MAX_GRAM_DEGREE}]")
    k = max_degree
    scale = np.array([_norm_const(nu, n) for n in range(k + 1)]) if normalized else np.ones(k + 1)
    measure = spectral_measure(nu, x_max)

    def integrand(t):
        t = np.atleast_1d(t)
        table = _monic_table(0.25 + t * t, nu, k) * scale
        w = _density_array(t, nu) * 2.0 * t
        return np.einsum("i,ij,ik->ijk", w, table, table)

    ac, err = integrate_exp_tail(integrand, 4 * k + 4 * nu - 1, tol=quad_tol)
    gram = np.asarray(ac, dtype=float)
    for x, mass in measure.atoms:
        row = _monic_table(np.array([x]), nu, k)[0] * scale
        gram = gram + mass * np.outer(row, row)
    ref = np.sqrt(np.outer(np.diag(np.abs(gram)), np.diag(np.abs(gram))))
    if err > quad_tol * max(1.0, float(ref.max())):
        raise QuadratureError(f"Gram quadrature error {err:.3g} exceeds {quad_tol:g}")
    return gram


def gram_entry(nu, m: int, n: int, quad_tol: float = 1e-10) -> float:
    """Entry (m, n) of the monic Gram matrix; expected (nu)_n^2 (nu+1)_n^2 delta_mn."""
    if m < 0 or n < 0:
        raise DomainError("degrees must be >= 0")
    return float(gram_matrix(nu, max(m, n), quad_tol)[m, n])
