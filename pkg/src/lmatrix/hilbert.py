"""Spectral analysis of the Hilbert L-matrix with entries 1/(max(m, n) + nu).

Its inverse is the Jacobi matrix J_nu with ``b_n = (n + nu)(n + nu + 1)``.
The solutions ``phi_n(z; nu)`` of the eigenvalue equation with spectral
parameter ``lambda = 1/4 - z**2`` and the characteristic function
``chi(z; nu)`` govern everything else:

* the eigenvalues of J_nu are ``1/4 - x**2`` for the zeros x > 0 of chi,
* the Weyl function is ``phi_0 / chi``, and
* the absolutely continuous density on ``[1/4, inf)`` is
  ``sinh(2 pi t) / (2 pi^2 |chi(i t)|^2)`` at ``1/4 + t**2``.

L_nu = J_nu^{-1} has spectrum ``[0, 4]`` plus the images ``4/(1 - 4x^2)``
of those eigenvalues; in particular ``||L_nu|| = 4`` exactly when
``nu >= nu_0 = 0.349086...``.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, RegionError
from .quadrature import integrate_exp_tail
from .specfun import ZETA3, hyp3f2, hyp3f2_reg, log_gamma, trigamma

__all__ = [
    "ChiForm",
    "PointSpectrumL",
    "RootResult",
    "SpectralMeasure",
    "ZeroList",
    "ac_density",
    "check_nu",
    "chi",
    "chi_dx",
    "find_negative_nu_roots",
    "find_nu0",
    "inf_spec_bounds",
    "norm_asymptotic",
    "nu0_function",
    "operator_norm",
    "phi_n",
    "phi_vector",
    "point_spectrum_L",
    "positive_zeros_chi",
    "rootnu_function",
    "spectral_measure",
    "weyl_m",
    "wronskian",
    "x0",
    "x0_asymptotic",
    "x0_function",
]

NU0_APPROX = 0.349086
ROOT_XTOL = 1e-14


def check_nu(nu) -> float:
    """Validate nu: a finite real number, not 0, -1, -2, ..."""
    nu = float(nu)
    if not math.isfinite(nu):
        raise DomainError("nu must be finite")
    if nu <= 1e-12 and abs(nu - round(nu)) <= 1e-12:
        raise DomainError(f"nu = {nu} is a non-positive integer")
    return nu


class ChiForm(str, enum.Enum):
    GENERAL = "general"
    FORM1 = "form1"
    FORM2 = "form2"
    FORM3 = "form3"
    AUTO = "auto"


@dataclass(frozen=True)
class RootResult:
    """A bracketed real root."""

    location: float
    bracket: tuple[float, float]
    residual: float
    iterations: int


class ZeroList(list):
    """List of :class:`RootResult` with a scan-window flag.

    ``window_incomplete`` is set when the scan may have stopped short of
    further zeros (nu < 0 with a window narrower than sqrt(1/4 - nu)).
    """

    window_incomplete: bool = False


@dataclass(frozen=True)
class SpectralMeasure:
    """Spectral measure of J_nu for the first basis vector.

    ``atoms`` holds ``(position, mass)`` pairs below 1/4; ``density(t)`` is
    dmu/dx at ``x = 1/4 + t**2``.
    """

    nu: float
    atoms: list[tuple[float, float]]
    density: Callable[[float], float] = field(repr=False)

    def integral(self, g=None, tol: float = 1e-10, power: float | None = None):
        """``sum atoms g(x) mass + int g(x) dmu_ac`` with x = 1/4 + t^2.

        ``g`` maps an array of spectral points to values (default 1).
        ``power`` is the growth exponent of ``g(1/4 + t^2)`` in t, used for
        the tail model.
        """
        g = g or (lambda x: np.ones_like(x))
        grow = power if power is not None else 0.0
        atom_part = sum(g(np.array([x]))[0] * m for x, m in self.atoms)

        def integrand(t):
            return g(0.25 + t * t) * _density_array(t, self.nu) * 2.0 * t

        val, _ = integrate_exp_tail(integrand, 4 * self.nu - 1 + grow, tol=tol)
        return atom_part + val

    def total_mass(self, tol: float = 1e-10) -> float:
        return float(np.real(self.integral(tol=tol)))


@dataclass(frozen=True)
class PointSpectrumL:
    """Eigenvalues of L_nu outside [0, 4] and the resulting norm."""

    nu: float
    eigenvalues: list[float]
    norm: float
    window_incomplete: bool = False


def _lg(z) -> complex:
    return log_gamma(complex(z))


def phi_n(z, nu, n: int) -> complex:
    """Solution phi_n(z; nu) of the eigenvalue equation, any integer n.

    Representation by region: the defining series when ``n + nu > 0``, the
    Thomae-transformed series when ``Re z > -3/2``, otherwise the backward
    recurrence from the first index with ``n + nu > 0``.
    """
    nu = check_nu(nu)
    z = complex(z)
    s = n + nu
    if s > 0:
        return hyp3f2_reg(0.5 + z, 0.5 + z, 1.5 + z, 1.0 + 2.0 * z, s + 1.5 + z,
                          log_scale=_lg(s + 1.0))
    if z.real > -1.5:
        return _phi_extended(z, nu, n)
    m = math.floor(-nu) + 1  # first index with m + nu > 0
    hi2, hi1 = phi_n(z, nu, m + 1), phi_n(z, nu, m)
    for k in range(m - 1, n - 1, -1):
        c = (2.0 * (k + 1 + nu) ** 2 - 0.25 + z * z) / ((k + nu) * (k + 1 + nu))
        hi2, hi1 = hi1, c * hi1 - (k + 2 + nu) / (k + nu) * hi2
    return hi1


def _phi_extended(z: complex, nu: float, n: int) -> complex:
    s = n + nu
    scale = _lg(s) + _lg(s + 1.0) - _lg(z + 1.5)
    return hyp3f2_reg(z - 0.5, s, s, s + z + 0.5, s + z + 0.5, log_scale=scale)


def phi_vector(z, nu, n_max: int) -> np.ndarray:
    """phi_0 .. phi_{n_max} at a common z."""
    nu = check_nu(nu)
    out = np.empty(n_max + 1, dtype=complex)
    for k in range(n_max + 1):
        out[k] = phi_n(z, nu, k)
    return out


def _chi_general(z: complex, nu: float) -> complex:
    if z.real > -1.5:
        pre = _lg(nu) + _lg(nu + 1.0) - _lg(z + 1.5)
        first = hyp3f2_reg(z - 0.5, nu - 1.0, nu - 1.0, nu + z - 0.5, nu + z - 0.5, log_scale=pre)
        second = hyp3f2_reg(z - 0.5, nu, nu, nu + z + 0.5, nu + z + 0.5, log_scale=pre)
        return first - nu * (nu - 1.0) * second
    # row 0 of J phi = lambda phi + chi e_0
    return (nu * nu + nu - 0.25 + z * z) * phi_n(z, nu, 0) - nu * (nu + 1.0) * phi_n(z, nu, 1)


def chi(z, nu, form: ChiForm | str = ChiForm.AUTO) -> complex:
    """Characteristic function chi(z; nu), entire in z.

    Parameters
    ----------
    z : complex
    nu : float
        Not a non-positive integer.
    form : ChiForm or str
        ``form1`` needs nu > 0; ``form2`` and ``form3`` need Re z > -1/2;
        ``general`` works everywhere; ``auto`` picks form1 for nu > 0,
        form3 for Re z > -1/2, and general otherwise.

    Raises
    ------
    RegionError
        If an explicit form is requested outside its region of validity.
    """
    nu = check_nu(nu)
    z = complex(z)
    form = ChiForm(form)
    if form is ChiForm.AUTO:
        if nu > 0:
            form = ChiForm.FORM1
        elif z.real > -0.5:
            form = ChiForm.FORM3
        else:
            form = ChiForm.GENERAL
    if form is ChiForm.GENERAL:
        return _chi_general(z, nu)
    if form is ChiForm.FORM1:
        if nu <= 0:
            raise RegionError("chi form1 needs nu > 0")
        return (z + 0.5) * hyp3f2_reg(z - 0.5, z + 0.5, z + 1.5, 2.0 * z + 1.0, z + nu + 0.5,
                                      log_scale=_lg(nu + 1.0))
    if z.real <= -0.5:
        raise RegionError(f"chi {form.value} needs Re z > -1/2")
    pre = _lg(nu) + _lg(nu + 1.0) - _lg(z + 0.5)
    if form is ChiForm.FORM2:
        val = hyp3f2_reg(nu - 1.0, nu + 1.0, z + 0.5, z + nu + 0.5, z + nu + 0.5, log_scale=pre)
    else:
        val = hyp3f2_reg(nu, nu, z + 0.5, z + nu - 0.5, z + nu + 1.5, log_scale=pre)
    return (z + 0.5) * val


def _chi_real(x: float, nu: float) -> float:
    return chi(x, nu).real


def chi_dx(x: float, nu, h: float | None = None) -> float:
    """d/dx chi(x; nu) on the real line: central differences with one Richardson step."""
    nu = check_nu(nu)
    h = h or 1e-5 * max(1.0, abs(x))

    def central(step):
        return (_chi_real(x + step, nu) - _chi_real(x - step, nu)) / (2.0 * step)

    return (4.0 * central(0.5 * h) - central(h)) / 3.0


def wronskian(z, nu, n: int = 0) -> complex:
    """-b_n [phi_{n+1}(z) phi_n(-z) - phi_{n+1}(-z) phi_n(z)]; equals sin(2 pi z)/pi."""
    nu = check_nu(nu)
    if n < 0:
        raise DomainError("wronskian index must be >= 0")
    z = complex(z)
    b = (n + nu) * (n + nu + 1.0)
    return -b * (phi_n(z, nu, n + 1) * phi_n(-z, nu, n) - phi_n(-z, nu, n + 1) * phi_n(z, nu, n))


def weyl_m(lam, nu) -> complex:
    """Weyl function m(lambda) = <e_0, (J_nu - lambda)^{-1} e_0> = phi_0(z)/chi(z).

    ``lambda = 1/4 - z^2`` with Re z > 0, Im z > 0 for Im lambda < 0; the
    upper half-plane follows by conjugation.
    """
    nu = check_nu(nu)
    lam = complex(lam)
    if lam.imag == 0.0:
        raise DomainError("weyl_m needs a non-real spectral parameter")
    if lam.imag > 0:
        return weyl_m(lam.conjugate(), nu).conjugate()
    z = cmath.sqrt(0.25 - lam)
    return phi_n(z, nu, 0) / chi(z, nu)


def _density_array(t, nu: float) -> np.ndarray:
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t.shape)
    for i, ti in enumerate(t):
        out[i] = ac_density(ti, nu) if ti > 0 else 0.0
    return out


def ac_density(t: float, nu) -> float:
    """Absolutely continuous spectral density at ``1/4 + t^2``.

    ``sinh(2 pi t) / (2 pi^2 |chi(i t)|^2)``, evaluated in logarithms so
    large t neither overflows nor underflows prematurely.
    """
    nu = check_nu(nu)
    t = float(t)
    if t <= 0:
        raise DomainError("ac_density needs t > 0")
    log_c = _log_abs_chi_imag(t, nu)
    log_sinh = 2 * math.pi * t + math.log1p(-math.exp(-4 * math.pi * t)) - math.log(2.0)
    return math.exp(log_sinh - 2.0 * log_c - math.log(2.0 * math.pi**2))


def _log_abs_chi_imag(t: float, nu: float) -> float:
    """log |chi(i t; nu)| from the third representation.

    On the imaginary axis its series has no cancellation (form1 loses about
    one digit per two units of t); the known growth exp(3 pi t / 2) is divided
    out through ``log_scale`` so large t cannot overflow.
    """
    z = 1j * t
    shift = 1.5 * math.pi * t
    pre = _lg(nu) + _lg(nu + 1.0) - _lg(z + 0.5) - shift
    val = (z + 0.5) * hyp3f2_reg(nu, nu, z + 0.5, z + nu - 0.5, z + nu + 1.5, log_scale=pre)
    if val == 0:
        raise DomainError(f"chi(i t) vanishes at t = {t}")
    return math.log(abs(val)) + shift


def _brent(f, lo: float, hi: float, flo: float | None = None) -> RootResult:
    loc, info = brentq(f, lo, hi, xtol=ROOT_XTOL, rtol=4 * np.finfo(float).eps,
                       maxiter=200, full_output=True)
    return RootResult(float(loc), (float(lo), float(hi)), float(f(loc)), int(info.iterations))


def nu0_function(nu: float) -> float:
    """3F2(-1/2, 1/2, 3/2; 1, nu + 1/2; 1), whose positive zero is nu_0."""
    return hyp3f2(-0.5, 0.5, 1.5, 1.0, nu + 0.5).real


@lru_cache(maxsize=1)
def find_nu0() -> RootResult:
    """The unique positive zero nu_0 of :func:`nu0_function`, in (0, 1/2)."""
    return _brent(nu0_function, 0.2, 0.5)


def _nu0_value() -> float:
    return find_nu0().location


def x0_function(x: float, nu: float) -> float:
    """3F2(x-1/2, x+1/2, x+3/2; 2x+1, x+nu+1/2; 1); same zeros in x as chi for nu > 0."""
    return hyp3f2(x - 0.5, x + 0.5, x + 1.5, 2.0 * x + 1.0, x + nu + 0.5).real


def x0(nu) -> RootResult:
    """The zero of chi(.; nu) in (0, 1/2) for 0 < nu < nu_0.

    The bracket [0, 1/2] is safe: the function is negative at 0 below
    nu_0 and equals 1 at x = 1/2.
    """
    nu = check_nu(nu)
    if not 0 < nu < _nu0_value():
        raise DomainError(f"x0 needs 0 < nu < nu_0, got {nu}")
    return _brent(lambda x: x0_function(x, nu), 0.0, 0.5)


def _scan_roots(f, grid: np.ndarray) -> list[RootResult]:
    vals = np.array([f(x) for x in grid])
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            roots.append(RootResult(float(grid[i]), (float(grid[i]), float(grid[i])), 0.0, 0))
        elif vals[i] * vals[i + 1] < 0:
            roots.append(_brent(f, float(grid[i]), float(grid[i + 1])))
    return roots


def positive_zeros_chi(nu, x_max: float | None = None, grid: int = 512) -> ZeroList:
    """Zeros of x -> chi(x; nu) on (0, x_max], isolated by sign changes on a grid.

    The default window ``sqrt(1/4 - min(0, nu)) + 1/2`` covers every
    possible eigenvalue of J_nu, which lie in ``[min(0, nu), 1/4)``.
    """
    nu = check_nu(nu)
    if grid < 16:
        raise DomainError("grid must have at least 16 points")
    need = math.sqrt(0.25 - min(0.0, nu))
    if x_max is None:
        x_max = need + 0.5
    if not x_max > 0:
        raise DomainError("x_max must be positive")
    xs = np.linspace(0.0, x_max, grid + 1)[1:]
    xs = np.concatenate([[min(1e-9, 0.5 * xs[0])], xs])
    out = ZeroList(_scan_roots(lambda x: _chi_real(x, nu), xs))
    out.window_incomplete = nu < 0 and x_max < need
    return out


def rootnu_function(nu: float) -> float:
    """Regularized 3F2(1/2, nu-1, nu+1; nu+1/2, nu+1/2; 1), entire in nu.

    Same zeros as chi(0; nu): nu_0 > 0 and nu_1, nu_2, nu_3 < 0.
    """
    return hyp3f2_reg(0.5, nu - 1.0, nu + 1.0, nu + 0.5, nu + 0.5).real


def find_negative_nu_roots(nu_min: float, nu_max: float, step: float = 2e-3) -> list[RootResult]:
    """Zeros of :func:`rootnu_function` on [nu_min, nu_max]."""
    if not nu_min < nu_max:
        raise DomainError("need nu_min < nu_max")
    n = max(16, int(math.ceil((nu_max - nu_min) / step)))
    return _scan_roots(rootnu_function, np.linspace(nu_min, nu_max, n + 1))


def operator_norm(nu) -> float:
    """||L_nu|| for nu > 0: 4 when nu >= nu_0, else 4/(1 - 4 x0(nu)^2)."""
    nu = check_nu(nu)
    if nu <= 0:
        raise DomainError("operator_norm covers nu > 0; use point_spectrum_L otherwise")
    if nu >= _nu0_value():
        return 4.0
    x = x0(nu).location
    return 4.0 / (1.0 - 4.0 * x * x)


def point_spectrum_L(nu, x_max: float | None = None) -> PointSpectrumL:
    """Eigenvalues 4/(1 - 4x^2) of L_nu from the positive zeros x of chi."""
    nu = check_nu(nu)
    zeros = positive_zeros_chi(nu, x_max)
    evs = sorted(4.0 / (1.0 - 4.0 * r.location**2) for r in zeros)
    norm = max([4.0] + [abs(v) for v in evs])
    return PointSpectrumL(nu, evs, norm, zeros.window_incomplete)


def spectral_measure(nu, x_max: float | None = None) -> SpectralMeasure:
    """Atoms (from the zeros of chi) and density of the spectral measure of J_nu.

    An atom at ``1/4 - x^2`` has mass ``2 x phi_0(x) / chi'(x)``.
    """
    nu = check_nu(nu)
    atoms = []
    for r in positive_zeros_chi(nu, x_max):
        x = r.location
        # residue of m(lambda) = phi_0/chi in lambda = 1/4 - x^2 carries the
        # Jacobian |d lambda / d x| = 2x
        mass = 2.0 * x * phi_n(x, nu, 0).real / chi_dx(x, nu)
        atoms.append((0.25 - x * x, mass))
    return SpectralMeasure(nu, atoms, lambda t: ac_density(t, nu))


def inf_spec_bounds(nu) -> tuple[float, float]:
    """(min(0, nu), min(1/4, 1/(nu psi'(nu)))) enclosing inf sigma(J_nu)."""
    nu = check_nu(nu)
    return min(0.0, nu), min(0.25, 1.0 / (nu * trigamma(nu)))


def x0_asymptotic(nu: float) -> float:
    """Four-term small-nu expansion of x0(nu)."""
    nu = float(nu)
    c3 = 2.0 - math.pi**2 / 6.0
    c4 = 5.0 - math.pi**2 / 3.0 - ZETA3
    return 0.5 - nu - nu**2 - c3 * nu**3 - c4 * nu**4


def norm_asymptotic(nu: float) -> float:
    """Small-nu expansion 1/nu + (pi^2/6) nu + zeta(3) nu^2 of ||L_nu||."""
    nu = float(nu)
    if nu == 0.0:
        raise DomainError("norm_asymptotic is singular at nu = 0")
    return 1.0 / nu + math.pi**2 / 6.0 * nu + ZETA3 * nu**2
