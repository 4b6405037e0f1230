"""Special-function kernel.

Gamma family on the complex plane, polygamma on the real line, Pochhammer
symbols, the unit-argument 3F2 (plain and regularized) and the q-series used
for the exponential L-operator.

Complex arguments are plain Python ``complex`` numbers.  Every public function
raises instead of returning NaN or infinity.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, DivergentError, PoleError

__all__ = [
    "DEFAULT_TOL",
    "EULER_GAMMA",
    "ZETA3",
    "Hyp3F2Params",
    "digamma",
    "gamma",
    "gamma_reciprocal",
    "hahn_exton_series",
    "hurwitz_zeta",
    "hyp3f2",
    "hyp3f2_reg",
    "log_gamma",
    "pochhammer",
    "qpochhammer",
    "trigamma",
]

DEFAULT_TOL = 1e-12
POLE_TOL = 1e-12

EULER_GAMMA = 0.57721566490153286061
ZETA3 = 1.2020569031595942854
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _bernoulli_numbers(n):
    """B_0..B_n with the B_1 = -1/2 convention (Akiyama-Tanigawa)."""
    out = []
    row = []
    for m in range(n + 1):
        row.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    if n >= 1:
        out[1] = Fraction(-1, 2)
    return out


_BERN_MAX = 64
_BERN = [float(x) for x in _bernoulli_numbers(_BERN_MAX)]

# Stirling coefficients B_{2k} / (2k (2k-1)).
_STIRLING = [_BERN[2 * k] / (2 * k * (2 * k - 1)) for k in range(1, 13)]

# Euler-Maclaurin coefficients B_{2i} / (2i)!.
_EM = np.array([_BERN[2 * i] / math.factorial(2 * i) for i in range(1, 13)])

# Row n holds the coefficients of B_n(x) in ascending powers of x.
_BPOLY = np.zeros((_BERN_MAX + 1, _BERN_MAX + 1))
for _n in range(_BERN_MAX + 1):
    for _j in range(_n + 1):
        _BPOLY[_n, _j] = math.comb(_n, _j) * _BERN[_n - _j]
del _n, _j


def _nonpositive_integer(z, tol=POLE_TOL):
    """Return the integer -k if z is within tol of a non-positive integer."""
    z = complex(z)
    if abs(z.imag) > tol or z.real > tol:
        return None
    k = round(z.real)
    if abs(z.real - k) <= tol:
        return int(k)
    return None


def _sinpi(z: complex) -> complex:
    """sin(pi z), exactly zero at the integers."""
    x, y = z.real, z.imag
    r = math.fmod(x, 2.0)
    if r == 0.0 or r == 1.0 or r == -1.0:
        s, c = 0.0, (1.0 if r == 0.0 else -1.0)
    elif r == 0.5 or r == -1.5:
        s, c = 1.0, 0.0
    elif r == -0.5 or r == 1.5:
        s, c = -1.0, 0.0
    else:
        s, c = math.sin(math.pi * r), math.cos(math.pi * r)
    if y == 0.0:
        return complex(s, 0.0)
    return complex(s * math.cosh(math.pi * y), c * math.sinh(math.pi * y))


def _check_finite(value, what):
    if not cmath.isfinite(value):
        raise OverflowError(f"{what} is not finite")
    return value


def _log_gamma_shifted(z: complex) -> complex:
    # Upward recurrence keeps the principal branch: each log(z+k) is continuous
    # off the negative real axis.
    shift = 0j
    while z.real < 14.0 or abs(z) < 14.0:
        shift += cmath.log(z)
        z += 1.0
    w = 1.0 / z
    w2 = w * w
    series = 0j
    p = w
    for c in _STIRLING:
        series += c * p
        p *= w2
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + series - shift


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z).

    Parameters
    ----------
    z : complex
        Argument, not a non-positive integer.

    Returns
    -------
    complex
        ``log Gamma(z)`` continued analytically from the positive axis, with
        the branch cut along the negative real axis.
    """
    z = complex(z)
    if _nonpositive_integer(z) is not None:
        raise PoleError(f"log_gamma has a pole at {z}")
    if not cmath.isfinite(z):
        raise OverflowError("log_gamma argument is not finite")
    return _log_gamma_shifted(z)


def gamma_reciprocal(z):
    """1/Gamma(z); entire, exactly zero at the non-positive integers.

    Real input gives a ``float``, complex input a ``complex``.
    """
    if isinstance(z, (int, float, np.floating, np.integer)):
        x = float(z)
        if _nonpositive_integer(x, 0.0) is not None:
            return 0.0
        if abs(x) < 1e-8:
            # Gamma(x) overflows for subnormal x; 1/Gamma(x) = x / Gamma(1 + x)
            return x / math.gamma(1.0 + x)
        if x < 171.0:
            return 1.0 / math.gamma(x)
        return math.exp(-math.lgamma(x))
    z = complex(z)
    if z.imag == 0.0:
        return complex(gamma_reciprocal(z.real))
    if z.real >= 0.5:
        return cmath.exp(-_log_gamma_shifted(z))
    # reflection: 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi
    return _check_finite(
        _sinpi(z) * cmath.exp(_log_gamma_shifted(1.0 - z)) / math.pi,
        "gamma_reciprocal",
    )


def gamma(z):
    """Gamma(z); raises :class:`PoleError` at the non-positive integers."""
    if _nonpositive_integer(z) is not None:
        raise PoleError(f"gamma has a pole at {z}")
    r = gamma_reciprocal(z)
    if r == 0:
        raise OverflowError(f"gamma({z}) overflows")
    return _check_finite(1.0 / r, "gamma")


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x) for real x."""
    x = float(x)
    if _nonpositive_integer(x) is not None:
        raise PoleError(f"digamma has a pole at {x}")
    if x < 0.5:
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < 12.0:
        acc -= 1.0 / x
        x += 1.0
    w2 = 1.0 / (x * x)
    series = 0.0
    p = w2
    for k in range(1, 10):
        series += _BERN[2 * k] / (2 * k) * p
        p *= w2
    return acc + math.log(x) - 0.5 / x - series


def trigamma(x: float) -> float:
    """psi'(x) for real x."""
    x = float(x)
    if _nonpositive_integer(x) is not None:
        raise PoleError(f"trigamma has a pole at {x}")
    if x < 0.5:
        return -trigamma(1.0 - x) + (math.pi / math.sin(math.pi * x)) ** 2
    acc = 0.0
    while x < 12.0:
        acc += 1.0 / (x * x)
        x += 1.0
    w = 1.0 / x
    w2 = w * w
    series = 0.0
    p = w2 * w
    for k in range(1, 10):
        series += _BERN[2 * k] * p
        p *= w2
    return acc + w + 0.5 * w2 + series


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1)."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


def hurwitz_zeta(s, q=1.0):
    """Hurwitz zeta sum_{k>=0} (k+q)^(-s) for Re s > 1, q > 0.

    ``s`` may be a complex scalar or a NumPy array; evaluation uses
    Euler-Maclaurin summation.
    """
    s_arr = np.atleast_1d(np.asarray(s, dtype=complex))
    if np.any(s_arr.real <= 1.0):
        raise DivergentError("hurwitz_zeta needs Re s > 1")
    q = float(q)
    if q <= 0:
        raise ValueError("hurwitz_zeta needs q > 0")
    out = _hurwitz(s_arr, q)
    if np.ndim(s) == 0:
        out = complex(out[0])
        return out.real if np.isrealobj(s) else out
    return out.real if np.isrealobj(s) else out


def _hurwitz(s: np.ndarray, q: float) -> np.ndarray:
    n_em = len(_EM)
    m = int(np.max(np.abs(s))) + 2 * n_em + 10
    ks = q + np.arange(m, dtype=float)
    direct = np.exp(-np.outer(np.log(ks), s)).sum(axis=0)
    big = q + m
    lb = math.log(big)
    head = np.exp((1.0 - s) * lb) / (s - 1.0) + 0.5 * np.exp(-s * lb)
    corr = np.zeros_like(s)
    rising = s.copy()  # (s)_{2i-1}
    power = np.exp(-(s + 1.0) * lb)  # big^(-s-2i+1) for i=1
    inv2 = 1.0 / (big * big)
    for i in range(n_em):
        corr += _EM[i] * rising * power
        rising = rising * (s + 2 * i + 1) * (s + 2 * i + 2)
        power = power * inv2
    return direct + head + corr


class Hyp3F2Params(NamedTuple):
    """Parameters of a unit-argument 3F2."""

    a1: complex
    a2: complex
    a3: complex
    b1: complex
    b2: complex

    @property
    def excess(self) -> complex:
        return complex(self.b1 + self.b2 - self.a1 - self.a2 - self.a3)


def _fresh_term(a, b, k, log_scale=0j):
    """exp(log_scale) times the k-th regularized term, computed from scratch."""
    logu = complex(log_scale)
    factor = 1.0 + 0j
    for bj in b:
        if (bj + k).real >= 0.5:
            logu -= log_gamma(bj + k)
        else:
            factor *= gamma_reciprocal(bj + k)
    if k > 0:
        logu -= log_gamma(k + 1.0)
        for ai in a:
            if _nonpositive_integer(ai) is not None:
                factor *= pochhammer(ai, k)
            else:
                logu += log_gamma(ai + k) - log_gamma(ai)
    if factor == 0:
        return 0j
    return _check_finite(factor * cmath.exp(logu), "3F2 term")


def _series_terms(a, b, stop, early_exit, log_scale=0j):
    """Sum terms 0..stop-1; return (partial sum, term at index stop, done)."""
    a1, a2, a3 = a
    b1, b2 = b
    t = _fresh_term(a, b, 0, log_scale)
    total = 0j
    kmin = 2
    for bj in b:
        if bj.real < 0:
            kmin = max(kmin, int(-bj.real) + 2)
    for k in range(stop):
        total += t
        d1 = k + b1
        d2 = k + b2
        if t == 0 or abs(d1) < POLE_TOL or abs(d2) < POLE_TOL:
            t = _fresh_term(a, b, k + 1, log_scale)
            continue
        ratio = (k + a1) * (k + a2) * (k + a3) / ((k + 1) * d1 * d2)
        t *= ratio
        if (
            early_exit
            and k >= kmin
            and abs(ratio) < 0.5
            and abs(t) <= 1e-18 * abs(total)
        ):
            return total + t, 0j, True
    return total, t, False


def _tail(a, b, sigma, t_n, n):
    """sum_{k>=n} t_k from the large-k expansion of the term ratio.

    log t_k = const - sigma log k + sum_m d_m k^-m, where d_m comes from the
    Bernoulli-polynomial expansion of log Gamma(k + h).  Returns the tail and
    an estimate of its truncation error.
    """
    jmax = 40
    xs = np.array(list(a) + [1.0] + list(b), dtype=complex)
    signs = np.array([1, 1, 1, -1, -1, -1], dtype=float)
    powers = xs[None, :] ** np.arange(jmax + 2)[:, None]
    bern_at = _BPOLY[: jmax + 2, : jmax + 2] @ powers  # B_n(x_i), n = 0..jmax+1
    mm = np.arange(1, jmax + 1)
    d = np.empty(jmax + 1, dtype=complex)
    d[0] = 0.0
    d[1:] = ((-1.0) ** (mm + 1)) / (mm * (mm + 1)) * (bern_at[2 : jmax + 2] @ signs)
    # exp(sum_m d_m x^m) = sum_j c_j x^j
    c = np.zeros(jmax + 1, dtype=complex)
    c[0] = 1.0
    for j in range(1, jmax + 1):
        c[j] = np.dot(mm[:j] * d[1 : j + 1], c[j - 1 :: -1][:j]) / j
    inv_n = 1.0 / n
    scale_pows = inv_n ** np.arange(jmax + 1)
    d_terms = d * scale_pows
    c_terms = np.abs(c * scale_pows)
    # keep terms while the asymptotic series is still decreasing
    jcut = jmax
    for j in range(4, jmax + 1):
        if c_terms[j] > c_terms[j - 1] and c_terms[j - 1] < 1e-8:
            jcut = j - 1
            break
    dn = d_terms[: jcut + 1].sum()
    zetas = _hurwitz(sigma + np.arange(jcut + 1), float(n))
    pref = t_n * cmath.exp(sigma * math.log(n) - dn)
    parts = c[: jcut + 1] * zetas
    tail = pref * parts.sum()
    err = abs(pref) * (abs(parts[-1]) + abs(d_terms[jcut]) * abs(parts.sum()))
    return complex(tail), float(err)


def hyp3f2_reg(a1, a2, a3, b1, b2, tol=DEFAULT_TOL, log_scale=0.0) -> complex:
    """Regularized unit-argument 3F2.

    ``sum_k (a1)_k (a2)_k (a3)_k / (k! Gamma(b1+k) Gamma(b2+k))``, which is
    entire in the denominator parameters.  Terminating series (a numerator
    parameter in -N0) are summed exactly; otherwise the parameter excess
    ``s = b1 + b2 - a1 - a2 - a3`` must satisfy ``Re s > 0``.

    The head of the series is summed directly and the remainder is taken from
    the large-index expansion of the terms, so slowly convergent cases
    (small ``Re s``) cost the same as fast ones.

    Parameters
    ----------
    a1, a2, a3, b1, b2 : complex
        Numerator and denominator parameters.
    tol : float
        Error target, absolute for results of order one and relative for
        larger results.
    log_scale : complex
        The result is multiplied by ``exp(log_scale)`` before any term is
        formed, which avoids overflow when the caller applies a large or tiny
        gamma-ratio prefactor.

    Raises
    ------
    DivergentError
        If ``Re s <= 0`` for a non-terminating series.
    ConvergenceError
        If the error target is not met within 10**6 terms.
    """
    a = (complex(a1), complex(a2), complex(a3))
    b = (complex(b1), complex(b2))
    for x in a + b:
        if not cmath.isfinite(x):
            raise OverflowError("hyp3f2_reg parameters must be finite")
    degrees = [_nonpositive_integer(ai) for ai in a]
    degrees = [-d for d in degrees if d is not None]
    if degrees:
        a = tuple(complex(round(ai.real)) if _nonpositive_integer(ai) is not None else ai for ai in a)
        total, t_last, _ = _series_terms(
            a, b, min(degrees) + 1, early_exit=False, log_scale=log_scale
        )
        return _check_finite(total, "hyp3f2_reg")
    s = b[0] + b[1] - sum(a)
    if s.real <= 0:
        raise DivergentError(f"3F2 at unit argument diverges for Re(s) = {s.real:g} <= 0")
    scale = max(abs(x) for x in a + b)
    n = max(64, int(4 * scale) + 16)
    err = math.inf
    n_max = max(1_000_000, n)
    while n <= n_max:
        total, t_n, done = _series_terms(a, b, n, early_exit=True, log_scale=log_scale)
        if done:
            return _check_finite(total, "hyp3f2_reg")
        tail, err = _tail(a, b, s + 1.0, t_n, n)
        result = total + tail
        if err <= tol * max(1.0, abs(result)):
            return _check_finite(result, "hyp3f2_reg")
        n *= 4
    raise ConvergenceError(f"3F2 tail estimate {err:.3g} exceeds tolerance {tol:g}")


def hyp3f2(a1, a2, a3, b1, b2, tol=DEFAULT_TOL) -> complex:
    """Unit-argument 3F2(a1, a2, a3; b1, b2; 1).

    Raises :class:`PoleError` if a denominator parameter is a non-positive
    integer; see :func:`hyp3f2_reg` for the other conditions.
    """
    for bj in (b1, b2):
        if _nonpositive_integer(bj) is not None:
            raise PoleError(f"3F2 denominator parameter {bj} is a pole")
    scale = log_gamma(b1) + log_gamma(b2)
    return hyp3f2_reg(a1, a2, a3, b1, b2, tol=tol, log_scale=scale)


def qpochhammer(alpha: float, q: float, k: int) -> float:
    """(alpha; q)_k = prod_{j<k} (1 - alpha q^j)."""
    if k < 0:
        raise ValueError("qpochhammer needs k >= 0")
    out = 1.0
    p = alpha
    for _ in range(k):
        out *= 1.0 - p
        p *= q
    return out


def hahn_exton_series(q: float, w, tol=DEFAULT_TOL, max_terms=10_000) -> complex:
    """The 1phi1(0; q; q, w) series sum_k (-1)^k q^(k(k-1)/2) w^k / (q;q)_k^2.

    Entire in ``w``; with ``w = (1 - q) z`` it is the Fredholm determinant of
    the L-operator with parameters ``q**n``.
    """
    q = float(q)
    if not 0.0 < q < 1.0:
        raise ValueError("hahn_exton_series needs 0 < q < 1")
    w = complex(w)
    term = 1.0 + 0j
    total = term
    qk = 1.0  # q^k
    for k in range(max_terms):
        qk1 = qk * q
        term *= -qk * w / (1.0 - qk1) ** 2
        total += term
        qk = qk1
        if abs(qk * w) < 0.5 and abs(term) <= tol * max(1.0, abs(total)) * 1e-3:
            return _check_finite(total, "hahn_exton_series")
    raise ConvergenceError("hahn_exton_series term budget exhausted")
