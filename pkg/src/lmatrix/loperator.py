"""L-matrices, their tridiagonal inverses and finite sections.

An L-matrix has entries ``L[m, n] = a[max(m, n)]`` for a parameter sequence
``a``.  When consecutive parameters differ, its inverse is the Jacobi matrix
built from ``b[n] = 1 / (a[n] - a[n+1])``.  This module covers:

* parameter sequences and Jacobi coefficients,
* dense and tridiagonal finite sections, their determinants and inverses,
* positivity, Schatten-norm bounds and the trace norm,
* monic orthogonal polynomials of the Jacobi matrix and the Fredholm
  determinant ``det(1 - z L_n)`` built from them.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DivergentError, DomainError, SingularError, SingularSequenceError
from .specfun import hurwitz_zeta

__all__ = [
    "DenseSection",
    "JacobiCoefficients",
    "ParameterSequence",
    "Positivity",
    "SchattenEstimate",
    "TridiagonalSection",
    "classify_positivity",
    "dense_section",
    "det_l_section",
    "fredholm_det",
    "jacobi_from_parameters",
    "l_section_inverse",
    "monic_op",
    "schatten_bound",
    "trace_norm_decreasing",
    "tridiagonal_section",
]

REGULARITY_TOL = 1e-14
KINDS = ("hilbert", "exponential", "linear", "power", "explicit")


@dataclass(frozen=True)
class ParameterSequence:
    """A parameter sequence ``a_0, a_1, ...`` of an L-matrix.

    Use the class constructors rather than building instances directly::

        ParameterSequence.hilbert(nu)        # a_n = 1/(n + nu)
        ParameterSequence.exponential(q)     # a_n = q**n
        ParameterSequence.linear()           # a_n = n
        ParameterSequence.power(alpha)       # a_n = 1/(n + 1)**alpha
        ParameterSequence.explicit([...])    # finite list
    """

    kind: str
    param: float | None = None
    values: tuple[float, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown sequence kind {self.kind!r}")
        if self.kind == "explicit":
            if not self.values:
                raise DomainError("explicit sequence needs at least one value")
        elif self.kind != "linear" and self.param is None:
            raise DomainError(f"{self.kind} sequence needs a parameter")
        if self.param is not None and not math.isfinite(self.param):
            raise DomainError("sequence parameter must be finite")
        if self.kind == "hilbert":
            nu = self.param
            if nu <= 0 and abs(nu - round(nu)) < 1e-12:
                raise DomainError(f"hilbert sequence has a pole for nu = {nu}")
        if self.kind == "exponential" and self.param <= 0:
            raise DomainError("exponential sequence needs q > 0")

    @classmethod
    def hilbert(cls, nu: float) -> "ParameterSequence":
        return cls("hilbert", float(nu))

    @classmethod
    def exponential(cls, q: float) -> "ParameterSequence":
        return cls("exponential", float(q))

    @classmethod
    def linear(cls) -> "ParameterSequence":
        return cls("linear")

    @classmethod
    def power(cls, alpha: float) -> "ParameterSequence":
        return cls("power", float(alpha))

    @classmethod
    def explicit(cls, values) -> "ParameterSequence":
        return cls("explicit", None, tuple(float(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> "ParameterSequence":
        """Parse ``kind[:arg]``, e.g. ``hilbert:0.5`` or ``explicit:1,0.5,0.2``."""
        kind, _, arg = text.strip().partition(":")
        kind = kind.strip().lower()
        try:
            if kind == "linear":
                return cls.linear()
            if kind == "explicit":
                return cls.explicit(float(v) for v in arg.split(",") if v.strip())
            if kind in KINDS:
                return cls(kind, float(arg))
        except ValueError as exc:
            raise DomainError(f"cannot parse sequence {text!r}: {exc}") from None
        raise DomainError(f"unknown sequence kind {kind!r}")

    def __str__(self) -> str:
        if self.kind == "linear":
            return "linear"
        if self.kind == "explicit":
            return "explicit:" + ",".join(repr(v) for v in self.values)
        return f"{self.kind}:{self.param!r}"

    @property
    def length(self) -> int | None:
        """Number of available terms; ``None`` for infinite sequences."""
        return len(self.values) if self.kind == "explicit" else None

    @property
    def limit(self) -> float | None:
        """a_infinity, or ``None`` if the sequence diverges.

        For explicit lists the sequence is read as padded with zeros.
        """
        if self.kind in ("hilbert", "explicit"):
            return 0.0
        if self.kind == "exponential":
            q = self.param
            return 0.0 if q < 1 else (1.0 if q == 1 else None)
        if self.kind == "power":
            a = self.param
            return 0.0 if a > 0 else (1.0 if a == 0 else None)
        return None

    def _check_index(self, n: int):
        if n < 0:
            raise DomainError("sequence index must be non-negative")
        if self.kind == "explicit" and n >= len(self.values):
            raise DomainError(
                f"explicit sequence has {len(self.values)} terms, index {n} requested"
            )

    def __call__(self, n: int) -> float:
        """a_n."""
        self._check_index(n)
        k, p = self.kind, self.param
        if k == "hilbert":
            return 1.0 / (n + p)
        if k == "exponential":
            return p**n
        if k == "linear":
            return float(n)
        if k == "power":
            return (n + 1.0) ** (-p)
        return self.values[n]

    def gap(self, n: int) -> float:
        """a_n - a_{n+1}, computed without cancellation for closed-form kinds."""
        self._check_index(n + 1)
        k, p = self.kind, self.param
        if k == "hilbert":
            return 1.0 / ((n + p) * (n + p + 1.0))
        if k == "exponential":
            return p**n * (1.0 - p)
        if k == "linear":
            return -1.0
        if k == "power":
            # (n+1)^-a - (n+2)^-a = (n+1)^-a * -expm1(-a log1p(1/(n+1)))
            return -((n + 1.0) ** (-p)) * math.expm1(-p * math.log1p(1.0 / (n + 1.0)))
        return self.values[n] - self.values[n + 1]

    def terms(self, n: int) -> np.ndarray:
        """a_0 .. a_{n-1} as an array."""
        return np.array([self(k) for k in range(n)])


@dataclass(frozen=True)
class JacobiCoefficients:
    """b_n = 1 / (a_n - a_{n+1}) for a regular parameter sequence."""

    sequence: ParameterSequence

    def __call__(self, n: int) -> float:
        k, p = self.sequence.kind, self.sequence.param
        if k == "hilbert":
            self.sequence._check_index(n + 1)
            return (n + p) * (n + p + 1.0)
        if k == "exponential" and p != 1.0:
            return p ** (-n) / (1.0 - p)
        gap = self.sequence.gap(n)
        scale = max(abs(self.sequence(n)), 1.0)
        if abs(gap) <= REGULARITY_TOL * scale:
            raise SingularSequenceError(f"a_{n} = a_{n + 1}; the sequence is not regular")
        return 1.0 / gap

    def array(self, n: int) -> np.ndarray:
        """b_0 .. b_{n-1}."""
        return np.array([self(k) for k in range(n)])


@dataclass(frozen=True)
class TridiagonalSection:
    """Symmetric tridiagonal n x n matrix stored by its two diagonals."""

    n: int
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        if len(self.diag) != self.n or len(self.offdiag) != max(self.n - 1, 0):
            raise ValueError("inconsistent tridiagonal section lengths")

    def to_dense(self) -> np.ndarray:
        out = np.diag(np.asarray(self.diag, dtype=float))
        if self.n > 1:
            out += np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)
        return out


@dataclass(frozen=True)
class DenseSection:
    """The n x n section of an L-matrix, entries[i, j] = a[max(i, j)]."""

    n: int
    entries: np.ndarray


@dataclass(frozen=True)
class SchattenEstimate:
    """Upper bound on the Schatten p-norm of an L-operator.

    ``truncated`` is set when the last summed term still exceeds 1e-12, so the
    partial sum may understate the full series.
    """

    p: float
    bound: float
    terms_used: int
    truncated: bool = False


class Positivity(str, enum.Enum):
    POSITIVE = "positive"
    NOT_POSITIVE = "not_positive"
    INCONCLUSIVE = "inconclusive"


def jacobi_from_parameters(a: ParameterSequence) -> JacobiCoefficients:
    """Jacobi coefficients of the inverse L-matrix."""
    return JacobiCoefficients(a)


def _as_jacobi(b) -> JacobiCoefficients:
    return b if isinstance(b, JacobiCoefficients) else JacobiCoefficients(b)


def tridiagonal_section(b, n: int) -> TridiagonalSection:
    """n x n section J_n of the Jacobi matrix.

    Diagonal ``b_0, b_0 + b_1, ..., b_{n-2} + b_{n-1}``, off-diagonal ``-b_k``.
    Accepts either Jacobi coefficients or a parameter sequence.
    """
    if n < 1:
        raise DomainError("section dimension must be >= 1")
    bvals = _as_jacobi(b).array(n)
    diag = bvals.copy()
    diag[1:] += bvals[:-1]
    return TridiagonalSection(n, diag, -bvals[:-1])


def dense_section(a: ParameterSequence, n: int) -> DenseSection:
    """n x n section of the L-matrix."""
    if n < 1:
        raise DomainError("section dimension must be >= 1")
    vals = a.terms(n)
    idx = np.arange(n)
    return DenseSection(n, vals[np.maximum.outer(idx, idx)])


def det_l_section(a: ParameterSequence, n: int) -> float:
    """det L_n = a_{n-1} * prod_{j=1}^{n-1} (a_{j-1} - a_j)."""
    if n < 1:
        raise DomainError("section dimension must be >= 1")
    out = a(n - 1)
    for j in range(1, n):
        out *= a.gap(j - 1)
    return out


def l_section_inverse(a: ParameterSequence, n: int) -> np.ndarray:
    """Exact inverse of the dense section: J_n minus a corner correction.

    L_n^{-1} = J_n - (a_n b_{n-1} / a_{n-1}) e_n e_n^T, where e_n is the last
    unit vector.  For n = 1 this is simply ``[[1/a_0]]``.
    """
    if n < 1:
        raise DomainError("section dimension must be >= 1")
    a_last = a(n - 1)
    if a_last == 0.0:
        raise SingularError("a_{n-1} = 0, the section is singular")
    if n == 1:
        return np.array([[1.0 / a_last]])
    b = JacobiCoefficients(a)
    # a_n exists for every closed-form kind; an explicit list ends at a_{n-1},
    # where the section behaves as if a_n = 0.
    a_next = a(n) if a.length is None or n < a.length else 0.0
    if a_next != 0.0:
        out = tridiagonal_section(b, n).to_dense()
        out[-1, -1] -= a_next * b(n - 1) / a_last
    else:
        bvals = b.array(n - 1)
        diag = np.append(bvals, 1.0 / a_last)
        diag[1:] += bvals
        out = np.diag(diag) - np.diag(bvals, 1) - np.diag(bvals, -1)
    return out


def classify_positivity(a: ParameterSequence, horizon: int = 1000) -> Positivity:
    """Decide whether the L-operator is positive semi-definite.

    The operator is positive exactly when the sequence is strictly decreasing.
    Closed-form kinds are decided analytically; explicit lists are scanned up
    to ``horizon`` and can only be refuted, otherwise the answer is
    inconclusive.
    """
    if horizon < 1:
        raise DomainError("horizon must be >= 1")
    k, p = a.kind, a.param
    if k == "hilbert":
        return Positivity.POSITIVE if p > 0 else Positivity.NOT_POSITIVE
    if k == "exponential":
        return Positivity.POSITIVE if 0 < p < 1 else Positivity.NOT_POSITIVE
    if k == "power":
        return Positivity.POSITIVE if p > 0 else Positivity.NOT_POSITIVE
    if k == "linear":
        return Positivity.NOT_POSITIVE
    vals = a.values
    for n in range(min(horizon, len(vals) - 1)):
        if not vals[n] > vals[n + 1]:
            return Positivity.NOT_POSITIVE
    return Positivity.INCONCLUSIVE


def schatten_bound(a: ParameterSequence, p: float, n_terms: int) -> SchattenEstimate:
    """Bound on the Schatten p-norm of L.

    Sums ``|a_k| (mu_+(k)^{p/2} + mu_-(k)^{p/2})^{1/p}`` for k = 0..n_terms,
    where ``mu_{+-}(k) = k + 1/2 +- sqrt(k + 1/4)``.
    """
    if not p >= 1:
        raise DomainError("Schatten exponent must satisfy p >= 1")
    last = n_terms if a.length is None else min(n_terms, a.length - 1)
    k = np.arange(last + 1, dtype=float)
    mu_plus = k + 0.5 + np.sqrt(k + 0.25)
    mu_minus = k * k / mu_plus  # mu_+ mu_- = k^2, avoids cancellation
    factor = (mu_plus ** (p / 2) + mu_minus ** (p / 2)) ** (1.0 / p)
    terms = np.abs(a.terms(last + 1)) * factor
    truncated = a.length is None and bool(terms[-1] > 1e-12)
    return SchattenEstimate(float(p), float(terms.sum()), last + 1, truncated)


def trace_norm_decreasing(a: ParameterSequence, tol: float = 1e-12) -> float:
    """Trace norm sum_n (a_n - a_infinity) of a positive L-operator.

    Closed-form kinds add an analytic remainder to a partial sum; explicit
    lists are summed in full.
    """
    if classify_positivity(a, horizon=a.length or 1000) is Positivity.NOT_POSITIVE:
        raise DomainError("trace norm formula needs a strictly decreasing sequence")
    k, p = a.kind, a.param
    if k == "explicit":
        return float(math.fsum(a.values))
    if k == "hilbert":
        raise DivergentError("sum of 1/(n + nu) diverges; the operator is not trace class")
    if k == "power" and p <= 1:
        raise DivergentError(f"sum of 1/(n + 1)^{p} diverges")
    n = 64
    head = math.fsum(a(j) for j in range(n))
    if k == "exponential":
        tail = p**n / (1.0 - p)
    else:
        tail = hurwitz_zeta(p, n + 1.0)
    total = head + tail
    if not math.isfinite(total):
        raise DivergentError("trace norm is not finite")
    return total


def _scaled_monic(b: JacobiCoefficients, z: complex, n: int):
    """Return (p_n, p_{n-1}, e) with the true values being ldexp(., e).

    A shared binary exponent is split off every step so the recurrence stays
    in range for large n.
    """
    prev, cur, exp2 = 0j, 1.0 + 0j, 0
    b_prev = 0.0
    for k in range(n):
        bk = b(k)
        nxt = (z - b_prev - bk) * cur - b_prev * b_prev * prev
        prev, cur = cur, nxt
        b_prev = bk
        big = max(abs(cur), abs(prev))
        if big > 2.0**200 or (0 < big < 2.0**-200):
            shift = math.frexp(big)[1]
            cur = complex(math.ldexp(cur.real, -shift), math.ldexp(cur.imag, -shift))
            prev = complex(math.ldexp(prev.real, -shift), math.ldexp(prev.imag, -shift))
            exp2 += shift
    return cur, prev, exp2


def _ldexp_complex(w: complex, e: int) -> complex:
    return complex(math.ldexp(w.real, e), math.ldexp(w.imag, e))


def monic_op(b, z, n: int) -> complex:
    """Monic polynomial p_n(z) = det(z - J_n) from the three-term recurrence.

    ``p_0 = 1``, ``p_1 = z - b_0`` and
    ``p_{k+1} = (z - b_{k-1} - b_k) p_k - b_{k-1}^2 p_{k-1}``.
    """
    if n < 0:
        raise DomainError("polynomial degree must be >= 0")
    cur, _, e = _scaled_monic(_as_jacobi(b), complex(z), n)
    out = _ldexp_complex(cur, e)
    if not cmath.isfinite(out):
        raise OverflowError(f"p_{n}({z}) overflows")
    return out


def fredholm_det(a: ParameterSequence, z, n: int) -> complex:
    """det(1 - z L_n) through the monic polynomials of the Jacobi matrix.

    ``(-1)^n prod_{j=1}^{n-1}(a_{j-1} - a_j) (a_{n-1} p_n(z) + a_n b_{n-1} p_{n-1}(z))``.
    Huge polynomial values and the tiny product are combined in
    significand/exponent form, so large ``n`` stays finite.  As ``n`` grows
    the value converges to the Fredholm determinant of a trace-class L.
    """
    if n < 1:
        raise DomainError("section dimension must be >= 1")
    z = complex(z)
    if z == 0:
        return 1.0 + 0j
    b = JacobiCoefficients(a)
    cur, prev, e_poly = _scaled_monic(b, z, n)
    a_next = a(n) if a.length is None or n < a.length else 0.0
    inner = a(n - 1) * cur
    if a_next != 0.0:
        inner += a_next * b(n - 1) * prev
    mant, e_prod = 1.0, 0
    for j in range(1, n):
        m, e = math.frexp(mant * a.gap(j - 1))
        mant, e_prod = m, e_prod + e
    sign = -1.0 if n % 2 else 1.0
    out = _ldexp_complex(sign * mant * inner, e_poly + e_prod)
    if not cmath.isfinite(out):
        raise OverflowError("Fredholm determinant overflows")
    return out
