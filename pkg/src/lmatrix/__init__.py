"""Spectral analysis of L-matrices and the Hilbert L-operator.

Subpackages by task:

* :mod:`lmatrix.specfun` gamma-family functions, the unit-argument 3F2 and q-series
* :mod:`lmatrix.loperator` parameter sequences, finite sections, Fredholm determinants
* :mod:`lmatrix.hilbert` characteristic function, spectrum and spectral measure of J_nu
* :mod:`lmatrix.orthopoly` the associated orthogonal polynomials
* :mod:`lmatrix.oracle` brute-force finite-section cross-checks
"""
from .errors import (
    ConvergenceError,
    DivergentError,
    DomainError,
    LMatrixError,
    PoleError,
    QuadratureError,
    RegionError,
    SingularError,
    SingularSequenceError,
)
from .hilbert import (
    ac_density,
    chi,
    find_negative_nu_roots,
    find_nu0,
    inf_spec_bounds,
    norm_asymptotic,
    operator_norm,
    phi_n,
    point_spectrum_L,
    positive_zeros_chi,
    spectral_measure,
    weyl_m,
    wronskian,
    x0,
    x0_asymptotic,
)
from .loperator import ParameterSequence, fredholm_det, tridiagonal_section
from .specfun import hyp3f2, hyp3f2_reg

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DivergentError",
    "DomainError",
    "LMatrixError",
    "ParameterSequence",
    "PoleError",
    "QuadratureError",
    "RegionError",
    "SingularError",
    "SingularSequenceError",
    "ac_density",
    "chi",
    "find_negative_nu_roots",
    "find_nu0",
    "fredholm_det",
    "hyp3f2",
    "hyp3f2_reg",
    "inf_spec_bounds",
    "norm_asymptotic",
    "operator_norm",
    "phi_n",
    "point_spectrum_L",
    "positive_zeros_chi",
    "spectral_measure",
    "tridiagonal_section",
    "weyl_m",
    "wronskian",
    "x0",
    "x0_asymptotic",
]
