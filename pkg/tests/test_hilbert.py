import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lmatrix.errors import DomainError, RegionError
from lmatrix.hilbert import (
    ChiForm,
    ac_density,
    check_nu,
    chi,
    find_negative_nu_roots,
    find_nu0,
    inf_spec_bounds,
    norm_asymptotic,
    operator_norm,
    phi_n,
    phi_vector,
    point_spectrum_L,
    positive_zeros_chi,
    rootnu_function,
    spectral_measure,
    weyl_m,
    wronskian,
    x0,
    x0_asymptotic,
)
from lmatrix.oracle import finite_section_norm_L, finite_section_spectrum_J
from lmatrix.specfun import ZETA3, gamma, hyp3f2_reg, trigamma

NU0 = 0.3490864658058694


def b(n, nu):
    return (n + nu) * (n + nu + 1)


def recurrence_residual(z, nu, n):
    lam = 0.25 - z * z
    p = [phi_n(z, nu, k) for k in (n - 1, n, n + 1)]
    lhs = -b(n - 1, nu) * p[0] + (b(n - 1, nu) + b(n, nu) - lam) * p[1] - b(n, nu) * p[2]
    scale = max(abs(b(n - 1, nu) * p[0]), abs(b(n, nu) * p[2]), 1e-300)
    return abs(lhs) / scale


# -- nu validation ----------------------------------------------------------

@pytest.mark.parametrize("bad", [0, -1, -2.0, float("nan"), float("inf")])
def test_check_nu_rejects(bad):
    with pytest.raises(DomainError):
        check_nu(bad)


# -- phi ------------------------------------------------------------------------

def test_phi_asymptotics():
    z, nu, n = 0.3, 1.0, 10_000
    prod = phi_n(z, nu, n) * gamma(1 + 2 * z) * n ** (z + 0.5)
    assert abs(prod - 1) <= 2e-3


def test_phi_recurrence_example():
    assert recurrence_residual(0.2 + 0.1j, 0.7, 5) <= 1e-10


@settings(max_examples=60)
@given(
    st.floats(-0.45, 2.0),
    st.floats(-1.5, 1.5),
    st.floats(-1.9, 3.0).filter(lambda v: abs(v - round(v)) > 0.05 or v > 0.5),
    st.integers(1, 20),
)
def test_phi_recurrence_property(x, y, nu, n):
    z = complex(x, y)
    assert recurrence_residual(z, nu, n) <= 1e-9


def test_phi0_half_nu_one():
    assert phi_n(0.5, 1.0, 0) == pytest.approx(1.0, abs=1e-14)


def test_phi_vector_matches_scalar():
    vec = phi_vector(0.3 + 0.2j, 0.6, 8)
    for n in range(9):
        assert vec[n] == pytest.approx(phi_n(0.3 + 0.2j, 0.6, n), rel=1e-12)


# -- chi ------------------------------------------------------------------------

@pytest.mark.parametrize("nu", [-1.5, -0.5, 0.2, 1.0, 3.0])
def test_chi_half_is_one(nu):
    assert abs(chi(0.5, nu) - 1) <= 1e-10


def test_chi_small_nu_limit():
    nu = 1e-6
    assert (nu * chi(0, nu)).real == pytest.approx(-1 / (2 * math.pi**1.5), rel=1e-4)


def test_chi_vanishes_at_x0():
    assert abs(chi(x0(0.2).location, 0.2)) <= 1e-12


def test_chi_region_errors():
    with pytest.raises(RegionError):
        chi(0.3, -0.5, ChiForm.FORM1)
    with pytest.raises(RegionError):
        chi(-0.7, 1.0, ChiForm.FORM2)


@settings(max_examples=100)
@given(st.floats(0.02, 3.0), st.floats(-0.45, 2.0), st.floats(-1.5, 1.5))
def test_chi_representations_agree(nu, x, y):
    z = complex(x, y)
    if abs(z) > 2:
        return
    vals = [chi(z, nu, f) for f in (ChiForm.FORM1, ChiForm.FORM2, ChiForm.FORM3, ChiForm.GENERAL)]
    scale = max(1.0, max(abs(v) for v in vals))
    for v in vals[1:]:
        assert abs(v - vals[0]) <= 1e-9 * scale


@pytest.mark.parametrize("nu", [0.7, -0.5, 2.3])
@pytest.mark.parametrize("z0", [0.5, 1.0, -0.5, -1.0, 1.5])
def test_chi_continuous_at_half_integers(nu, z0):
    center = chi(z0, nu)
    for eps in (1e-7, -1e-7):
        assert abs(chi(z0 + eps, nu) - center) <= 1e-5


def test_chi_conjugate_symmetry():
    for nu in (0.4, -0.3):
        z = 0.3 + 0.8j
        assert chi(z.conjugate(), nu) == pytest.approx(chi(z, nu).conjugate(), rel=1e-12)


# -- Wronskian --------------------------------------------------------------------

@pytest.mark.parametrize("n", [0, 3, 7])
@pytest.mark.parametrize("nu", [1.0, 0.3, -0.5])
def test_wronskian_quarter(n, nu):
    assert wronskian(0.25, nu, n) == pytest.approx(1 / math.pi, rel=1e-10)


def test_wronskian_half_and_imaginary():
    assert abs(wronskian(0.5, 0.8, 2)) <= 1e-10
    assert wronskian(0.1j, -0.5, 2) == pytest.approx(1j * math.sinh(0.2 * math.pi) / math.pi, rel=1e-10)


@settings(max_examples=30)
@given(st.floats(-1.2, 1.2), st.floats(-1.0, 1.0), st.floats(0.1, 2.5))
def test_wronskian_n_independent(x, y, nu):
    z = complex(x, y)
    target = cmath.sin(2 * math.pi * z) / math.pi
    for n in range(11):
        assert abs(wronskian(z, nu, n) - target) <= 1e-10 * max(1.0, abs(target))


# -- Weyl function ---------------------------------------------------------------

def test_weyl_herglotz_example():
    assert weyl_m(1 + 1j, 1.0).imag > 0


def test_weyl_symmetry():
    lam = 2 - 0.5j
    assert abs(weyl_m(lam.conjugate(), 0.7) - weyl_m(lam, 0.7).conjugate()) <= 1e-12


@pytest.mark.parametrize("nu", [1.0, 0.2, -0.5])
def test_weyl_matches_measure(nu):
    lam = -1 + 1j
    mu = spectral_measure(nu)
    stieltjes = mu.integral(lambda x: 1.0 / (x - lam), tol=1e-10, power=-2)
    assert abs(weyl_m(lam, nu) - stieltjes) <= 1e-6


def test_weyl_herglotz_grid():
    for re in np.linspace(-3, 6, 5):
        for im in (0.01, 0.1, 1.0, 10.0):
            assert weyl_m(complex(re, im), 0.45).imag > 0


def test_weyl_real_axis_rejected():
    with pytest.raises(DomainError):
        weyl_m(2.0, 1.0)


# -- density -----------------------------------------------------------------------

def test_density_nu_one_weight():
    t = 1.0
    weight_t = 2 * math.pi * t * (0.25 + t * t) * math.sinh(math.pi * t) / math.cosh(math.pi * t) ** 2
    # the weight is the density in t; ac_density is per unit x = 1/4 + t^2
    assert 2 * t * ac_density(t, 1.0) == pytest.approx(weight_t, rel=1e-10)


def test_density_large_t():
    t = 8.0
    chi2 = abs(chi(1j * t, 1.0)) ** 2
    model = gamma(1.0) ** 2 * gamma(2.0) ** 2 / (8 * math.pi**3) * t ** (2 - 4) * math.exp(3 * math.pi * t)
    assert chi2 / abs(model) == pytest.approx(1.0, rel=0.1)


def test_density_at_zero():
    assert ac_density(1e-9, 1.0) < 1e-7
    assert ac_density(0.5, 0.3) > 0


# -- nu_0, x0 -----------------------------------------------------------------------

def test_nu0():
    r = find_nu0()
    assert r.location == pytest.approx(0.349086, abs=1e-5)
    assert r.bracket[0] <= r.location <= r.bracket[1]


def test_nu0_from_chi_at_zero():
    from scipy.optimize import brentq

    f = lambda v: hyp3f2_reg(0.5, v - 1, v + 1, v + 0.5, v + 0.5).real
    assert brentq(f, 0.3, 0.4, xtol=1e-15) == pytest.approx(find_nu0().location, abs=1e-9)


def test_x0_expansion():
    nu = 0.01
    approx = 0.5 - nu - nu**2 - (2 - math.pi**2 / 6) * nu**3 - (5 - math.pi**2 / 3 - ZETA3) * nu**4
    assert abs(x0(nu).location - approx) <= 5e-10


def test_x0_monotone_and_bounded():
    assert x0(0.1).location > x0(0.2).location > x0(0.3).location
    nu = 0.05
    assert math.sqrt(0.25 - nu * (nu + 1)) <= x0(nu).location <= 0.5


def test_x0_domain():
    with pytest.raises(DomainError):
        x0(0.4)


# -- zeros and eigenvalues ---------------------------------------------------------

def test_zeros_nu_half_empty():
    assert positive_zeros_chi(0.5) == []


@pytest.mark.parametrize("nu", [NU0 + 1e-3, 0.5, 1.0, 3.0])
def test_no_zeros_above_nu0(nu):
    assert positive_zeros_chi(nu, x_max=2.0) == []


def test_zeros_nu_negative_half():
    zeros = positive_zeros_chi(-0.5)
    assert any(r.location > 0.5 for r in zeros)
    assert not zeros.window_incomplete
    assert positive_zeros_chi(-0.5, x_max=0.3).window_incomplete


def test_zeros_nu_02_single():
    zeros = positive_zeros_chi(0.2)
    assert len(zeros) == 1
    assert zeros[0].location == pytest.approx(x0(0.2).location, abs=1e-10)


@pytest.mark.parametrize("nu", [0.2, 0.05, -0.5, -1.25])
def test_eigen_residual_at_zeros(nu):
    for r in positive_zeros_chi(nu):
        x = r.location
        lam = 0.25 - x * x
        vec = phi_vector(x, nu, 51).real
        for n in range(1, 50):
            res = -b(n - 1, nu) * vec[n - 1] + (b(n - 1, nu) + b(n, nu) - lam) * vec[n] - b(n, nu) * vec[n + 1]
            assert abs(res) <= 1e-8 * max(abs(b(n, nu) * vec[n + 1]), abs(b(n - 1, nu) * vec[n - 1]))


def test_negative_roots():
    roots = [r.location for r in find_negative_nu_roots(-2, 0)]
    assert roots == pytest.approx([-1.33742, -1.1426, -0.43215], abs=1e-4)
    pos = find_negative_nu_roots(0, 0.5)
    assert len(pos) == 1 and pos[0].location == pytest.approx(NU0, abs=1e-10)
    assert find_negative_nu_roots(0.5, 1) == []
    assert abs(rootnu_function(NU0)) < 1e-13


# -- norm -----------------------------------------------------------------------------

def test_norm_examples():
    assert operator_norm(0.5) == 4.0
    assert operator_norm(find_nu0().location) == 4.0
    with pytest.raises(DomainError):
        operator_norm(-0.5)


@pytest.mark.xfail(strict=True, reason="section norms at n = 5000 carry a 1e-5 relative truncation error")
def test_norm_nu_01_oracle_tight():
    assert finite_section_norm_L(0.1, 5000) == pytest.approx(operator_norm(0.1), rel=1e-6)


def test_norm_nu_01_oracle():
    assert finite_section_norm_L(0.1, 5000) == pytest.approx(operator_norm(0.1), rel=1e-4)


def test_norm_monotone_and_lower_bound():
    grid = [0.05, 0.10, 0.15, 0.20, 0.25, 0.30]
    norms = [operator_norm(v) for v in grid]
    assert all(a > b for a, b in zip(norms, norms[1:]))
    for v, n in zip(grid, norms):
        assert n >= max(4.0, v * trigamma(v))


def test_norm_asymptotics():
    nu = 0.01
    assert abs(x0(nu).location - x0_asymptotic(nu)) <= 100 * nu**5
    assert abs(operator_norm(nu) - norm_asymptotic(nu)) <= 10 * nu**3
    assert x0_asymptotic(0.0) == 0.5
    with pytest.raises(DomainError):
        norm_asymptotic(0.0)


def test_point_spectrum_examples():
    ps = point_spectrum_L(1.0)
    assert ps.eigenvalues == [] and ps.norm == 4.0
    ps = point_spectrum_L(0.2)
    assert len(ps.eigenvalues) == 1 and ps.eigenvalues[0] > 4


def test_point_spectrum_negative_nu_against_oracle():
    ps = point_spectrum_L(-0.5)
    negative = [v for v in ps.eigenvalues if v < 0]
    assert len(negative) == 1
    small, _ = finite_section_spectrum_J(-0.5, 5000, 1)
    assert 1.0 / negative[0] == pytest.approx(small[0], abs=1e-5)


# -- spectral measure -------------------------------------------------------------------

def test_measure_nu_one():
    mu = spectral_measure(1.0)
    assert mu.atoms == []
    assert mu.total_mass() == pytest.approx(1.0, abs=1e-8)


def test_measure_nu_02():
    mu = spectral_measure(0.2)
    assert len(mu.atoms) == 1
    pos, mass = mu.atoms[0]
    assert mass > 0 and pos < 0.25
    assert pos == pytest.approx(0.25 - x0(0.2).location ** 2)
    assert mu.total_mass() == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("nu", [-0.5, -1.25, 0.05])
def test_measure_masses_positive(nu):
    mu = spectral_measure(nu)
    assert all(m > 0 for _, m in mu.atoms)
    assert mu.total_mass() == pytest.approx(1.0, abs=1e-6)


def test_inf_bounds():
    lo, hi = inf_spec_bounds(1.0)
    assert lo == 0 and hi == 0.25
    lo, hi = inf_spec_bounds(0.2)
    assert lo <= 0.25 - x0(0.2).location ** 2 <= hi
    assert inf_spec_bounds(-0.5)[0] == -0.5
