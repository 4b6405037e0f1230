import math

import numpy as np
import pytest

from lmatrix.errors import DomainError
from lmatrix.hilbert import ac_density
from lmatrix.loperator import ParameterSequence, tridiagonal_section
from lmatrix.orthopoly import (
    MAX_GRAM_DEGREE,
    Normalization,
    P_n,
    P_n_via_phi,
    cdh_weight,
    evaluate,
    gram_entry,
    gram_matrix,
    gram_target,
    p_n,
)
from lmatrix.specfun import hyp3f2, pochhammer


def jacobi_dense(nu, n):
    return tridiagonal_section(ParameterSequence.hilbert(nu), n).to_dense()


def test_low_degrees():
    assert p_n(2.5, 0.3, 0) == 1
    assert p_n(3.0, 1.0, 1) == pytest.approx(1.0)
    assert P_n(7.1, 0.4, 0) == 1


@pytest.mark.parametrize("x", [0.0, 1.3, -2.0, 17.0])
def test_p2_matches_characteristic_polynomial(x):
    ref = np.linalg.det(x * np.eye(2) - jacobi_dense(1.0, 2))
    assert p_n(x, 1.0, 2) == pytest.approx(ref, rel=1e-12)


def test_sign_pattern_at_zero():
    nu = 1.0
    for n in range(1, 7):
        prod_b = math.prod((k + nu) * (k + nu + 1) for k in range(n))
        assert p_n(0.0, nu, n) == pytest.approx((-1) ** n * prod_b, rel=1e-12)


def test_evaluate_normalizations():
    r = evaluate(0.9, 0.6, 3, "orthonormal")
    assert r.normalization is Normalization.ORTHONORMAL
    assert r.value == pytest.approx(P_n(0.9, 0.6, 3))
    assert evaluate(0.9, 0.6, 3).value == pytest.approx(p_n(0.9, 0.6, 3))


def test_eigen_equation():
    x, nu, N = 0.7, 1.3, 30
    P = np.array([P_n(x, nu, n).real for n in range(N + 1)])
    bb = [(k + nu) * (k + nu + 1) for k in range(N + 1)]
    assert abs((bb[0] - x) * P[0] - bb[0] * P[1]) <= 1e-12
    for n in range(1, N):
        res = -bb[n - 1] * P[n - 1] + (bb[n - 1] + bb[n] - x) * P[n] - bb[n] * P[n + 1]
        scale = max(abs(bb[n] * P[n + 1]), abs(bb[n - 1] * P[n - 1]))
        assert abs(res) <= 1e-9 * scale


@pytest.mark.parametrize("t", [0.0, 0.6, 1.7])
@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_continuous_dual_hahn(t, n):
    # S_n(t^2; 1/2, 1/2, 3/2) = (1)_n (2)_n 3F2(-n, 1/2 + it, 1/2 - it; 1, 2; 1)
    s_n = pochhammer(1.0, n) * pochhammer(2.0, n) * hyp3f2(-n, 0.5 + 1j * t, 0.5 - 1j * t, 1.0, 2.0)
    ref = s_n / (math.factorial(n) * math.factorial(n + 1))
    assert P_n(0.25 + t * t, 1.0, n) == pytest.approx(ref.real, rel=1e-10)
    assert abs(ref.imag) <= 1e-12 * max(1.0, abs(ref))


def test_via_phi_examples():
    assert P_n_via_phi(0.3, 0.8, 0) == pytest.approx(1.0, rel=1e-10)
    assert P_n_via_phi(0.3, 0.8, 3) == pytest.approx(P_n(0.25 - 0.09, 0.8, 3), rel=1e-8)
    val = P_n_via_phi(0.2j, 1.0, 2)
    assert abs(val.imag) <= 1e-10 * max(1.0, abs(val))


def test_via_phi_grid():
    zs = [0.3, 0.1, 0.7 + 0.1j, 1.3, 0.2j, 1.1j, 0.45 - 0.3j, 0.9, 1.7 + 0.5j, 0.05 + 2j]
    for nu in (0.8, -0.5, 1.0):
        for z in zs:
            for n in range(7):
                ref = P_n(0.25 - z * z, nu, n)
                assert abs(P_n_via_phi(z, nu, n) - ref) <= 1e-8 * max(1.0, abs(ref))


def test_via_phi_rejects_half_integers():
    with pytest.raises(DomainError):
        P_n_via_phi(0.5, 1.0, 2)


def test_cdh_weight_examples():
    assert cdh_weight(0.0) == 0.0
    expected = 2 * math.pi * 1.25 * math.sinh(math.pi) / math.cosh(math.pi) ** 2
    assert cdh_weight(1.0) == pytest.approx(expected, rel=1e-14)
    assert np.all(np.isfinite(cdh_weight(np.array([50.0, 400.0]))))


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_cdh_weight_is_t_density(t):
    assert cdh_weight(t) == pytest.approx(2 * t * ac_density(t, 1.0), rel=1e-10)


def test_gram_entries():
    assert gram_entry(1.0, 0, 0) == pytest.approx(1.0, abs=1e-8)
    assert gram_entry(1.0, 0, 1) == pytest.approx(0.0, abs=1e-8)
    assert gram_entry(0.2, 2, 2) == pytest.approx((0.24 * 2.64) ** 2, rel=1e-8)
    assert gram_target(0.2, 2) == pytest.approx((0.24 * 2.64) ** 2)


@pytest.mark.parametrize("nu", [1.0, 0.7, 0.2, -0.5])
def test_gram_matrix_degree_five(nu):
    g = gram_matrix(nu, 5)
    target = np.array([gram_target(nu, n) for n in range(6)])
    rel = g / np.sqrt(np.outer(target, target))
    assert np.abs(rel - np.eye(6)).max() <= 1e-6


def test_gram_normalized_identity():
    assert np.abs(gram_matrix(0.7, 4, normalized=True) - np.eye(5)).max() <= 1e-8


def test_gram_degree_guard():
    with pytest.raises(DomainError):
        gram_matrix(1.0, MAX_GRAM_DEGREE + 1)


@pytest.mark.parametrize("nu", [1.0, 0.2, -0.5, -1.25])
def test_zeros_real_simple_inside_hull(nu):
    for n in range(1, 9):
        eig = np.linalg.eigvalsh(jacobi_dense(nu, n))
        assert np.all(eig > min(0.0, nu) - 1e-12)
        # one sign change of p_n across each eigenvalue of J_n
        for lam in eig:
            d = 1e-7 * max(1.0, abs(lam))
            assert np.sign(p_n(lam - d, nu, n).real) != np.sign(p_n(lam + d, nu, n).real)
