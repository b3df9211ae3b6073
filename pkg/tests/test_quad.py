import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from harmreps import coords as C
from harmreps import liealg as LA
from harmreps import quad as Q
from harmreps import repfun as R
from harmreps.fd import FDScheme

AN = FDScheme(backend="analytic")
SMALL_S3C = Q.QuadratureSpec(s3c_theta_nodes=8, s3c_panel_nodes=4, s3c_angle_nodes=4)


def phi(ell, m):
    return R.SU2Function(R.SU2Label(ell), m)


def psi(s, n, sign=1):
    return R.SU11DiscFunction(R.SU11DiscLabel(s, sign, n))


def test_inner_s3_examples():
    assert Q.inner_s3(phi(1, 0), phi(1, 0)) == pytest.approx(1, abs=1e-10)
    assert abs(Q.inner_s3(phi(1, 1), phi(2, 1))) < 1e-12
    one = lambda x: np.ones(x.shape[1:], complex)
    assert Q.inner_s3(one, one) == pytest.approx(1, abs=1e-12)


def test_inner_s3_node_doubling_exact():
    rng = np.random.default_rng(0)
    c = rng.normal(size=4) + 1j * rng.normal(size=4)
    fs = [phi(1, 0), phi(2, -1), phi(Fraction(3, 2), Fraction(1, 2)), phi(0, 0)]
    f = lambda x: sum(ci * h(x) for ci, h in zip(c, fs))
    a = Q.inner_s3(f, f, Q.QuadratureSpec(n_angle=16, n_theta=16))
    b = Q.inner_s3(f, f, Q.QuadratureSpec(n_angle=32, n_theta=32))
    assert abs(a - b) < 1e-13
    assert a == pytest.approx(np.sum(np.abs(c) ** 2), rel=1e-12)


def test_su2_self_adjoint():
    ops = LA.su2_realization().ops
    spec = Q.QuadratureSpec(n_angle=12, n_theta=12)  # exact for these degrees
    F = Q.su2_family(Fraction(3, 2))
    for f in F:
        for g in F:
            a = Q.inner_s3(lambda y: LA.apply(ops["R+"], f, y, AN, guard=0), g, spec)
            b = Q.inner_s3(f, lambda y: LA.apply(ops["R-"], g, y, AN, guard=0), spec)
            assert abs(a - b) < 1e-8


def test_su11_discrete_self_adjoint():
    ops = LA.su11_realization().ops
    spec = Q.QuadratureSpec(rho_max=20.0, n_angle=8)
    F = Q.su11_disc_family((1.5, 2.0), 2, signs=(1,))
    for f in F:
        for g in F:
            a = Q.inner_h22(lambda y: LA.apply(ops["J+"], f, y, AN, guard=0), g, spec, C.SIMPLE)
            b = Q.inner_h22(f, lambda y: LA.apply(ops["J-"], g, y, AN, guard=0), spec, C.SIMPLE)
            assert abs(a - b) < 1e-8


def test_inner_s3c_box_and_bump():
    one = lambda x: np.ones(x.shape[1:], complex)
    v = Q.inner_s3c(one, one, bound=1.0).value
    assert v == pytest.approx(Q.s3c_box_volume(1.0), rel=1e-10)
    # |cos Theta sin Theta|^2 over (theta0, theta1); the real angles cancel the (2 pi)^2
    # prefactor and the two imaginary angle ranges give (2B)^2 = 4
    with mpmath.workdps(20):
        ref = mpmath.quad(lambda a, b: abs(mpmath.cos(a + 1j * b) * mpmath.sin(a + 1j * b)) ** 2,
                          [0, mpmath.pi / 2], [-1, 1])
    assert v == pytest.approx(4 * float(ref), rel=1e-8)

    def bump(x):
        y = np.imag(x[0]) ** 2 + np.imag(x[1]) ** 2 + np.imag(x[2]) ** 2
        return np.where(y < 0.25, np.exp(-1 / np.maximum(0.25 - y, 1e-300)), 0.0) * np.cos(x[0])
    # panel nodes inside |Im| < 1 are shared by both boxes; outside the bump vanishes
    a = Q.inner_s3c(bump, bump, Q.QuadratureSpec(s3c_theta_nodes=8, s3c_panel_nodes=6), bound=1.0).value
    b = Q.inner_s3c(bump, bump, Q.QuadratureSpec(s3c_theta_nodes=8, s3c_panel_nodes=6), bound=2.0).value
    assert abs(a - b) < 1e-6 * abs(a)


def test_principal_pair_diverges():
    f = R.SL2CFunction(R.SL2CLabel(0, 1j), 0, 0)
    probe = Q.s3c_divergence_probe(f, f, spec=SMALL_S3C)
    assert probe.diverging
    assert all(abs(b) > abs(a) for a, b in zip(probe.values, probe.values[1:]))


def test_inner_h22_examples():
    assert Q.inner_h22(psi(1, 0), psi(1, 0)) == pytest.approx(1, abs=1e-8)
    assert abs(Q.inner_h22(psi(1, 0), psi(1, 1))) < 1e-12
    f = psi(0.75, 0)
    assert Q.inner_h22(f, f, covering=C.Covering(2, 1)) == pytest.approx(1, abs=1e-6)


def test_inner_h22_rejections():
    with pytest.raises(Q.NonNormalizableError):
        Q.inner_h22(R.SU11ContFunction(R.SU11ContLabel(-0.25 + 1j, -0.25 + 1j)), psi(1, 0))
    with pytest.raises(ValueError):
        Q.inner_h22(psi(1, 0), psi(1, 0), covering=C.Covering(1, 2))


def test_i_ab_examples():
    assert Q.i_ab_closed(-2, 0) == pytest.approx(0.5)
    assert Q.i_ab_closed(-3, 1) == pytest.approx(0.25)
    want = math.gamma(0.5) * math.gamma(2) / (2 * math.gamma(2.5))
    assert Q.i_ab_closed(-2.5, -0.5) == pytest.approx(want, rel=1e-14)
    assert Q.i_ab_numeric(-2, 0) == pytest.approx(0.5, abs=1e-10)
    assert Q.i_ab_numeric(-3, 1) == pytest.approx(0.25, abs=1e-10)
    with pytest.raises(Q.DivergenceError, match="a \\+ b"):
        Q.i_ab_numeric(-1, 0)
    with pytest.raises(Q.DivergenceError, match="b ="):
        Q.i_ab_closed(-3, -1)


@given(st.floats(-8, -1.6), st.floats(-0.6, 2))
def test_i_ab_numeric_vs_mpmath(a, b):
    if not a + b < -1.1:
        return
    with mpmath.workdps(25):
        ref = mpmath.quad(lambda r: r ** (2 * a + 1) * (r * r - 1) ** b, [1, 2, mpmath.inf])
    assert Q.i_ab_numeric(a, b) == pytest.approx(float(ref), rel=1e-8)
    assert Q.i_ab_closed(a, b) == pytest.approx(float(ref), rel=1e-8)


def test_gram_examples():
    F = Q.su2_family(2)
    assert np.max(np.abs(Q.gram_matrix(F, "s3") - np.eye(len(F)))) < 1e-10
    F = Q.su11_disc_family((1, 1.5, 2), 3, signs=(1,))
    assert np.max(np.abs(Q.gram_matrix(F, "h22") - np.eye(len(F)))) < 1e-6
    F = Q.su11_disc_family((1, 1.5, 2), 3)
    Gm = Q.gram_matrix(F, "h22")
    h = len(F) // 2
    assert np.max(np.abs(Gm[:h, h:])) < 1e-8


def test_gram_mixed_covering():
    F = [psi(0.75, n) for n in range(2)] + [psi(1.5, n) for n in range(2)]
    assert Q._covering_of(F) == C.Covering(2, 1)
    assert np.max(np.abs(Q.gram_matrix(F, "h22") - np.eye(4))) < 1e-6


@pytest.mark.parametrize("s", [1.0, 2.0])
def test_radial_truncation_bound(s):
    f = psi(s, 1)
    consts = []
    for rho in (3.0, 4.0, 5.0):
        a = Q.inner_h22(f, f, Q.QuadratureSpec(rho_max=rho))
        b = Q.inner_h22(f, f, Q.QuadratureSpec(rho_max=rho + 1))
        consts.append(abs(b - a) / math.exp(-2 * (2 * s - 1) * rho))
        assert abs(b - a) <= Q.h22_tail_bound(f, f, rho) * (1 + 1e-9)
    # the change follows e^{-2(2s-1) rho_max} with a stable constant
    assert max(consts) / min(consts) < 1.5


def test_e2_window_probes():
    L = lambda p, s, n: R.E2Function(R.E2Label(p, s, n), "compact")
    assert abs(Q.inner_e2_windowed(L(1, 0.25, 0), L(1, 0.25, 2), 3.0)) < 1e-12
    v1 = Q.inner_e2_windowed(L(1, 0, 1), L(1, 0, 1), 5.0)
    v2 = Q.inner_e2_windowed(L(1, 0, 1), L(1, 0, 1), 10.0)
    assert v2 / v1 == pytest.approx(2, abs=1e-6)
    for T in (1, 10, 100, 1000):
        v = Q.inner_e2_windowed(L(1, 0, 0), L(1.25, 0, 0), T)
        # sinc envelope: the windowed Psi-integral is sin(2 dp T)/dp
        assert abs(v - math.sin(2 * 0.25 * T) / 0.25) < 1e-9
        assert abs(v) <= Q.e2_window_bound(1, 1.25)


def test_haar_density():
    assert Q.haar_e2_density(C.ConePoint(1)) == 1
    assert Q.haar_e2_density(C.ConePoint(4)) == 0.25
    assert Q.haar_e2_density(C.LogConePoint(0.3)) == 1


@given(st.integers(2, 40), st.floats(0.1, 5))
def test_rules_integrate_polynomials(n, b):
    x, w = Q.gauss_legendre(n, 0, b)
    assert np.sum(w * x ** (2 * n - 1)) == pytest.approx(b ** (2 * n) / (2 * n), rel=1e-12)
    x, w = Q.uniform_periodic(n, 2 * math.pi)
    assert abs(np.sum(w * np.exp(1j * (n - 1) * x))) < 1e-12


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        Q.QuadratureSpec(n_angle=1)
    with pytest.raises(ValueError):
        Q.QuadratureSpec(rho_max=-1.0)
    with pytest.raises(ValueError):
        Q.inner_e2_windowed(lambda x: x[0], lambda x: x[0], 0.0)
