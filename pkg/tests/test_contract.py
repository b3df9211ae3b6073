import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from harmreps import contract as K
from harmreps import coords as C
from harmreps import liealg as LA
from harmreps import repfun as R
from harmreps import sampling as S
from harmreps.fd import FDScheme


def pts(chart, n=40, seed=3):
    return S.random_points(chart, n, np.random.default_rng(seed))


def funcs(chart, k=3, seed=4):
    rng = np.random.default_rng(seed)
    return [S.band_limited(chart, rng) for _ in range(k)]


def table_residual(alg, fs, x, scheme=FDScheme()):
    return max(float(np.max(LA.commutator_residuals(alg.ops[a], alg.ops[b], alg.expected_operator(a, b), f, x, scheme)))
               for a, b in alg.pairs() for f in fs)


# --- su(2) -> e(2) ---


def test_eps_one_is_su2_table():
    x, fs = pts("s3"), funcs("s3")
    alg = K.su2_contracted_ops(1.0)
    assert alg.bracket("P+", "P-") == {"J": 2.0}
    base = LA.su2_realization()
    assert base.bracket("R+", "R-") == {"R0": 2}
    assert table_residual(alg, fs, x) < 1e-6


def test_contracted_table_at_small_eps():
    x, fs = pts("s3"), funcs("s3")
    assert table_residual(K.su2_contracted_ops(0.1), fs, x) < 1e-6


def test_e2_residual_quarters_when_eps_halves():
    x, fs = pts("s3"), funcs("s3")
    a = K.e2_table_residuals(0.1, fs, x)
    b = K.e2_table_residuals(0.05, fs, x)
    assert a[("P+", "P-")] / b[("P+", "P-")] == pytest.approx(4, rel=0.1)
    # the other brackets are already the e(2) ones
    assert max(v for k, v in a.items() if k != ("P+", "P-")) < 1e-6


def test_eps_must_be_positive():
    with pytest.raises(ValueError):
        K.su2_contracted_ops(0.0)


# --- su(1,1) -> e(2) ---


def test_radial_coefficient_at_r2():
    pp, pm = 0.7, 0.2
    c = K.su11_ops_at_r().ops["iJ+"](np.array([[2.0], [pp], [pm]]))[:, 0]
    assert c[0] == pytest.approx(0.5j * np.exp(1j * (pp - pm)) * -math.sqrt(3), abs=1e-14)


def test_su11_r_table():
    x, fs = pts("h22r"), funcs("h22r")
    x[0] = 3.0
    assert table_residual(K.su11_ops_at_r(), fs, x) < 1e-6


@pytest.mark.parametrize("eta", [1e-2, 1e-4, 1e-6])
def test_phi_minus_coefficient_diverges_at_r1(eta):
    r = 1 + eta
    c = K.su11_ops_at_r().ops["iJ+"](np.array([[r], [0.0], [0.0]]))[:, 0]
    assert abs(c[2]) == pytest.approx(0.5 * r / math.sqrt(r * r - 1), rel=1e-12)


def test_limit_j0_and_table():
    x = pts("h22r")
    lim = K.su11_limit_ops()
    c = lim.ops["J0"](x)
    assert np.allclose(c[0], 0) and np.allclose(c[1], -0.5j) and np.allclose(c[2], 0.5j)
    assert table_residual(lim, funcs("h22r"), x) < 1e-6


def test_contraction_curves():
    ang = pts("h22r", 20)[1:]
    f = funcs("h22r", 1)[0]
    rs = (4.0, 8.0, 16.0, 32.0)
    for gen in ("iJ+", "iJ-"):
        cur = K.contraction_residual_curve(gen, f, ang, rs)
        assert np.all(np.diff(cur.residuals) < 0)
        assert cur.exponent >= 1
        assert cur.to_dict()["generator"] == gen
    j0 = K.contraction_residual_curve("J0", f, ang, rs)
    assert max(j0.residuals) == 0.0 and j0.exponent is None


def test_radial_coefficient_mismatch():
    assert K.radial_coefficient_mismatch(pts("cone")) < 1e-12


@pytest.mark.parametrize("gen", ["iJ+", "iJ-", "J0"])
def test_coordinate_change_r_cosh_rho(gen):
    x = pts("h22")
    assert K.check_coordinate_change(funcs("h22", 1)[0], x, gen) < 1e-6


def test_fit_power():
    s = np.array([1.0, 2.0, 4.0, 8.0])
    assert K.fit_power(s, 3 * s ** -2) == pytest.approx(-2)
    assert K.fit_decay_exponent(s, 3 * s ** -2) == pytest.approx(2)
    assert K.fit_power([2.0], [1.0]) is None
    assert K.fit_power(s, [1.0, 0.0, 1.0, 1.0]) is None


@pytest.mark.parametrize("bad", [(0.5, 2.0), (4.0, 2.0), (2.0, 2.0)])
def test_r_samples_validation(bad):
    with pytest.raises(ValueError):
        K._check_increasing(bad)


# --- real forms ---


def test_substitution_twice_negates_ladder():
    a = K.real_form_substitution("sl2r->su2")
    twice = {k: a[k] * a[k] for k in a}
    assert twice == {"J0": 1, "J+": -1, "J-": -1}
    b = K.real_form_substitution("su2->sl2r")
    assert all(a[k] * b[k] == 1 for k in a)
    with pytest.raises(ValueError):
        K.real_form_substitution("su2->e2")


def test_transformed_bracket_flips_sign():
    alg = LA.su11_realization()
    new = K.transform_realization(alg, K.real_form_substitution("sl2r->su2"))
    (key, c), = alg.bracket("J+", "J-").items()
    assert new.bracket("J+", "J-") == {key: -c}
    assert new.bracket("J0", "J+") == alg.bracket("J0", "J+")
    # the rescaled operators satisfy the rescaled table
    assert table_residual(new, funcs("h22", 2), pts("h22")) < 1e-6


# --- cone charts ---


@given(st.floats(0.05, 20.0))
def test_log_then_psi_lands_on_unit_circle(r):
    lp = K.log_chart(C.ConePoint(r))
    psi = K.phi_to_psi(lp.phi)
    # psi is imaginary for real Phi; continuing to real psi gives unit modulus
    assert abs(K.r_of_psi(psi)) == pytest.approx(r, rel=1e-12)
    assert abs(K.r_of_psi(psi.imag)) == pytest.approx(1.0)


def test_compactify_r1():
    p = K.compactify(C.ConePoint(1.0, 0.3, 0.4))
    assert p.psi == 0 and (p.phiPlus, p.phiMinus) == (0.3, 0.4)


def test_apex_removed():
    with pytest.raises(C.RemovedSetError):
        K.log_chart(C.ConePoint(0.0))


@pytest.mark.parametrize("gen", ["P+", "P-", "J"])
def test_pushforward_log(gen):
    f = funcs("log", 1)[0]
    assert K.pushforward_mismatch(f, pts("cone"), gen) < 1e-10


@pytest.mark.parametrize("gen", ["P+", "P-", "J"])
def test_pushforward_compact(gen):
    f = funcs("log", 1)[0]
    assert K.compact_pushforward_mismatch(f, pts("compact"), gen) < 1e-10


def test_cone_lambda_is_weighted_log_lambda():
    lab = R.E2Label(0.7, 0.25, 2)
    x = pts("cone")
    xl = np.vstack([np.log(x[0]), x[1:]])
    cone = R.E2Function(lab, "cone")(x)
    log = R.E2Function(lab, "log")(xl)
    assert np.allclose(cone, log / math.sqrt(2 * math.pi), rtol=1e-13)
    # the log form is itself r^{2p} times a pure phase
    assert np.allclose(np.abs(log), x[0] ** (2 * 0.7), rtol=1e-13)


def test_flow_preserves_measure():
    assert K.flow_measure_drift("P++P-", np.array([1.2, 0.4, 2.0])) < 1e-6
    for fld in ("i(P+-P-)", "iJ"):
        assert K.flow_measure_drift(fld, np.array([0.9, 1.0, 0.5]), step=1e-2, steps=100) < 1e-6
