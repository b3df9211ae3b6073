import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from harmreps import coords as C
from harmreps import liealg as LA
from harmreps import repfun as R
from harmreps import sampling as S
from harmreps.fd import FDScheme

half = Fraction(1, 2)


def pts(chart, n=100, seed=1):
    return S.random_points(chart, n, np.random.default_rng(seed))


def test_sl2c_coefficients_and_table():
    alg = LA.sl2c_realization()
    c = alg.ops["L0"](pts("s3c", 5))
    assert np.allclose(c[1], -0.5j) and np.allclose(c[2], 0.5j) and np.allclose(c[3:], 0)
    assert alg.bracket("L0", "L+") == {"L+": 1}
    assert alg.bracket("L+", "Lb-") == {}


@pytest.mark.parametrize("name", ["sl2c", "su2", "su11", "e2"])
def test_tables_antisymmetric(name):
    from harmreps.suites import REALIZATIONS
    alg = REALIZATIONS[name]()
    for a in alg.ops:
        for b in alg.ops:
            ab, ba = alg.bracket(a, b), alg.bracket(b, a)
            assert set(ab) == set(ba) and all(ab[k] == -ba[k] for k in ab)


def test_r0_and_j0_coefficients():
    for alg, g in ((LA.su2_realization(), "R0"), (LA.su11_realization(), "J0")):
        c = alg.ops[g](pts(alg.chart, 7))
        assert np.allclose(c[0], 0) and np.allclose(c[1], -0.5j) and np.allclose(c[2], 0.5j)


def test_cone_p_plus_coefficient():
    x = pts("cone", 9)
    c = LA.e2_realization("cone").ops["P+"](x)
    assert np.allclose(c[0], -0.5j * np.exp(1j * (x[1] - x[2])) * x[0])
    assert np.allclose(c[1:], 0)


def test_apply_zero_and_single_mode():
    x = pts("s3", 20)
    f = lambda y: np.exp(1j * y[1])
    assert np.all(LA.apply(LA.zero_operator("s3"), f, x) == 0)
    got = LA.apply(LA.su2_realization().ops["R0"], f, x)
    assert np.max(np.abs(got - 0.5 * f(x))) < 1e-11


def test_apply_r_plus_on_spinor_and_highest_weight():
    x = pts("s3", 50)
    R_ = LA.su2_realization().ops
    lo = R.SU2Function(R.SU2Label(half), -half)
    hi = R.SU2Function(R.SU2Label(half), half)
    assert np.max(np.abs(LA.apply(R_["R+"], lo, x) - hi(x))) < 1e-9
    top = R.SU2Function(R.SU2Label(2), 2)
    assert np.max(np.abs(LA.apply(R_["R+"], top, x))) < 1e-9


def test_fd_and_analytic_backends_agree():
    x = pts("s3", 100)
    f = R.SU2Function(R.SU2Label(2), 1)
    for g in ("R+", "R-", "R0"):
        op = LA.su2_realization().ops[g]
        a = LA.apply(op, f, x, FDScheme())
        b = LA.apply(op, f, x, FDScheme(backend="analytic"))
        assert np.max(np.abs(a - b)) < 1e-8


def test_su11_j0_on_lowest_weight():
    x = pts("h22", 50)
    f = R.SU11DiscFunction(R.SU11DiscLabel(1, 1, 0))
    assert np.max(np.abs(LA.apply(LA.su11_realization().ops["J0"], f, x) - f(x))) < 1e-9


@pytest.mark.parametrize("p,s,n", [(1.0, 0.0, 0), (0.5, 0.25, 2), (1.5, -0.25, -1)])
def test_e2_actions(p, s, n):
    x = pts("cone", 50)
    ops = LA.e2_realization("cone").ops
    f = R.E2Function(R.E2Label(p, s, n))
    up = R.E2Function(R.E2Label(p, s, n + 1))
    assert np.max(np.abs(LA.apply(ops["J"], f, x) - (s + n) * f(x))) < 1e-9
    assert np.max(np.abs(LA.apply(ops["P+"], f, x) + 1j * p * up(x))) < 1e-8


def test_commutator_examples():
    x = pts("s3", 100)
    su2 = LA.su2_realization()
    f = R.SU2Function(R.SU2Label(1), 1)
    assert LA.commutator_residual(su2.ops["R+"], su2.ops["R-"], su2.expected_operator("R+", "R-"), f, x) < 1e-6
    e2 = LA.e2_realization("cone")
    lam = R.E2Function(R.E2Label(1, 0, 0))
    assert LA.commutator_residual(e2.ops["P+"], e2.ops["P-"], LA.zero_operator("cone"), lam, pts("cone")) < 1e-8
    sl = LA.sl2c_realization()
    mono = lambda y: C.spinors(y)["z+"] * C.spinors(y)["zb'-"]
    exp = sl.expected_operator("K+", "K-")
    assert sl.bracket("K+", "K-") == {"J0": -2}
    assert LA.commutator_residual(sl.ops["K+"], sl.ops["K-"], exp, mono, pts("s3c")) < 1e-6


def test_singular_points_rejected():
    su2 = LA.su2_realization()
    x = np.array([[0.0], [0.1], [0.2]])
    with pytest.raises(LA.SingularPointError):
        LA.apply(su2.ops["R+"], lambda y: y[0], x)
    with pytest.raises(LA.SingularPointError):
        LA.apply(LA.su11_realization().ops["J+"], lambda y: y[0], x)
    with pytest.raises(LA.SingularPointError):
        LA.apply(LA.e2_realization("cone").ops["P+"], lambda y: y[0], x)


def test_nonfinite_samples_raise():
    x = pts("s3", 5)
    with pytest.raises(LA.NonFiniteError):
        LA.apply(LA.su2_realization().ops["R0"], lambda y: np.full(y.shape[1:], np.nan), x)


@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_apply_is_linear(a, b):
    x = pts("h22", 20)
    op = LA.su11_realization().ops["J+"]
    f = R.SU11DiscFunction(R.SU11DiscLabel(1.5, 1, 1))
    g = S.band_limited("h22", np.random.default_rng(3))
    lhs = LA.apply(op, lambda y: a * f(y) + b * g(y), x)
    rhs = a * LA.apply(op, f, x) + b * LA.apply(op, g, x)
    assert np.max(np.abs(lhs - rhs)) < 1e-9 * (1 + abs(a) + abs(b))


def test_ladder_expected_examples():
    (c, t), = LA.ladder_expected(R.SU2Label(1), "R+", 0)
    assert c == pytest.approx(math.sqrt(2)) and t == 1
    assert R.c_coeff(R.SL2CLabel(0, 0), 1) == pytest.approx(1j * math.sqrt(1 / 3))
    for s in (1, 1.5, 2):
        assert LA.ladder_expected(R.SU11DiscLabel(s, 1, 0), "J-") == []
    # K0 three-term expansion: spins s-1, s, s+1
    lab = R.SL2CLabel(half, 1j)
    terms = LA.ladder_expected(lab, "K0", Fraction(3, 2), half)
    assert [w for _, w in terms] == [(half, half), (Fraction(3, 2), half), (Fraction(5, 2), half)]


@pytest.mark.parametrize("gen", ["J+", "J-", "J0", "K+", "K-", "K0"])
def test_sl2c_ladder_pointwise(gen):
    from harmreps.suites import ladder_residual
    x = pts("s3c", 60)
    for lab in (R.SL2CLabel(half, 1j), R.SL2CLabel(half, 2.5), R.SL2CLabel(1, 0.4 + 0.3j)):
        for s in lab.spins(Fraction(5, 2)):
            for m in R.SU2Label(s).weights():
                assert ladder_residual(lab, (s, m), gen, x, FDScheme()) < 1e-5


def test_spinor_table_examples():
    x = pts("s3c", 50)
    rows = {(g, src): r for g, src, r in LA.spinor_action_table(x)}
    assert len(rows) == 24 and max(rows.values()) < 1e-10
    table = {(g, src): (c, t) for g, src, c, t in LA.SPINOR_TABLE}
    assert table[("J+", "z+")] == (0, None)
    assert table[("J0", "zb'+")] == (-0.5, "zb'+")
    assert table[("Lb-", "zb-")] == (-1, "zb+")


def test_casimir_on_su2_family():
    from harmreps.geometry import casimir_from_realization
    x = pts("s3", 40)
    for ell in (half, 1, Fraction(3, 2)):
        f = R.SU2Function(R.SU2Label(ell), -ell)
        q = float(ell) * (float(ell) + 1)
        assert np.max(np.abs(casimir_from_realization(LA.su2_realization(), f, x) - q * f(x))) < 1e-6


def test_sl2c_casimirs_match_label():
    from harmreps.geometry import casimir_from_realization
    x = pts("s3c", 40)
    alg = LA.sl2c_realization()
    lab = R.SL2CLabel(half, 0.7 + 0.4j)
    f = R.SL2CFunction(lab, Fraction(3, 2), -half)
    for name, val in R.casimir_values(lab):
        got = casimir_from_realization(alg, f, x, name)
        assert np.max(np.abs(got - val * f(x))) < 1e-5 * np.max(np.abs(f(x)))
