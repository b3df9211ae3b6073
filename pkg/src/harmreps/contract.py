"""Contractions to e(2): su(2) by rescaling, su(1,1) by the r -> infinity limit.

Also the real-form substitution J+- -> -i J+- and the chart maps from the
cone to its log (Phi = log r) and compact (Psi = -i Phi) coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import coords as C
from . import liealg as LA
from .fd import FDScheme, Jet


# --- su(2) -> e(2) ---------------------------------------------------------------------


def su2_contracted_ops(epsilon: float) -> LA.AlgebraRealization:
    """J = R0, P+- = eps R+-, with [J, P+-] = +-P+- and [P+, P-] = 2 eps^2 J."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    base = LA.su2_realization().ops
    ops = {"J": LA.lincomb([(1, base["R0"])], "J"),
           "P+": LA.lincomb([(epsilon, base["R+"])], "P+"),
           "P-": LA.lincomb([(epsilon, base["R-"])], "P-")}
    table = {("J", "P+"): {"P+": 1}, ("J", "P-"): {"P-": -1}, ("P+", "P-"): {"J": 2 * epsilon ** 2}}
    return LA.AlgebraRealization(f"su2-contracted({epsilon!r})", "s3", ops, table, (("P+", "P-", "J"),))


def e2_table_residuals(epsilon: float, fs, x, scheme: FDScheme = FDScheme()) -> dict[tuple[str, str], float]:
    """Every bracket of the contracted operators measured against the e(2) table."""
    alg = su2_contracted_ops(epsilon)
    e2 = LA.AlgebraRealization("e2", "s3", alg.ops, dict(LA._table(LA._E2_TABLE)), alg.groups)
    out = {}
    jets = [Jet(f, x, scheme) for f in fs]
    for a, b in alg.pairs():
        exp = e2.expected_operator(a, b)
        out[(a, b)] = max(float(np.max(LA.commutator_residuals(alg.ops[a], alg.ops[b], exp, f, x, scheme, jet=j)))
                          for f, j in zip(fs, jets))
    return out


# --- su(1,1) -> e(2) ---------------------------------------------------------------------


def su11_ops_at_r() -> LA.AlgebraRealization:
    """iJ+-, J0 in (r, phi+, phi-) with r = cosh rho; the r-dependence sits in the coefficients."""

    def ijp(r, pp, pm):
        ph = 0.5j * np.exp(1j * (pp - pm))
        q = np.sqrt(r * r - 1)
        return (-ph * q, -1j * ph * q / r, 1j * ph * r / q)

    def ijm(r, pp, pm):
        ph = 0.5j * np.exp(1j * (pm - pp))
        q = np.sqrt(r * r - 1)
        return (ph * q, -1j * ph * q / r, 1j * ph * r / q)

    ops = {"iJ+": LA._op("iJ+", "h22r", ijp), "iJ-": LA._op("iJ-", "h22r", ijm), "J0": LA._j0("h22r")}
    tab = LA._su2_like("iJ+", "iJ-", "J0", 2)
    return LA.AlgebraRealization("su11-r", "h22r", ops, LA._table(tab), (("iJ+", "iJ-", "J0"),))


def su11_limit_ops() -> LA.AlgebraRealization:
    """The r -> infinity realization; same commutation table."""

    def ijp(r, pp, pm):
        ph = 0.5j * np.exp(1j * (pp - pm))
        return (-ph * r, -1j * ph + 0 * r, 1j * ph + 0 * r)

    def ijm(r, pp, pm):
        ph = 0.5j * np.exp(1j * (pm - pp))
        return (ph * r, -1j * ph + 0 * r, 1j * ph + 0 * r)

    ops = {"iJ+": LA._op("iJ+", "h22r", ijp), "iJ-": LA._op("iJ-", "h22r", ijm), "J0": LA._j0("h22r")}
    tab = LA._su2_like("iJ+", "iJ-", "J0", 2)
    return LA.AlgebraRealization("su11-limit", "h22r", ops, LA._table(tab), (("iJ+", "iJ-", "J0"),))


def check_coordinate_change(f_rho, x_rho, generator: str, scheme: FDScheme = FDScheme()) -> float:
    """Realization in r = cosh rho against the rho-chart one, on the same function."""
    fr = lambda y: f_rho(np.vstack([np.arccosh(y[0]), y[1:]]))
    y = np.vstack([np.cosh(x_rho[0]), x_rho[1:]])
    a = LA.apply(su11_ops_at_r().ops[generator], fr, y, scheme)
    src = LA.su11_realization().ops
    rho_op = 1j * src[generator[1:]] if generator.startswith("i") else src[generator]
    b = LA.apply(rho_op, f_rho, x_rho, scheme)
    return float(np.max(np.abs(a - b)))


@dataclass(frozen=True)
class ContractionCurve:
    generator: str
    samples: tuple[float, ...]
    residuals: tuple[float, ...]
    exponent: float | None

    def to_dict(self) -> dict:
        return {"generator": self.generator, "samples": list(self.samples),
                "residuals": list(self.residuals), "exponent": self.exponent}


def fit_power(samples, residuals) -> float | None:
    """k in residual ~ C * sample^k, least squares in log-log; None if undefined."""
    s, r = np.asarray(samples, float), np.asarray(residuals, float)
    if len(s) < 2 or np.any(r <= 0):
        return None
    return float(np.polyfit(np.log(s), np.log(r), 1)[0])


def fit_decay_exponent(samples, residuals) -> float | None:
    """k in residual ~ C * sample^(-k)."""
    k = fit_power(samples, residuals)
    return None if k is None else -k


def _check_increasing(samples):
    s = np.asarray(samples, float)
    if np.any(s <= 1):
        raise ValueError("r samples must exceed 1")
    if np.any(np.diff(s) <= 0):
        raise ValueError("r samples must be strictly increasing")


def contraction_residual_curve(generator: str, f, angles: np.ndarray, r_samples,
                               scheme: FDScheme = FDScheme()) -> ContractionCurve:
    """sup over the angle samples of |op_r f - op_inf f| at each radius r."""
    _check_increasing(r_samples)
    at_r, lim = su11_ops_at_r().ops[generator], su11_limit_ops().ops[generator]
    angles = np.asarray(angles, dtype=float)
    res = []
    for r in r_samples:
        x = np.vstack([np.full(angles.shape[1], float(r)), angles])
        d = LA.apply(at_r, f, x, scheme) - LA.apply(lim, f, x, scheme)
        res.append(float(np.max(np.abs(d))))
    return ContractionCurve(generator, tuple(float(r) for r in r_samples), tuple(res),
                            fit_decay_exponent(r_samples, res))


def radial_coefficient_mismatch(x) -> float:
    """Cone P+- against the d_r part of the r -> infinity iJ+- (as coefficient functions)."""
    x = LA.as_points(x)
    cone = LA.e2_realization("cone").ops
    lim = su11_limit_ops().ops
    return float(max(np.max(np.abs(cone[p](x)[0] - lim["i" + p.replace("P", "J")](x)[0])) for p in ("P+", "P-")))


# --- real forms -------------------------------------------------------------------------------


SUBSTITUTIONS = {
    "sl2r->su2": {"J0": 1, "J+": -1j, "J-": -1j},
    "su2->sl2r": {"J0": 1, "J+": 1j, "J-": 1j},
}


def real_form_substitution(direction: str) -> dict[str, complex]:
    """Generator scale factors: J0 -> J0, J+- -> -i J+- (or the inverse)."""
    if direction not in SUBSTITUTIONS:
        raise ValueError(f"direction must be one of {sorted(SUBSTITUTIONS)}")
    return dict(SUBSTITUTIONS[direction])


def transform_realization(alg: LA.AlgebraRealization, scales: dict[str, complex],
                          name: str | None = None) -> LA.AlgebraRealization:
    """Rescale generators g -> c_g g and carry the bracket table along."""
    ops = {k: LA.lincomb([(scales.get(k, 1), op)], k) for k, op in alg.ops.items()}
    table = {}
    for (a, b), rhs in alg.table.items():
        ca, cb = scales.get(a, 1), scales.get(b, 1)
        table[(a, b)] = {k: ca * cb * v / scales.get(k, 1) for k, v in rhs.items()}
    return LA.AlgebraRealization(name or alg.name + "'", alg.chart, ops, table, alg.groups, {})


def phi_to_psi(phi):
    """Psi = -i Phi; r = e^Phi becomes the unit-modulus e^{i Psi} for real Psi."""
    return -1j * np.asarray(phi)


def r_of_psi(psi):
    return np.exp(1j * np.asarray(psi))


def log_chart(point: C.ConePoint) -> C.LogConePoint:
    if C.in_removed_set(point) or point.r < 0:
        raise C.RemovedSetError("the apex r = 0 is removed")
    return C.LogConePoint(math.log(point.r), point.phiPlus, point.phiMinus, point.covering)


def compactify(point: C.ConePoint) -> C.CompactConePoint:
    """Cone point in the Psi chart, Psi = -i log r (purely imaginary off the compact slice)."""
    lp = log_chart(point)
    return C.CompactConePoint(complex(phi_to_psi(lp.phi)), lp.phiPlus, lp.phiMinus, lp.covering)


def pushforward_mismatch(f_log, x_cone, generator: str, scheme: FDScheme = FDScheme()) -> float:
    """|cone op (f o log) - (log-chart op f) o log| at the cone points."""
    x_cone = LA.as_points(x_cone)
    g = lambda y: f_log(np.vstack([np.log(y[0]), y[1:]]))
    x_log = np.vstack([np.log(x_cone[0]), x_cone[1:]])
    a = LA.apply(LA.e2_realization("cone").ops[generator], g, x_cone, scheme)
    b = LA.apply(LA.e2_realization("log").ops[generator], f_log, x_log, scheme)
    return float(np.max(np.abs(a - b)))


def compact_pushforward_mismatch(f_log, x_compact, generator: str, scheme: FDScheme = FDScheme()) -> float:
    """Compact op on h(Psi) = f(i Psi) against the log op on f, at Phi = i Psi."""
    x_compact = LA.as_points(x_compact)
    h = lambda y: f_log(np.vstack([1j * y[0], y[1:]]))
    a = LA.apply(LA.e2_realization("compact").ops[generator], h, x_compact, scheme)
    fl = lambda y: f_log(y)
    # derivative in Phi at complex Phi = i Psi: step along the real Phi axis
    x_log = np.vstack([1j * x_compact[0], x_compact[1:]])
    b = LA.apply(LA.e2_realization("log").ops[generator], fl, x_log, scheme)
    return float(np.max(np.abs(a - b)))


# --- measure invariance under the realized flows ----------------------------------------------


REAL_FIELDS = {
    # real vector fields spanned by the e(2) generators on the cone
    "P++P-": [(1, "P+"), (1, "P-")],
    "i(P+-P-)": [(1j, "P+"), (-1j, "P-")],
    "iJ": [(1j, "J")],
}


def _field(name: str):
    ops = LA.e2_realization("cone").ops
    op = LA.lincomb([(c, ops[g]) for c, g in REAL_FIELDS[name]], name)

    def v(x):
        c = op(x[:, None])[:, 0]
        if np.max(np.abs(c.imag)) > 1e-12:
            raise ValueError(f"{name} is not a real vector field")
        return c.real

    return v


def _jacobian(v, x, h: float = 1e-6) -> np.ndarray:
    cols = []
    for i in range(len(x)):
        e = np.zeros(len(x))
        e[i] = h
        cols.append((v(x + e) - v(x - e)) / (2 * h))
    return np.array(cols).T


def flow_measure_drift(field: str, x0, step: float = 1e-3, steps: int = 1000) -> float:
    """|rho(x_t) det(dx_t/dx_0) / rho(x_0) - 1| for the measure dr dphi+ dphi- / r (RK4)."""
    v = _field(field)
    x = np.asarray(x0, dtype=float).copy()
    M = np.eye(3)

    def rhs(x, M):
        return v(x), _jacobian(v, x) @ M

    for _ in range(steps):
        k1 = rhs(x, M)
        k2 = rhs(x + 0.5 * step * k1[0], M + 0.5 * step * k1[1])
        k3 = rhs(x + 0.5 * step * k2[0], M + 0.5 * step * k2[1])
        k4 = rhs(x + step * k3[0], M + step * k3[1])
        x = x + step / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        M = M + step / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
    r0 = float(np.asarray(x0)[0])
    return abs((1 / x[0]) * np.linalg.det(M) / (1 / r0) - 1)
