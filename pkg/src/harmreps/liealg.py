"""First-order differential realizations of sl(2,C), su(2), su(1,1) and e(2).

An `Operator` is a map from batched chart coordinates (ncoords, npts) to
coefficient vectors of the same shape; it acts as sum_i c_i d_i (no
zeroth-order term). `AlgebraRealization` bundles named operators with the
expected bracket table and the quadratic Casimir.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

import numpy as np

from . import coords as C
from . import repfun as R
from .fd import FDScheme, Jet, gradient

Coeffs = Callable[[np.ndarray], np.ndarray]

GUARD = 1e-4


class SingularPointError(ValueError):
    """Evaluation point within the guard radius of a singular locus."""


class NonFiniteError(ArithmeticError):
    """A finite-difference sample came back inf or nan."""


# --- singular loci -------------------------------------------------------------------


def _angle_guard(idx: tuple[int, ...]):
    def check(x: np.ndarray, guard: float) -> np.ndarray:
        bad = np.zeros(x.shape[1], dtype=bool)
        for i in idx:
            t = x[i]
            bad |= (np.abs(t) < guard) | (np.abs(t - math.pi / 2) < guard)
        return bad

    return check


def _radial_guard(at: float):
    def check(x: np.ndarray, guard: float) -> np.ndarray:
        return np.real(x[0]) - at < guard

    return check


def _no_guard(x: np.ndarray, guard: float) -> np.ndarray:
    return np.zeros(x.shape[1], dtype=bool)


SINGULAR = {
    "s3c": _angle_guard((0, 3)),
    "s3": _angle_guard((0,)),
    "h22": _radial_guard(0.0),
    "h22r": _radial_guard(1.0),
    "cone": _radial_guard(0.0),
    "log": _no_guard,
    "compact": _no_guard,
}
NCOORDS = {"s3c": 6, "s3": 3, "h22": 3, "h22r": 3, "cone": 3, "log": 3, "compact": 3}


# --- operators -----------------------------------------------------------------------


@dataclass(frozen=True)
class Operator:
    name: str
    chart: str
    coeffs: Coeffs

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.coeffs(np.asarray(x))

    def __add__(self, other: "Operator") -> "Operator":
        return lincomb([(1.0, self), (1.0, other)], f"({self.name}+{other.name})")

    def __sub__(self, other: "Operator") -> "Operator":
        return lincomb([(1.0, self), (-1.0, other)], f"({self.name}-{other.name})")

    def __rmul__(self, c: complex) -> "Operator":
        return lincomb([(c, self)], f"{c}*{self.name}")

    def __neg__(self) -> "Operator":
        return lincomb([(-1.0, self)], f"-{self.name}")


def zero_operator(chart: str) -> Operator:
    d = NCOORDS[chart]
    return Operator("0", chart, lambda x: np.zeros((d, np.asarray(x).shape[1]), dtype=complex))


def lincomb(terms: Iterable[tuple[complex, Operator]], name: str | None = None) -> Operator:
    terms = [(complex(c), op) for c, op in terms]
    if not terms:
        raise ValueError("empty linear combination; use zero_operator")
    chart = terms[0][1].chart
    if any(op.chart != chart for _, op in terms):
        raise ValueError("cannot combine operators on different charts")

    def coeffs(x):
        return sum(c * op.coeffs(x) for c, op in terms)

    if name is None:
        name = "+".join(f"{c}*{op.name}" for c, op in terms)
    return Operator(name, chart, coeffs)


def _op(name: str, chart: str, fn) -> Operator:
    """Operator from fn(*coords) -> tuple of coefficient arrays."""
    def coeffs(x):
        x = np.asarray(x, dtype=complex)
        out = fn(*x)
        return np.array([np.broadcast_to(c, x.shape[1]) for c in out], dtype=complex)

    return Operator(name, chart, coeffs)


def _check_points(chart: str, x: np.ndarray, guard: float):
    bad = SINGULAR[chart](x, guard)
    if np.any(bad):
        raise SingularPointError(f"{int(bad.sum())} point(s) within {guard} of the singular locus of {chart}")


def as_points(x) -> np.ndarray:
    """Chart point or array -> (ncoords, npts) complex array."""
    if isinstance(x, C.ComplexAngles):
        return x.polarized()[:, None]
    if hasattr(x, "coords"):
        return x.coords()[:, None].astype(complex)
    x = np.asarray(x, dtype=complex)
    return x[:, None] if x.ndim == 1 else x


def apply(op: Operator, f, x, scheme: FDScheme = FDScheme(), guard: float = GUARD) -> np.ndarray:
    """(op f)(x) for every point of x."""
    x = as_points(x)
    _check_points(op.chart, x, guard)
    if scheme.backend == "analytic" and hasattr(f, "grad"):
        g = f.grad(x)
    else:
        g = gradient(f, x, scheme.h, scheme.order)
    if not np.all(np.isfinite(g)):
        raise NonFiniteError(f"non-finite derivative samples applying {op.name}")
    return np.sum(op(x) * g, axis=0)


# --- realizations --------------------------------------------------------------------


Table = Mapping[tuple[str, str], Mapping[str, complex]]


@dataclass(frozen=True)
class AlgebraRealization:
    name: str
    chart: str
    ops: dict[str, Operator]
    table: dict[tuple[str, str], dict[str, complex]]
    groups: tuple[tuple[str, ...], ...]
    casimirs: dict[str, list[tuple[complex, str, str]]] = field(default_factory=dict)

    def __post_init__(self):
        for a, b in self.table:
            if (b, a) in self.table:
                raise ValueError(f"table lists both ({a},{b}) and ({b},{a})")

    def bracket(self, a: str, b: str) -> dict[str, complex]:
        """Expected [a, b] as {generator: coefficient}; antisymmetric by construction."""
        if a == b:
            return {}
        if (a, b) in self.table:
            return dict(self.table[(a, b)])
        if (b, a) in self.table:
            return {k: -v for k, v in self.table[(b, a)].items()}
        return {}

    def expected_operator(self, a: str, b: str) -> Operator:
        terms = [(c, self.ops[k]) for k, c in self.bracket(a, b).items()]
        return lincomb(terms, f"[{a},{b}]") if terms else zero_operator(self.chart)

    def pairs(self) -> list[tuple[str, str]]:
        out = []
        for grp in self.groups:
            for i, a in enumerate(grp):
                for b in grp[i + 1:]:
                    out.append((a, b))
        return out


def _table(entries: Iterable[tuple[str, str, dict[str, complex]]]) -> dict:
    return {(a, b): v for a, b, v in entries}


def _su2_like(plus: str, minus: str, zero: str, pm_coef: complex) -> list:
    """[0,+] = +, [0,-] = -, [+,-] = pm_coef * 0."""
    return [(zero, plus, {plus: 1}), (zero, minus, {minus: -1}), (plus, minus, {zero: pm_coef})]


def _l_ops(chart: str, barred: bool, prefix: str) -> dict[str, Operator]:
    i0 = 3 if barred else 0

    def pick(x):
        return x[i0], x[i0 + 1], x[i0 + 2]

    def place(th_c, pp_c, pm_c, n):
        z = np.zeros(n, dtype=complex)
        vals = [th_c, pp_c, pm_c]
        out = [z, z, z, z, z, z] if chart == "s3c" else [z, z, z]
        for k in range(3):
            out[(i0 if chart == "s3c" else 0) + k] = vals[k]
        return out

    def lp(*x):
        th, pp, pm = pick(x)
        ph = 0.5 * np.exp(1j * (pp - pm))
        return place(ph, -1j * ph * np.tan(th), -1j * ph / np.tan(th), th.shape[0])

    def lm(*x):
        th, pp, pm = pick(x)
        ph = 0.5 * np.exp(1j * (pm - pp))
        return place(-ph, -1j * ph * np.tan(th), -1j * ph / np.tan(th), th.shape[0])

    def l0(*x):
        th, _, _ = pick(x)
        n = th.shape[0]
        return place(np.zeros(n), -0.5j * np.ones(n), 0.5j * np.ones(n), n)

    return {prefix + "+": _op(prefix + "+", chart, lp), prefix + "-": _op(prefix + "-", chart, lm),
            prefix + "0": _op(prefix + "0", chart, l0)}


def sl2c_realization() -> AlgebraRealization:
    ops = {**_l_ops("s3c", False, "L"), **_l_ops("s3c", True, "Lb")}
    for t in ("+", "-", "0"):
        L, Lb = ops["L" + t], ops["Lb" + t]
        ops["J" + t] = lincomb([(1, L), (1, Lb)], "J" + t)
        ops["K" + t] = lincomb([(-1j, L), (1j, Lb)], "K" + t)
    tab = _su2_like("L+", "L-", "L0", 2) + _su2_like("Lb+", "Lb-", "Lb0", 2)
    tab += [(a, b, {}) for a in ("L+", "L-", "L0") for b in ("Lb+", "Lb-", "Lb0")]
    tab += [
        ("J0", "J+", {"J+": 1}), ("J0", "J-", {"J-": -1}),
        ("J0", "K+", {"K+": 1}), ("J0", "K-", {"K-": -1}),
        ("K0", "K+", {"J+": -1}), ("K0", "K-", {"J-": 1}),
        ("K0", "J+", {"K+": 1}), ("K0", "J-", {"K-": -1}),
        ("J+", "J-", {"J0": 2}), ("J+", "K-", {"K0": 2}),
        ("K+", "K-", {"J0": -2}), ("J-", "K+", {"K0": -2}),
        ("J0", "K0", {}), ("J+", "K+", {}), ("J-", "K-", {}),
    ]
    cas = {
        "Q1": [(1, "J0", "J0"), (0.5, "J+", "J-"), (0.5, "J-", "J+"),
               (-1, "K0", "K0"), (-0.5, "K+", "K-"), (-0.5, "K-", "K+")],
        "Q2": [(1, "J0", "K0"), (1, "K0", "J0"), (0.5, "J+", "K-"), (0.5, "J-", "K+"),
               (0.5, "K+", "J-"), (0.5, "K-", "J+")],
        "CL": [(1, "L0", "L0"), (0.5, "L+", "L-"), (0.5, "L-", "L+")],
        "CLb": [(1, "Lb0", "Lb0"), (0.5, "Lb+", "Lb-"), (0.5, "Lb-", "Lb+")],
        "CL+CLb": [(1, "L0", "L0"), (0.5, "L+", "L-"), (0.5, "L-", "L+"),
                   (1, "Lb0", "Lb0"), (0.5, "Lb+", "Lb-"), (0.5, "Lb-", "Lb+")],
    }
    groups = (("J+", "J-", "J0", "K+", "K-", "K0"), ("L+", "L-", "L0", "Lb+", "Lb-", "Lb0"))
    return AlgebraRealization("sl2c", "s3c", ops, _table(tab), groups, cas)


def su2_realization() -> AlgebraRealization:
    L = _l_ops("s3", False, "R")
    tab = _su2_like("R+", "R-", "R0", 2)
    cas = {"Q": [(1, "R0", "R0"), (0.5, "R+", "R-"), (0.5, "R-", "R+")]}
    return AlgebraRealization("su2", "s3", L, _table(tab), (("R+", "R-", "R0"),), cas)


def _j0(chart):
    return _op("J0", chart, lambda x0, x1, x2: (0, -0.5j, 0.5j))


def su11_realization() -> AlgebraRealization:
    def jp(rho, pp, pm):
        ph = 0.5 * np.exp(1j * (pp - pm))
        return (-ph, -1j * ph * np.tanh(rho), 1j * ph / np.tanh(rho))

    def jm(rho, pp, pm):
        ph = 0.5 * np.exp(1j * (pm - pp))
        return (ph, -1j * ph * np.tanh(rho), 1j * ph / np.tanh(rho))

    ops = {"J+": _op("J+", "h22", jp), "J-": _op("J-", "h22", jm), "J0": _j0("h22")}
    tab = _su2_like("J+", "J-", "J0", -2)
    cas = {"Q": [(1, "J0", "J0"), (-0.5, "J+", "J-"), (-0.5, "J-", "J+")]}
    return AlgebraRealization("su11", "h22", ops, _table(tab), (("J+", "J-", "J0"),), cas)


_E2_TABLE = [("J", "P+", {"P+": 1}), ("J", "P-", {"P-": -1}), ("P+", "P-", {})]


def e2_realization(form: str = "cone") -> AlgebraRealization:
    if form == "cone":
        kp = lambda r: -0.5j * r
        km = lambda r: 0.5j * r
    elif form == "log":
        kp = lambda r: -0.5j + 0 * r
        km = lambda r: 0.5j + 0 * r
    elif form == "compact":
        kp = lambda r: -0.5 + 0 * r
        km = lambda r: 0.5 + 0 * r
    else:
        raise ValueError(f"unknown e2 form {form!r}")

    def pp_(x0, pp, pm):
        return (kp(x0) * np.exp(1j * (pp - pm)), 0, 0)

    def pm_(x0, pp, pm):
        return (km(x0) * np.exp(1j * (pm - pp)), 0, 0)

    ops = {"P+": _op("P+", form, pp_), "P-": _op("P-", form, pm_),
           "J": _op("J", form, lambda x0, x1, x2: (0, -0.5j, 0.5j))}
    cas = {"Q": [(0.5, "P+", "P-"), (0.5, "P-", "P+")]}
    return AlgebraRealization(f"e2-{form}", form, ops, _table(_E2_TABLE), (("P+", "P-", "J"),), cas)


# --- brackets and Casimirs on functions ---------------------------------------------


def commutator_residuals(A: Operator, B: Operator, expected: Operator, f, x,
                         scheme: FDScheme = FDScheme(), guard: float = GUARD, jet: Jet | None = None) -> np.ndarray:
    """|A(Bf) - B(Af) - expected f| pointwise, nested central differences."""
    x = as_points(x)
    _check_points(A.chart, x, guard)
    jet = jet or Jet(f, x, scheme)
    val = jet.second(A.coeffs, B.coeffs) - jet.second(B.coeffs, A.coeffs) - jet.first(expected.coeffs)
    if not np.all(np.isfinite(val)):
        raise NonFiniteError(f"non-finite samples in [{A.name},{B.name}]")
    return np.abs(val)


def commutator_residual(A: Operator, B: Operator, expected: Operator, f, x,
                        scheme: FDScheme = FDScheme(), guard: float = GUARD) -> float:
    return float(np.max(commutator_residuals(A, B, expected, f, x, scheme, guard)))


def quadratic_apply(alg: AlgebraRealization, terms: list[tuple[complex, str, str]], f, x,
                    scheme: FDScheme = FDScheme(), guard: float = GUARD, jet: Jet | None = None) -> np.ndarray:
    x = as_points(x)
    _check_points(alg.chart, x, guard)
    jet = jet or Jet(f, x, scheme)
    return sum(c * jet.second(alg.ops[a].coeffs, alg.ops[b].coeffs) for c, a, b in terms)


# --- closed-form ladder actions ---------------------------------------------------------


def _sq(x) -> complex:
    return complex(np.sqrt(complex(x)))


def ladder_expected(label: R.RepLabel, generator: str, *weight) -> list[tuple[complex, object]]:
    """Right-hand side of a generator acting on one family member.

    Weights: SU2 (m,), SL2C (s, m); the other families carry n in the label
    and return target n values. Vanishing coefficients and off-lattice
    targets are dropped.
    """
    out: list[tuple[complex, object]] = []
    if isinstance(label, R.SU2Label):
        (m,) = weight
        m, ell = R.half_integer(m), label.ell
        if generator == "R+":
            out = [(_sq((ell - m) * (ell + m + 1)), m + 1)]
        elif generator == "R-":
            out = [(_sq((ell + m) * (ell - m + 1)), m - 1)]
        elif generator == "R0":
            out = [(complex(m), m)]
        else:
            raise KeyError(generator)
        return [(c, t) for c, t in out if c != 0 and abs(t) <= ell]
    if isinstance(label, R.SL2CLabel):
        s, m = (R.half_integer(w) for w in weight)
        l0, l1 = float(label.ell0), label.ell1
        sf, mf = float(s), float(m)
        cs, cs1 = R.c_coeff(label, s), R.c_coeff(label, s + 1)
        t = -1j * l0 * l1 / (sf * (sf + 1)) if s != 0 else 0j
        if generator == "J+":
            out = [(_sq((sf - mf) * (sf + mf + 1)), (s, m + 1))]
        elif generator == "J-":
            out = [(_sq((sf + mf) * (sf - mf + 1)), (s, m - 1))]
        elif generator == "J0":
            out = [(complex(mf), (s, m))]
        elif generator == "K+":
            out = [(cs * _sq((sf - mf) * (sf - mf - 1)), (s - 1, m + 1)),
                   (t * _sq((sf - mf) * (sf + mf + 1)), (s, m + 1)),
                   (cs1 * _sq((sf + mf + 1) * (sf + mf + 2)), (s + 1, m + 1))]
        elif generator == "K-":
            out = [(-cs * _sq((sf + mf) * (sf + mf - 1)), (s - 1, m - 1)),
                   (t * _sq((sf + mf) * (sf - mf + 1)), (s, m - 1)),
                   (-cs1 * _sq((sf - mf + 1) * (sf - mf + 2)), (s + 1, m - 1))]
        elif generator == "K0":
            out = [(cs * _sq((sf - mf) * (sf + mf)), (s - 1, m)),
                   (t * mf, (s, m)),
                   (-cs1 * _sq((sf + mf + 1) * (sf - mf + 1)), (s + 1, m))]
        else:
            raise KeyError(generator)
        top = label.spins()[-1] if label.finite else None

        def valid(ts, tm):
            return ts >= label.ell0 and abs(tm) <= ts and (top is None or ts <= top)

        return [(c, w) for c, w in out if c != 0 and valid(*w)]
    if isinstance(label, R.SU11DiscLabel):
        n, s, e = label.n, float(label.s), label.sign
        if generator == "J0":
            out = [(complex(e * (n + s)), n)]
        elif (generator == "J+") == (e > 0):
            out = [(e * _sq((n + 1) * (n + 2 * s)), n + 1)]
        elif generator in ("J+", "J-"):
            out = [(e * _sq(n * (n + 2 * s - 1)), n - 1)]
        else:
            raise KeyError(generator)
        return [(c, t) for c, t in out if c != 0 and t >= 0]
    if isinstance(label, R.SU11ContLabel):
        n, lam, mu = label.n, label.lam, label.mu
        if generator == "J+":
            out = [(_sq(2 * mu + n + 1) * _sq(n - 2 * lam), n + 1)]
        elif generator == "J-":
            out = [(_sq(2 * mu + n) * _sq(n - 1 - 2 * lam), n - 1)]
        elif generator == "J0":
            out = [(complex(n - lam + mu), n)]
        else:
            raise KeyError(generator)
        return [(c, t) for c, t in out if c != 0]
    if isinstance(label, R.E2Label):
        n, p, s = label.n, float(label.p), float(label.s)
        if generator == "P+":
            out = [(-1j * p, n + 1)]
        elif generator == "P-":
            out = [(1j * p, n - 1)]
        elif generator == "J":
            out = [(complex(s + n), n)]
        else:
            raise KeyError(generator)
        return [(c, t) for c, t in out if c != 0]
    raise TypeError(f"unknown label {label!r}")


def ladder_target(label: R.RepLabel, target):
    """Point-function for a target weight returned by `ladder_expected`."""
    if isinstance(label, R.SU2Label):
        return R.SU2Function(label, target)
    if isinstance(label, R.SL2CLabel):
        return R.SL2CFunction(label, *target)
    if isinstance(label, R.SU11DiscLabel):
        return R.SU11DiscFunction(R.SU11DiscLabel(label.s, label.sign, target))
    if isinstance(label, R.SU11ContLabel):
        return R.SU11ContFunction(R.SU11ContLabel(label.lam, label.mu, target))
    if isinstance(label, R.E2Label):
        return R.E2Function(R.E2Label(label.p, label.s, target))
    raise TypeError(f"unknown label {label!r}")


# --- spinor tables ----------------------------------------------------------------------

# (generator, spinor, coefficient, target spinor or None)
SPINOR_TABLE: tuple[tuple[str, str, float, str | None], ...] = (
    ("J+", "z+", 0, None), ("J+", "z-", 1, "z+"), ("J+", "zb'+", -1, "zb'-"), ("J+", "zb'-", 0, None),
    ("J-", "z+", 1, "z-"), ("J-", "z-", 0, None), ("J-", "zb'+", 0, None), ("J-", "zb'-", -1, "zb'+"),
    ("J0", "z+", 0.5, "z+"), ("J0", "z-", -0.5, "z-"), ("J0", "zb'+", -0.5, "zb'+"), ("J0", "zb'-", 0.5, "zb'-"),
    ("Lb+", "z'+", 0, None), ("Lb+", "z'-", 1, "z'+"), ("Lb+", "zb+", -1, "zb-"), ("Lb+", "zb-", 0, None),
    ("Lb-", "z'+", 1, "z'-"), ("Lb-", "z'-", 0, None), ("Lb-", "zb+", 0, None), ("Lb-", "zb-", -1, "zb+"),
    ("Lb0", "z'+", 0.5, "z'+"), ("Lb0", "z'-", -0.5, "z'-"), ("Lb0", "zb+", -0.5, "zb+"), ("Lb0", "zb-", 0.5, "zb-"),
)


def spinor_function(name: str):
    return lambda x: C.spinors(np.asarray(x))[name]


def spinor_action_table(x: np.ndarray, scheme: FDScheme = FDScheme()) -> list[tuple[str, str, float]]:
    """Residual of every spinor-table entry at the points x (polarized S^3_C)."""
    alg = sl2c_realization()
    sp = C.spinors(x)
    out = []
    for gen, src, coef, tgt in SPINOR_TABLE:
        lhs = apply(alg.ops[gen], spinor_function(src), x, scheme)
        rhs = coef * sp[tgt] if tgt is not None else 0.0
        out.append((gen, src, float(np.max(np.abs(lhs - rhs)))))
    return out
