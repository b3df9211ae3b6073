"""Representation functions, labels, Casimir values and unitarity classes.

Five families: Gel'fand functions psi on S^3_C, Phi on S^3, the discrete
and continuous Bargmann series Psi on H_{2,2}, and Lambda on the cone.
Every family member is a callable over batched chart coordinates, shape
(ncoords, npts). Members of the real-form families also carry exact first
and pure-second derivatives (`grad`, `grad2`) for the analytic backend.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from . import coords as C
from .special import GammaPoleError, is_pole, lgamma, log_factorial

# --- label helpers -----------------------------------------------------------


def half_integer(x, name: str = "value") -> Fraction:
    """Exact half-integer from int / float / Fraction / str input."""
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        f = x
    else:
        xf = float(x)
        f = Fraction(round(2 * xf), 2)
        if abs(float(f) - xf) > 1e-12:
            raise ValueError(f"{name} must be a half-integer, got {x!r}")
    if f.denominator not in (1, 2):
        raise ValueError(f"{name} must be a half-integer, got {x!r}")
    return f


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        if x.imag == 0:
            return repr(x.real)
        return repr(x)
    return repr(x)


def _real_half_int(z: complex) -> Fraction | None:
    if abs(z.imag) > 0:
        return None
    try:
        return half_integer(z.real)
    except ValueError:
        return None


class NonNormalizableWarning(UserWarning):
    """Discrete-series member with s <= 1/2: evaluated, but not in L^2."""


@dataclass(frozen=True)
class SL2CLabel:
    ell0: Fraction
    ell1: complex

    def __post_init__(self):
        l0 = half_integer(self.ell0, "ell0")
        l1 = complex(self.ell1)
        if l0 < 0:  # [l0, l1] ~ [-l0, -l1]
            l0, l1 = -l0, -l1
        object.__setattr__(self, "ell0", l0)
        object.__setattr__(self, "ell1", l1)

    @property
    def p(self) -> complex:
        return float(self.ell0) + self.ell1 - 1

    @property
    def q(self) -> complex:
        return -float(self.ell0) + self.ell1 - 1

    @property
    def finite(self) -> bool:
        l1 = _real_half_int(self.ell1)
        return l1 is not None and (l1 - self.ell0).denominator == 1 and abs(l1) >= self.ell0 + 1

    def spins(self, smax=None) -> list[Fraction]:
        """Spin content s = l0, l0+1, ... (capped at smax for infinite labels)."""
        top = abs(_real_half_int(self.ell1)) - 1 if self.finite else half_integer(smax, "smax")
        out, s = [], self.ell0
        while s <= top:
            out.append(s)
            s += 1
        return out

    def key(self) -> str:
        return f"SL2C({_fmt(self.ell0)},{_fmt(self.ell1)})"


@dataclass(frozen=True)
class SU2Label:
    ell: Fraction

    def __post_init__(self):
        ell = half_integer(self.ell, "ell")
        if ell < 0:
            raise ValueError("ell must be >= 0")
        object.__setattr__(self, "ell", ell)

    def weights(self) -> list[Fraction]:
        return [-self.ell + k for k in range(int(2 * self.ell) + 1)]

    def key(self) -> str:
        return f"SU2({_fmt(self.ell)})"


@dataclass(frozen=True)
class SU11DiscLabel:
    s: float
    sign: int = 1
    n: int = 0

    def __post_init__(self):
        if not float(self.s) > 0:
            raise ValueError("discrete series needs s > 0")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("n must be a nonnegative integer")
        object.__setattr__(self, "n", int(self.n))

    def key(self) -> str:
        return f"SU11Disc({_fmt(self.s)},{'+' if self.sign > 0 else '-'},{self.n})"


@dataclass(frozen=True)
class SU11ContLabel:
    lam: complex
    mu: complex
    n: int = 0

    def __post_init__(self):
        lam, mu, n = complex(self.lam), complex(self.mu), int(self.n)
        d = mu - lam
        if abs(d.imag) > 1e-12:
            raise ValueError(f"mu - lambda must be real, got {d}")
        # D_{lam,mu} ~ D_{lam+1/2, mu-1/2} with n -> n+1 (same function)
        while (mu - lam).real > 0.5:
            lam, mu, n = lam + 0.5, mu - 0.5, n + 1
        while (mu - lam).real <= -0.5:
            lam, mu, n = lam - 0.5, mu + 0.5, n - 1
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "n", n)

    def key(self) -> str:
        return f"SU11Cont({_fmt(self.lam)},{_fmt(self.mu)},{self.n})"


@dataclass(frozen=True)
class E2Label:
    p: float
    s: float = 0.0
    n: int = 0

    def __post_init__(self):
        if not (-0.5 < float(self.s) <= 0.5):
            raise ValueError(f"s must lie in (-1/2, 1/2], got {self.s}")
        if int(self.n) != self.n:
            raise ValueError("n must be an integer")
        object.__setattr__(self, "n", int(self.n))

    def key(self) -> str:
        return f"E2({_fmt(self.p)},{_fmt(self.s)},{self.n})"


RepLabel = Union[SL2CLabel, SU2Label, SU11DiscLabel, SU11ContLabel, E2Label]


def label_to_dict(label: RepLabel, **weights) -> dict:
    out = {"family": type(label).__name__, "key": label.key()}
    out.update({k: _fmt(v) for k, v in weights.items()})
    return out


# --- Gel'fand coefficients -----------------------------------------------------


def _check_sl2c_weight(label: SL2CLabel, s, m) -> tuple[Fraction, Fraction]:
    s, m = half_integer(s, "s"), half_integer(m, "m")
    if s < label.ell0 or (s - label.ell0).denominator != 1:
        raise ValueError(f"s = {s} is not on the spin lattice of {label.key()}")
    if abs(m) > s or (s - m).denominator != 1:
        raise ValueError(f"m = {m} is not a weight of spin {s}")
    if label.finite and s > label.spins()[-1]:
        raise ValueError(f"s = {s} exceeds the finite spin content of {label.key()}")
    return s, m


def a_coeff(label: SL2CLabel, s) -> complex:
    """A_s as a product of principal roots over j = l0+1 .. s.

    Equal to the Gamma-ratio square root up to the branch of the root; the
    product form stays finite on every valid lattice point, including the
    finite-dimensional labels where the Gamma form hits poles.
    """
    s = half_integer(s, "s")
    l1 = label.ell1
    a = complex(1.0)
    j = label.ell0 + 1
    while j <= s:
        den = np.sqrt(complex(float(j) + l1))
        if den == 0:
            raise GammaPoleError(-float(j), f"A_s of {label.key()} at s={s}")
        a *= np.sqrt(complex(float(j) - l1)) / den
        j += 1
    return complex(a)


def a_coeff_gamma(label: SL2CLabel, s) -> complex:
    """A_s from the Gamma-ratio formula, principal square root of the ratio."""
    s = float(half_integer(s, "s"))
    l0, l1 = abs(float(label.ell0)), label.ell1
    args = [s - l1 + 1, l0 + l1 + 1, s + l1 + 1, l0 - l1 + 1]
    for z in args:
        if is_pole(z):
            raise GammaPoleError(z, f"A_s of {label.key()}")
    lg = [lgamma(z) for z in args]
    return complex(np.sqrt(np.exp(lg[0] + lg[1] - lg[2] - lg[3])))


def c_coeff(label: SL2CLabel, s) -> complex:
    s = float(half_integer(s, "s"))
    l0, l1 = float(label.ell0), label.ell1
    if s <= l0:  # no spin s-1 below the bottom of the ladder
        return 0j
    return 1j / s * complex(np.sqrt(complex((s * s - l0 * l0) * (s * s - l1 * l1) / (4 * s * s - 1))))


def k_range(ell0, s, m) -> tuple[int, int]:
    ell0, s, m = half_integer(ell0), half_integer(s), half_integer(m)
    kmin = max(Fraction(0), -ell0 - m)
    kmax = min(s - ell0, s - m)
    if kmin.denominator != 1 or kmax.denominator != 1 or kmin > kmax:
        raise ValueError(f"empty k-range for l0={ell0}, s={s}, m={m}")
    return int(kmin), int(kmax)


# --- analytic point functions ---------------------------------------------------


class _Separable:
    """N * exp(i(a phi+ + b phi-)) * R(x0) on a three-coordinate real chart."""

    ncoords = 3

    def __init__(self, norm: complex, fp: complex, fm: complex):
        self.norm = complex(norm)
        self.fp = fp
        self.fm = fm

    # radial part: value, d log R, d^2 log R
    def _radial(self, x0):
        raise NotImplementedError

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x)
        r, _, _ = self._radial(x[0])
        return self.norm * np.exp(1j * (self.fp * x[1] + self.fm * x[2])) * r

    def grad(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x)
        f = self(x)
        _, d1, _ = self._radial(x[0])
        return np.array([d1 * f, 1j * self.fp * f, 1j * self.fm * f])

    def grad2(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x)
        f = self(x)
        _, d1, d2 = self._radial(x[0])
        return np.array([(d1 * d1 + d2) * f, -(self.fp ** 2) * f, -(self.fm ** 2) * f])


class SU2Function(_Separable):
    """Phi_{l,m} = N w+^{l+m} w-^{l-m} on S^3."""

    def __init__(self, label: SU2Label, m):
        m = half_integer(m, "m")
        ell = label.ell
        if abs(m) > ell or (ell - m).denominator != 1:
            raise ValueError(f"m = {m} is not a weight of spin {ell}")
        self.label, self.m = label, m
        self.a, self.b = int(ell + m), int(ell - m)
        lognorm = 0.5 * (log_factorial(2 * ell + 1) - log_factorial(ell + m) - log_factorial(ell - m))
        super().__init__(math.exp(lognorm), self.a, self.b)

    def _radial(self, t):
        c, s = np.cos(t), np.sin(t)
        val = c ** self.a * s ** self.b
        with np.errstate(divide="ignore", invalid="ignore"):
            d1 = -self.a * s / c + self.b * c / s
            d2 = -self.a / c ** 2 - self.b / s ** 2
        return val, d1, d2


class _CoshSinh(_Separable):
    def __init__(self, norm, fp, fm, ea, eb):
        super().__init__(norm, fp, fm)
        self.ea, self.eb = ea, eb

    def _radial(self, rho):
        ch, sh = np.cosh(rho), np.sinh(rho)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.exp(self.ea * np.log(ch + 0j) + self.eb * np.log(sh + 0j))
            d1 = self.ea * sh / ch + self.eb * ch / sh
            d2 = self.ea / ch ** 2 - self.eb / sh ** 2
        return val, d1, d2


class SU11DiscFunction(_CoshSinh):
    """Psi^{+-}_{s,n} on H_{2,2}."""

    def __init__(self, label: SU11DiscLabel):
        s, n = float(label.s), label.n
        if s <= 0.5:
            warnings.warn(f"{label.key()}: s <= 1/2 is not normalizable", NonNormalizableWarning, stacklevel=2)
        lg = 0.5 * (math.log(2.0) + lgamma(n + 2 * s) - lgamma(2 * s - 1) - lgamma(n + 1))
        norm = complex(np.exp(lg)) if not is_pole(2 * s - 1) else 0j
        fp = label.sign * (2 * s + n)
        fm = -label.sign * n
        self.label = label
        super().__init__(norm, fp, fm, -2 * s - n, n)


class SU11ContFunction(_CoshSinh):
    """Psi_{lambda,mu,n} on H_{2,2}, complex powers via the real logarithm."""

    def __init__(self, label: SU11ContLabel):
        lam, mu, n = label.lam, label.mu, label.n
        args = (n - 2 * lam, 2 * mu + n + 1, -2 * mu - 2 * lam - 1)
        for z in args:
            if is_pole(z):
                raise GammaPoleError(complex(z), f"normalization of {label.key()}")
        lg = 0.5 * (math.log(2.0) + lgamma(args[0]) - lgamma(args[1]) - lgamma(args[2]))
        self.label = label
        super().__init__(complex(np.exp(lg)), -(2 * lam - n), -(2 * mu + n), 2 * lam - n, 2 * mu + n)


class E2Function(_Separable):
    """Lambda_{p,s,n} in the cone, log (Phi = log r) or compact chart."""

    def __init__(self, label: E2Label, form: str = "cone"):
        p, s, n = float(label.p), float(label.s), label.n
        self.label, self.form, self.p = label, form, p
        if form == "cone":
            super().__init__(1 / math.sqrt(2 * math.pi), 2 * s + n, -n)
        elif form == "log":
            super().__init__(1.0, 2 * s + n, -n)
        elif form == "compact":
            # phase n + s (not n + 2s) in the compactified realization
            super().__init__(1.0, n + s, -n)
        else:
            raise ValueError(f"unknown E2 form {form!r}")

    def _radial(self, x0):
        p = self.p
        if self.form == "cone":
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.exp(2 * p * np.log(x0 + 0j)), 2 * p / x0, -2 * p / x0 ** 2
        if self.form == "log":
            return np.exp(2 * p * x0), 2 * p + 0 * x0, 0 * x0
        return np.exp(2j * p * x0), 2j * p + 0 * x0, 0 * x0


# --- S^3_C family ---------------------------------------------------------------


def _ipow_log(n: int, logx: np.ndarray) -> np.ndarray:
    return np.zeros_like(logx) if n == 0 else n * logx


class SL2CFunction:
    """psi^{s,m} of the label, on polarized S^3_C coordinates (6, npts)."""

    ncoords = 6

    def __init__(self, label: SL2CLabel, s, m):
        self.s, self.m = _check_sl2c_weight(label, s, m)
        self.label = label
        s, m, l0 = self.s, self.m, label.ell0
        self.kmin, self.kmax = k_range(l0, s, m)
        self.A = a_coeff(label, s)
        self.log_pref = 0.5 * (
            math.log(float(2 * s + 1))
            + log_factorial(s + m) + log_factorial(s - m) + log_factorial(s + l0) + log_factorial(s - l0)
        )
        self.power = label.ell1 - float(s) - 1
        self._terms = []
        for k in range(self.kmin, self.kmax + 1):
            e1, e2, e3, e4 = int(m + l0 + k), k, int(s - m - k), int(s - l0 - k)
            lf = log_factorial(e1) + log_factorial(e2) + log_factorial(e3) + log_factorial(e4)
            self._terms.append((e1, e2, e3, e4, lf))

    def base(self, x: np.ndarray) -> np.ndarray:
        th, pp, pm, tb, pbp, pbm = x
        return np.cos(th) * np.cos(tb) * np.exp(1j * (pp - pbp)) + np.sin(th) * np.sin(tb) * np.exp(1j * (pm - pbm))

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        th, pp, pm, tb, pbp, pbm = x
        with np.errstate(divide="ignore", invalid="ignore"):
            lz1 = np.log(np.cos(th)) + 1j * pp          # z+
            lz2 = np.log(np.sin(th)) + 1j * pm          # z-
            lb1 = np.log(np.cos(tb)) - 1j * pbp + 1j * np.pi  # -zb+
            lb2 = np.log(np.sin(tb)) - 1j * pbm          # zb-
            logs = np.array([
                _ipow_log(e1, lz1) + _ipow_log(e2, lb1) + _ipow_log(e3, lz2) + _ipow_log(e4, lb2) - lf
                for e1, e2, e3, e4, lf in self._terms
            ])
        re = np.where(np.isnan(logs.real), -np.inf, logs.real)
        top = np.max(re, axis=0)
        safe_top = np.where(np.isfinite(top), top, 0.0)
        scaled = np.exp(np.where(np.isfinite(re), logs - safe_top, -np.inf))
        order = np.argsort(np.abs(scaled), axis=0)
        total = np.sum(np.take_along_axis(scaled, order, axis=0), axis=0)
        total = np.where(np.isfinite(top), total * np.exp(safe_top), 0.0)
        b = self.base(x)
        factor = np.exp(self.power * np.log(b)) if self.power != 0 else 1.0
        return self.A * math.exp(self.log_pref) * factor * total


def psi_homogeneous(label: SL2CLabel, s, m, z1, z2, zb1, zb2) -> np.ndarray:
    """eq-for-eq homogeneous form: direct powers of the four spinor variables."""
    s, m = _check_sl2c_weight(label, s, m)
    l0 = label.ell0
    kmin, kmax = k_range(l0, s, m)
    z1, z2, zb1, zb2 = (np.asarray(v, dtype=complex) for v in (z1, z2, zb1, zb2))
    tot = 0j
    for k in range(kmin, kmax + 1):
        e1, e3, e4 = int(m + l0 + k), int(s - m - k), int(s - l0 - k)
        den = math.factorial(e1) * math.factorial(k) * math.factorial(e3) * math.factorial(e4)
        tot = tot + z1 ** e1 * (-zb1) ** k * z2 ** e3 * zb2 ** e4 / den
    pref = a_coeff(label, s) * math.sqrt(
        (2 * s + 1) * math.factorial(int(s + m)) * math.factorial(int(s - m))
        * math.factorial(int(s + l0)) * math.factorial(int(s - l0))
    )
    base = z1 * zb1 + z2 * zb2
    return pref * base ** (label.ell1 - float(s) - 1) * tot


# --- point-level API --------------------------------------------------------------


def psi_sl2c(label: SL2CLabel, s, m, point: C.ComplexAngles) -> complex:
    f = SL2CFunction(label, s, m)
    x = point.polarized()[:, None]
    b = complex(f.base(x)[0])
    if not (abs(b.imag) <= 1e-12 * abs(b) and b.real > 0):
        raise ValueError(f"(Z Zbar) base {b} is not positive; pass a point of the physical slice")
    return complex(f(x)[0])


def phi_su2(label: SU2Label, m, point: C.S3Point) -> complex:
    return complex(SU2Function(label, m)(point.coords()[:, None])[0])


def _check_covering(label: RepLabel, cov: C.Covering):
    need = covering_required(label)
    for have, want in ((cov.plus, need.plus), (cov.minus, need.minus)):
        if want is C.UNIVERSAL:
            ok = have is C.UNIVERSAL
        else:
            ok = have is C.UNIVERSAL or have % want == 0
        if not ok:
            raise ValueError(f"{label.key()} needs covering {need}, point carries {cov}")


def psi_su11_disc(label: SU11DiscLabel, point: C.H22Point) -> complex:
    _check_covering(label, point.covering)
    return complex(SU11DiscFunction(label)(point.coords()[:, None])[0])


def psi_su11_cont(label: SU11ContLabel, point: C.H22Point) -> complex:
    _check_covering(label, point.covering)
    return complex(SU11ContFunction(label)(point.coords()[:, None])[0])


def lambda_e2(label: E2Label, point) -> complex:
    if isinstance(point, C.ConePoint):
        if C.in_removed_set(point):
            raise C.RemovedSetError("the apex r = 0 is removed")
        form = "cone"
    elif isinstance(point, C.LogConePoint):
        form = "log"
    elif isinstance(point, C.CompactConePoint):
        form = "compact"
    else:
        raise TypeError(f"not a cone point: {point!r}")
    _check_covering(label, point.covering)
    return complex(E2Function(label, form)(point.coords()[:, None])[0])


# --- label-level facts --------------------------------------------------------------


def casimir_values(label: RepLabel) -> list[tuple[str, complex]]:
    if isinstance(label, SL2CLabel):
        l0, l1 = float(label.ell0), label.ell1
        return [("Q1", l0 * l0 + l1 * l1 - 1), ("Q2", -2j * l0 * l1)]
    if isinstance(label, SU2Label):
        ell = float(label.ell)
        return [("Q", complex(ell * (ell + 1)))]
    if isinstance(label, SU11DiscLabel):
        s = float(label.s)
        return [("Q", complex(s * (s - 1)))]
    if isinstance(label, SU11ContLabel):
        t = label.lam + label.mu
        return [("Q", t * (t + 1))]
    if isinstance(label, E2Label):
        return [("Q", complex(float(label.p) ** 2))]
    raise TypeError(f"unknown label {label!r}")


def unitary_class(label: RepLabel) -> str:
    if isinstance(label, SL2CLabel):
        l1 = label.ell1
        if label.finite:
            return "finite-dimensional"
        if l1.real == 0:
            return "principal"
        if label.ell0 == 0 and l1.imag == 0 and 0 < l1.real <= 1:
            return "complementary"
        return "non-unitary"
    if isinstance(label, SU2Label):
        return "finite-dimensional"
    if isinstance(label, SU11DiscLabel):
        return "discrete-normalizable" if float(label.s) > 0.5 else "discrete-non-normalizable"
    if isinstance(label, SU11ContLabel):
        t = label.lam + label.mu
        d = (label.mu - label.lam).real
        if abs(t.real + 0.5) < 1e-12 and t.imag != 0:
            return "principal"
        if t.imag == 0 and abs(t.real + 0.5) < 0.5 - abs(d):
            return "supplementary"
        return "non-unitary"
    if isinstance(label, E2Label):
        return "finite-dimensional" if float(label.p) == 0 else "principal"
    raise TypeError(f"unknown label {label!r}")


def covering_required(label: RepLabel) -> C.Covering:
    """Sheets needed so that every member's phase is single valued."""
    if isinstance(label, (SU2Label, SL2CLabel)):
        return C.SIMPLE
    if isinstance(label, SU11DiscLabel):
        return C.Covering(C.multiplicity_for_frequency(2 * label.s), 1)
    if isinstance(label, E2Label):
        return C.Covering(C.multiplicity_for_frequency(2 * label.s), 1)
    if isinstance(label, SU11ContLabel):
        return C.Covering(
            C.multiplicity_for_frequency(2 * label.lam.real),
            C.multiplicity_for_frequency(2 * label.mu.real),
        )
    raise TypeError(f"unknown label {label!r}")


def family_function(label: RepLabel, weight=None, form: str = "cone"):
    """Point-function for a label (plus weight where the label lacks one)."""
    if isinstance(label, SL2CLabel):
        s, m = weight
        return SL2CFunction(label, s, m)
    if isinstance(label, SU2Label):
        return SU2Function(label, weight)
    if isinstance(label, SU11DiscLabel):
        return SU11DiscFunction(label)
    if isinstance(label, SU11ContLabel):
        return SU11ContFunction(label)
    if isinstance(label, E2Label):
        return E2Function(label, form)
    raise TypeError(f"unknown label {label!r}")
