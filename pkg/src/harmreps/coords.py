"""Charts, embeddings, removed sets and covering bookkeeping.

Four manifolds: the complex sphere S^3_C (six real angles), its real forms
S^3 and H_{2,2}, and the cone reached by contraction (plus its log and
compact charts). Angles are stored as given; reduction modulo a covering
happens only in `same_point` and `reduced`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np


class RemovedSetError(ValueError):
    """Point lies on an excluded circle, cylinder or apex."""


class _Universal:
    """Multiplicity of the universal cover of a circle factor."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "UNIVERSAL"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Universal, ())


UNIVERSAL = _Universal()
Multiplicity = Union[int, _Universal]


def _check_mult(q) -> Multiplicity:
    if q is UNIVERSAL:
        return q
    if isinstance(q, bool) or not isinstance(q, (int, np.integer)) or q < 1:
        raise ValueError(f"covering multiplicity must be a positive int or UNIVERSAL, got {q!r}")
    return int(q)


@dataclass(frozen=True)
class Covering:
    plus: Multiplicity = 1
    minus: Multiplicity = 1

    def __post_init__(self):
        object.__setattr__(self, "plus", _check_mult(self.plus))
        object.__setattr__(self, "minus", _check_mult(self.minus))

    def lcm(self, other: "Covering") -> "Covering":
        def one(a, b):
            if a is UNIVERSAL or b is UNIVERSAL:
                return UNIVERSAL
            return math.lcm(a, b)

        return Covering(one(self.plus, other.plus), one(self.minus, other.minus))

    def __str__(self) -> str:
        return f"({self.plus},{self.minus})"

    @classmethod
    def parse(cls, text: str) -> "Covering":
        parts = text.strip().strip("()").split(",")
        if len(parts) != 2:
            raise ValueError(f"covering must look like 'q+,q-', got {text!r}")

        def one(t):
            t = t.strip().lower()
            return UNIVERSAL if t in ("inf", "infinity", "universal") else int(t)

        return cls(one(parts[0]), one(parts[1]))


SIMPLE = Covering()


def _reduce_angle(phi: float, q: Multiplicity) -> float:
    if q is UNIVERSAL:
        return phi
    return math.fmod(phi, 2 * math.pi * q) % (2 * math.pi * q)


@dataclass(frozen=True)
class ComplexAngles:
    theta0: float
    theta1: float = 0.0
    phiP0: float = 0.0
    phiP1: float = 0.0
    phiM0: float = 0.0
    phiM1: float = 0.0

    def polarized(self) -> np.ndarray:
        """(Theta, Phi+, Phi-, conj Theta, conj Phi+, conj Phi-) as a (6,) array."""
        th = complex(self.theta0, self.theta1)
        pp = complex(self.phiP0, self.phiP1)
        pm = complex(self.phiM0, self.phiM1)
        return np.array([th, pp, pm, th.conjugate(), pp.conjugate(), pm.conjugate()])


@dataclass(frozen=True)
class S3Point:
    theta: float
    phiPlus: float = 0.0
    phiMinus: float = 0.0

    def coords(self) -> np.ndarray:
        return np.array([self.theta, self.phiPlus, self.phiMinus], dtype=float)


@dataclass(frozen=True)
class H22Point:
    rho: float
    phiPlus: float = 0.0
    phiMinus: float = 0.0
    covering: Covering = SIMPLE

    def coords(self) -> np.ndarray:
        return np.array([self.rho, self.phiPlus, self.phiMinus], dtype=float)


@dataclass(frozen=True)
class ConePoint:
    r: float
    phiPlus: float = 0.0
    phiMinus: float = 0.0
    covering: Covering = SIMPLE

    def coords(self) -> np.ndarray:
        return np.array([self.r, self.phiPlus, self.phiMinus], dtype=float)


@dataclass(frozen=True)
class LogConePoint:
    """Cone point in the chart Phi = log r (flat invariant measure)."""

    phi: float
    phiPlus: float = 0.0
    phiMinus: float = 0.0
    covering: Covering = SIMPLE

    def coords(self) -> np.ndarray:
        return np.array([self.phi, self.phiPlus, self.phiMinus], dtype=float)


@dataclass(frozen=True)
class CompactConePoint:
    psi: float
    phiPlus: float = 0.0
    phiMinus: float = 0.0
    covering: Covering = SIMPLE

    def coords(self) -> np.ndarray:
        return np.array([self.psi, self.phiPlus, self.phiMinus], dtype=float)


ChartPoint = Union[ComplexAngles, S3Point, H22Point, ConePoint, LogConePoint, CompactConePoint]


# --- polarized S^3_C coordinates, vectorized -------------------------------

def polarize(theta0, theta1, phiP0, phiP1, phiM0, phiM1) -> np.ndarray:
    """Real chart angles -> (6, n) polarized complex coordinates."""
    th = np.asarray(theta0) + 1j * np.asarray(theta1)
    pp = np.asarray(phiP0) + 1j * np.asarray(phiP1)
    pm = np.asarray(phiM0) + 1j * np.asarray(phiM1)
    return np.array([th, pp, pm, np.conj(th), np.conj(pp), np.conj(pm)])


def spinors(x: np.ndarray) -> dict[str, np.ndarray]:
    """The eight spinor coordinates on polarized S^3_C.

    Unbarred coordinates (Theta, Phi+-) carry z+-, zb'+-; barred ones carry
    z'+-, zb+-. On the physical slice zb = conj(z) and zb' = conj(z').
    """
    th, pp, pm, tb, pbp, pbm = x
    c, s = np.cos(th), np.sin(th)
    cb, sb = np.cos(tb), np.sin(tb)
    return {
        "z+": c * np.exp(1j * pp),
        "z-": s * np.exp(1j * pm),
        "zb'+": c * np.exp(-1j * pp),
        "zb'-": s * np.exp(-1j * pm),
        "z'+": cb * np.exp(1j * pbp),
        "z'-": sb * np.exp(1j * pbm),
        "zb+": cb * np.exp(-1j * pbp),
        "zb-": sb * np.exp(-1j * pbm),
    }


# --- embeddings --------------------------------------------------------------

def embed_s3c(p: ComplexAngles) -> tuple[complex, complex, complex, complex]:
    sp = spinors(p.polarized()[:, None])
    return (complex(sp["z+"][0]), complex(sp["z-"][0]), complex(sp["z'+"][0]), complex(sp["z'-"][0]))


def embed_s3(p: S3Point) -> tuple[complex, complex]:
    wp = math.cos(p.theta) * complex(math.cos(p.phiPlus), math.sin(p.phiPlus))
    wm = math.sin(p.theta) * complex(math.cos(p.phiMinus), math.sin(p.phiMinus))
    return wp, wm


def embed_h22(p: H22Point) -> tuple[complex, complex]:
    if not p.rho > 0:
        raise RemovedSetError(f"rho = {p.rho} lies on the removed circle rho = 0")
    zp = math.cosh(p.rho) * complex(math.cos(p.phiPlus), math.sin(p.phiPlus))
    zm = math.sinh(p.rho) * complex(math.cos(p.phiMinus), math.sin(p.phiMinus))
    return zp, zm


def embed_cone(p: ConePoint) -> tuple[complex, complex]:
    if not p.r > 0:
        raise RemovedSetError("r = 0 is the removed apex of the cone")
    return (p.r * complex(math.cos(p.phiPlus), math.sin(p.phiPlus)),
            p.r * complex(math.cos(p.phiMinus), math.sin(p.phiMinus)))


def h22_chart_inverse(zeta_plus: complex, zeta_minus: complex, tol: float = 1e-10) -> tuple[float, complex, complex]:
    a, b = abs(zeta_plus), abs(zeta_minus)
    if a <= 1.0:
        raise RemovedSetError(f"|zeta+| = {a} <= 1: removed circle")
    if abs(a * a - b * b - 1.0) > tol * max(1.0, a * a):
        raise ValueError(f"point is off H22: |zeta+|^2 - |zeta-|^2 = {a * a - b * b}")
    return a, zeta_plus / a, zeta_minus / math.sqrt(a * a - 1.0)


def h22_angles(zeta_plus: complex, zeta_minus: complex) -> tuple[float, float, float]:
    """(rho, phi+ mod 2pi, phi- mod 2pi) from an embedded point."""
    r, up, um = h22_chart_inverse(zeta_plus, zeta_minus)
    return (math.acosh(r), math.atan2(up.imag, up.real) % (2 * math.pi),
            math.atan2(um.imag, um.real) % (2 * math.pi))


def in_removed_set(p: ChartPoint) -> bool:
    if isinstance(p, ComplexAngles):
        return p.theta1 == 0 and (p.theta0 == 0 or p.theta0 == math.pi / 2)
    if isinstance(p, S3Point):
        return p.theta == 0 or p.theta == math.pi / 2
    if isinstance(p, H22Point):
        return p.rho == 0
    if isinstance(p, ConePoint):
        return p.r == 0
    if isinstance(p, (LogConePoint, CompactConePoint)):
        return False
    raise TypeError(f"not a chart point: {p!r}")


def reduced(p: ChartPoint) -> ChartPoint:
    """Representative with angles in the fundamental domain of its covering."""
    cov = getattr(p, "covering", SIMPLE)
    kw = {}
    for name, q in (("phiPlus", cov.plus), ("phiMinus", cov.minus)):
        if hasattr(p, name):
            kw[name] = _reduce_angle(getattr(p, name), q)
    return type(p)(**{**p.__dict__, **kw})


def same_point(a: ChartPoint, b: ChartPoint, tol: float = 1e-12) -> bool:
    if type(a) is not type(b) or getattr(a, "covering", None) != getattr(b, "covering", None):
        return False
    ra, rb = reduced(a), reduced(b)
    for k, va in ra.__dict__.items():
        if k == "covering":
            continue
        vb = rb.__dict__[k]
        diff = abs(va - vb)
        q = {"phiPlus": ra.covering.plus, "phiMinus": ra.covering.minus}.get(k)
        if q is not None and q is not UNIVERSAL:
            period = 2 * math.pi * q
            diff = min(diff, period - diff)
        if diff > tol:
            return False
    return True


def in_fundamental_domain(phi: float, q: Multiplicity) -> bool:
    return q is UNIVERSAL or 0.0 <= phi < 2 * math.pi * q


# --- small rational helpers used for covering decisions -----------------------

def as_rational(x, max_den: int = 10_000, tol: float = 1e-12) -> Fraction | None:
    """Exact Fraction if x is (numerically) rational with a small denominator."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    x = float(x)
    f = Fraction(x).limit_denominator(max_den)
    return f if abs(float(f) - x) <= tol * max(1.0, abs(x)) else None


def multiplicity_for_frequency(freq) -> Multiplicity:
    """Sheets needed so that e^{i freq phi} is single valued."""
    f = as_rational(freq)
    return UNIVERSAL if f is None else f.denominator
