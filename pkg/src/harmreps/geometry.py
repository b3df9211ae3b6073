"""Coordinate Laplacians, line elements and the harmonicity checks.

Each Laplacian is coded from its coordinate display, term by term, rather
than assembled from a metric. Second derivatives come from pure-diagonal
central stencils; the charts here have diagonal metrics so no mixed
partials are needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import coords as C
from . import liealg as LA
from . import repfun as R
from .fd import FDScheme, gradient, second_diagonal

LAPLACIAN_GUARD = 1e-3
MANIFOLDS = ("s3c", "s3", "h22", "cone")


@dataclass(frozen=True)
class LaplacianSpec:
    manifold: str
    scheme: FDScheme = field(default_factory=FDScheme)
    guard: float = LAPLACIAN_GUARD

    def __post_init__(self):
        if self.manifold not in MANIFOLDS:
            raise ValueError(f"unknown manifold {self.manifold!r}; expected one of {MANIFOLDS}")
        if self.guard < LA.GUARD:
            raise ValueError(f"Laplacian guard {self.guard} is looser than the first-order guard {LA.GUARD}")

    def to_dict(self) -> dict:
        return {"manifold": self.manifold, "guard": self.guard, **self.scheme.to_dict()}


def _derivs(f, x, scheme: FDScheme):
    if scheme.backend == "analytic" and hasattr(f, "grad2"):
        return f.grad(x), f.grad2(x)
    return gradient(f, x, scheme.h, scheme.order), second_diagonal(f, x, scheme.h, scheme.order)


def _sphere_block(t, d1, d2, i):
    # (1/(c s)) d_t(c s d_t) + c^-2 d_+^2 + s^-2 d_-^2, with (c s)'/(c s) = cot t - tan t
    c, s = np.cos(t), np.sin(t)
    return d2[i] + (c / s - s / c) * d1[i] + d2[i + 1] / c ** 2 + d2[i + 2] / s ** 2


def laplacian_values(spec: LaplacianSpec, f, x) -> np.ndarray:
    """Laplacian of f at every point of x, shape (npts,)."""
    x = LA.as_points(x)
    LA._check_points(spec.manifold, x, spec.guard)
    d1, d2 = _derivs(f, x, spec.scheme)
    if spec.manifold == "s3":
        out = _sphere_block(x[0], d1, d2, 0)
    elif spec.manifold == "s3c":
        out = _sphere_block(x[0], d1, d2, 0) + _sphere_block(x[3], d1, d2, 3)
    elif spec.manifold == "h22":
        rho = x[0]
        ch, sh = np.cosh(rho), np.sinh(rho)
        out = -(d2[0] + (sh / ch + ch / sh) * d1[0]) + d2[1] / ch ** 2 - d2[2] / sh ** 2
    else:  # cone: -(1/r) d_r(r^3 d_r)
        r = x[0]
        out = -(r * r * d2[0] + 3 * r * d1[0])
    if not np.all(np.isfinite(out)):
        raise LA.NonFiniteError(f"non-finite Laplacian samples on {spec.manifold}")
    return out


def laplacian_apply(spec: LaplacianSpec, f, x) -> complex:
    """Laplacian at a single point."""
    return complex(laplacian_values(spec, f, x)[0])


def casimir_from_realization(alg: LA.AlgebraRealization, f, x, name: str | None = None,
                             scheme: FDScheme = FDScheme(), guard: float = LA.GUARD) -> np.ndarray:
    """Quadratic Casimir as nested first-order applications, pointwise."""
    if name is None:
        name = next(iter(alg.casimirs))
    return LA.quadratic_apply(alg, alg.casimirs[name], f, x, scheme, guard)


# --- harmonicity ----------------------------------------------------------------


def harmonic_constant(label: R.RepLabel) -> tuple[str, complex]:
    """(manifold, c) such that Delta f + c f = 0 for every member of the label."""
    if isinstance(label, R.SL2CLabel):
        return "s3c", 2 * (float(label.ell0) ** 2 + label.ell1 ** 2 - 1)
    if isinstance(label, R.SU2Label):
        ell = float(label.ell)
        return "s3", complex(4 * ell * (ell + 1))
    if isinstance(label, R.SU11DiscLabel):
        s = float(label.s)
        return "h22", complex(4 * s * (s - 1))
    if isinstance(label, R.SU11ContLabel):
        t = label.lam + label.mu
        return "h22", 4 * t * (t + 1)
    if isinstance(label, R.E2Label):
        p = float(label.p)
        return "cone", complex((2 + 2 * p) * 2 * p)
    raise TypeError(f"unknown label {label!r}")


def harmonic_residuals(label: R.RepLabel, weight, x, scheme: FDScheme = FDScheme(),
                       guard: float = LAPLACIAN_GUARD) -> np.ndarray:
    manifold, c = harmonic_constant(label)
    f = R.family_function(label, weight, form="cone")
    spec = LaplacianSpec(manifold, scheme, guard)
    x = LA.as_points(x)
    return np.abs(laplacian_values(spec, f, x) + c * f(x))


def harmonic_residual(label: R.RepLabel, weight, x, scheme: FDScheme = FDScheme(),
                      guard: float = LAPLACIAN_GUARD) -> float:
    """max |Delta f + c f| over the points of x."""
    return float(np.max(harmonic_residuals(label, weight, x, scheme, guard)))


@dataclass(frozen=True)
class Monomial:
    """z+^a z-^b zb-^c zb+^d on polarized S^3_C."""

    a: int
    b: int
    c: int
    d: int

    def __call__(self, x):
        sp = C.spinors(np.asarray(x))
        return sp["z+"] ** self.a * sp["z-"] ** self.b * sp["zb-"] ** self.c * sp["zb+"] ** self.d

    @property
    def constant(self) -> int:
        u, v = self.a + self.b, self.c + self.d
        return u * (u + 2) + v * (v + 2)


def monomial_residual(mono: Monomial, x, scheme: FDScheme = FDScheme()) -> float:
    x = LA.as_points(x)
    lap = laplacian_values(LaplacianSpec("s3c", scheme), mono, x)
    return float(np.max(np.abs(lap + mono.constant * mono(x))))


# --- line elements ----------------------------------------------------------------


def metric_line_element(manifold: str, x, dx) -> complex:
    """Quadratic form of the line element at x on displacement dx."""
    x = np.asarray(x, dtype=complex)
    dx = np.asarray(dx, dtype=complex)
    if manifold == "s3":
        c, s = np.cos(x[0]), np.sin(x[0])
        return complex(dx[0] ** 2 + c ** 2 * dx[1] ** 2 + s ** 2 * dx[2] ** 2)
    if manifold == "s3c":
        return metric_line_element("s3", x[:3], dx[:3]) + metric_line_element("s3", x[3:], dx[3:])
    if manifold == "h22":
        ch, sh = np.cosh(x[0]), np.sinh(x[0])
        return complex(-dx[0] ** 2 + ch ** 2 * dx[1] ** 2 - sh ** 2 * dx[2] ** 2)
    raise ValueError(f"no line element for manifold {manifold!r}")
