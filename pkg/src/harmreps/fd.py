"""Central finite differences over batches of chart points.

Points are arrays of shape (ncoords, npts). A point-function takes such an
array and returns shape (npts,). Coordinates may be complex (the polarized
S^3_C chart steps each coordinate along the real axis of that coordinate).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

PointFunction = Callable[[np.ndarray], np.ndarray]

# first-derivative stencils: offsets, weights (times 1/h)
_D1 = {
    2: (np.array([-1.0, 1.0]), np.array([-0.5, 0.5])),
    4: (np.array([-2.0, -1.0, 1.0, 2.0]), np.array([1.0, -8.0, 8.0, -1.0]) / 12.0),
    6: (
        np.array([-3.0, -2.0, -1.0, 1.0, 2.0, 3.0]),
        np.array([-1.0, 9.0, -45.0, 45.0, -9.0, 1.0]) / 60.0,
    ),
}
# second-derivative stencils (times 1/h^2), centre included
_D2 = {
    2: (np.array([-1.0, 0.0, 1.0]), np.array([1.0, -2.0, 1.0])),
    4: (np.array([-2.0, -1.0, 0.0, 1.0, 2.0]), np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0),
    6: (
        np.array([-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]),
        np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0,
    ),
}


@dataclass(frozen=True)
class FDScheme:
    """Step sizes and order for every derivative in the package."""

    h: float = 1e-3
    h_outer: float = 2e-3
    order: int = 4
    backend: str = "fd"  # "fd" or "analytic"

    def __post_init__(self):
        if self.order not in _D1:
            raise ValueError(f"unsupported stencil order {self.order}")
        if self.h <= 0 or self.h_outer <= 0:
            raise ValueError("step sizes must be positive")
        if self.backend not in ("fd", "analytic"):
            raise ValueError(f"unknown backend {self.backend!r}")

    def to_dict(self) -> dict:
        return {"h": self.h, "h_outer": self.h_outer, "order": self.order, "backend": self.backend}


def _shifted(x: np.ndarray, offsets: np.ndarray, h: float) -> np.ndarray:
    """All points x + o*h*e_i, laid out as (ncoords, ncoords * noff * npts)."""
    d, n = x.shape
    k = len(offsets)
    big = np.broadcast_to(x[:, None, None, :], (d, d, k, n)).astype(complex)
    big[np.arange(d), np.arange(d)] += offsets[:, None] * h
    return big.reshape(d, d * k * n)


def gradient(f: PointFunction, x: np.ndarray, h: float = 1e-3, order: int = 4) -> np.ndarray:
    """Partial derivatives of f at each point, shape (ncoords, npts)."""
    x = np.asarray(x)
    d, n = x.shape
    off, w = _D1[order]
    vals = np.asarray(f(_shifted(x, off, h))).reshape(d, len(off), n)
    return np.einsum("k,dkn->dn", w, vals) / h


def second_diagonal(f: PointFunction, x: np.ndarray, h: float = 1e-3, order: int = 4) -> np.ndarray:
    """Pure second partials d^2 f / dx_i^2, shape (ncoords, npts)."""
    x = np.asarray(x)
    d, n = x.shape
    off, w = _D2[order]
    vals = np.asarray(f(_shifted(x, off, h))).reshape(d, len(off), n)
    return np.einsum("k,dkn->dn", w, vals) / (h * h)


class Jet:
    """First derivatives of f on the outer stencil around a batch of points.

    A nested application A(Bf)(x) only needs grad f on the outer stencil,
    so one evaluation of f serves every operator pair. The result is the
    same number a literal nested scheme produces (inner step h, outer h_outer).
    """

    def __init__(self, f: PointFunction, x: np.ndarray, scheme: FDScheme = FDScheme()):
        x = np.asarray(x, dtype=complex)
        self.x = x
        self.scheme = scheme
        self.d, self.n = x.shape
        self._off, self._w = _D1[scheme.order]
        self.points = np.concatenate([x, _shifted(x, self._off, scheme.h_outer)], axis=1)
        self.grad = gradient(f, self.points, scheme.h, scheme.order)
        self.value_grad = self.grad[:, : self.n]

    def first(self, coeffs: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """(Af)(x) for an operator given by its coefficient function."""
        return np.sum(coeffs(self.x) * self.value_grad, axis=0)

    def _outer_values(self, coeffs) -> np.ndarray:
        return np.sum(coeffs(self.points) * self.grad, axis=0)[self.n :]

    def second(self, coeffs_a, coeffs_b) -> np.ndarray:
        """A(Bf)(x), outer derivative by finite differences of Bf."""
        bf = self._outer_values(coeffs_b).reshape(self.d, len(self._off), self.n)
        dbf = np.einsum("k,dkn->dn", self._w, bf) / self.scheme.h_outer
        return np.sum(coeffs_a(self.x) * dbf, axis=0)
