"""Seeded random points and band-limited test functions per chart.

Sampling boxes keep a margin from the singular loci of each chart: the
nested first-order stencils differentiate tan/cot (or tanh/coth) once more,
and their high derivatives grow quickly near the poles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import coords as C

TWO_PI = 2 * math.pi

# (low, high) for the non-periodic coordinate of each chart
RADIAL_BOX = {
    "s3": (0.4, 1.17),
    "s3c": (0.4, 1.17),
    "h22": (0.3, 2.0),
    "h22r": (1.5, 4.0),
    "cone": (0.5, 2.0),
    "log": (-1.0, 1.0),
    "compact": (0.0, TWO_PI),
}
S3C_IMAG = 0.25


def random_points(chart: str, n: int, rng: np.random.Generator) -> np.ndarray:
    """(ncoords, n) points inside the sampling box of the chart."""
    lo, hi = RADIAL_BOX[chart]
    if chart == "s3c":
        u = lambda a, b: rng.uniform(a, b, n)
        return C.polarize(u(lo, hi), u(-S3C_IMAG, S3C_IMAG), u(0, TWO_PI), u(-S3C_IMAG, S3C_IMAG),
                          u(0, TWO_PI), u(-S3C_IMAG, S3C_IMAG))
    return np.array([rng.uniform(lo, hi, n), rng.uniform(0, TWO_PI, n), rng.uniform(0, TWO_PI, n)])


@dataclass(frozen=True)
class BandLimited:
    """sum_j c_j exp(i k_j . angles) * (1 + a_j u + b_j u^2 [+ c_j y]).

    u is the radial coordinate (or 1/r on the 'h22r' chart); on S^3_C y is
    the barred polar angle and the angles are the four Phi coordinates.
    Coefficients are scaled to unit l1 mass.
    """

    chart: str
    freqs: np.ndarray
    coefs: np.ndarray
    poly: np.ndarray

    def __call__(self, x):
        x = np.asarray(x)
        if self.chart == "s3c":
            ang, u, y = x[[1, 2, 4, 5]], x[0], x[3]
        else:
            ang, u, y = x[1:3], x[0], 0.0
        if self.chart == "h22r":
            u = 1.0 / u
        total = 0j
        for k, c, (a, b, d) in zip(self.freqs, self.coefs, self.poly):
            total = total + c * np.exp(1j * np.tensordot(k, ang, axes=1)) * (1 + a * u + 0.5 * b * u * u + d * y)
        return total


def band_limited(chart: str, rng: np.random.Generator, terms: int = 3, kmax: int = 2) -> BandLimited:
    nang = 4 if chart == "s3c" else 2
    freqs = rng.integers(-kmax, kmax + 1, size=(terms, nang))
    coefs = rng.normal(size=terms) + 1j * rng.normal(size=terms)
    coefs = coefs / np.abs(coefs).sum()
    poly = rng.uniform(-1, 1, size=(terms, 3))
    if chart != "s3c":
        poly[:, 2] = 0.0
    return BandLimited(chart, freqs, coefs, poly)
