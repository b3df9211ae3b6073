"""Complex log-Gamma on the principal branch.

Lanczos approximation (g = 7, nine coefficients) for Re z >= 8, upward
recurrence with principal logarithms below that. The recurrence keeps
lgamma(z + 1) = log(z) + lgamma(z) exact, which is what makes the
result the principal branch (cut along the negative real axis).
"""

from __future__ import annotations

import math

import numpy as np

_G = 7.0
_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_SHIFT_TO = 8.0


class GammaPoleError(ArithmeticError):
    """Raised when a Gamma argument sits on a pole (0, -1, -2, ...)."""

    def __init__(self, arg: complex, where: str = ""):
        self.arg = arg
        msg = f"Gamma pole at argument {arg!r}"
        if where:
            msg += f" ({where})"
        super().__init__(msg)


def is_pole(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    re = z.real
    return (z.imag == 0) & (re <= 0) & (re == np.round(re))


def _lanczos(z: np.ndarray) -> np.ndarray:
    # valid for Re z >= 1/2; used only for Re z >= 8 here
    z = z - 1.0
    x = np.full(z.shape, _COEF[0], dtype=complex)
    for i in range(1, len(_COEF)):
        x = x + _COEF[i] / (z + i)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(x)


def lgamma(z):
    """Principal log-Gamma, vectorized. Poles return complex infinity."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=complex)
    pole = is_pole(z)
    ok = ~pole
    zz = z[ok]
    nshift = np.maximum(0, np.ceil(_SHIFT_TO - zz.real)).astype(int)
    acc = np.zeros(zz.shape, dtype=complex)
    w = zz.copy()
    for k in range(int(nshift.max()) if nshift.size else 0):
        m = nshift > k
        acc[m] += np.log(w[m])
        w[m] += 1.0
    out[ok] = _lanczos(w) - acc
    out[pole] = complex(np.inf, 0.0)
    return out[0] if scalar else out


def gamma(z):
    return np.exp(lgamma(z))


def rgamma(z):
    """1/Gamma(z); exact zero at the poles."""
    z = np.asarray(z, dtype=complex)
    out = np.exp(-lgamma(z))
    return np.where(is_pole(z), 0.0, out)


def log_factorial(n) -> float:
    """log(n!) for a nonnegative integer-valued n (int, float or Fraction)."""
    n = float(n)
    if n < 0 or n != round(n):
        raise ValueError(f"factorial needs a nonnegative integer, got {n}")
    return math.lgamma(n + 1.0)
