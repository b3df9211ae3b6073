"""Invariant inner products, radial integrals and Gram matrices.

Periodic angles use the uniform rule (exact for Fourier polynomials below
the Nyquist limit). Polar angles use Gauss-Legendre. The H_{2,2} radial
integral is taken in t = 1/cosh^2(rho) with a tanh-sinh rule, which copes
with the algebraic endpoint behaviour (1 - t)^b and t^c without tuning.

Separable integrands (both factors exposing `fp`, `fm`, `_radial`) are
integrated as a product of one-dimensional rules on the same nodes; other
callables go through the tensor grid in chunks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import coords as C
from . import repfun as R
from .special import lgamma


class DivergenceError(ArithmeticError):
    """The requested integral does not converge (or accumulated inf/nan)."""


class NonNormalizableError(ValueError):
    """A member of a Gram family has no finite norm under the product."""


@dataclass(frozen=True)
class QuadratureSpec:
    n_angle: int = 64          # uniform nodes per periodic angle
    n_theta: int = 64          # Gauss-Legendre nodes on [0, pi/2]
    ts_level: int = 96         # tanh-sinh: nodes k*h for |k| <= ts_level (underflowing ones dropped)
    ts_step: float = 1 / 16
    rho_max: float | None = None   # None: chosen from the tail bound
    tail_target: float = 1e-12
    window: float = 10.0       # E2 / universal-cover half-width
    window_nodes: int = 10     # Gauss-Legendre nodes per window panel
    covering: C.Covering | None = None
    # truncated S^3_C product
    s3c_bound: float = 1.0
    s3c_theta_nodes: int = 16
    s3c_panel_nodes: int = 8
    s3c_angle_nodes: int = 8
    chunk: int = 1 << 16

    def __post_init__(self):
        for name in ("n_angle", "n_theta", "ts_level", "window_nodes", "s3c_theta_nodes",
                     "s3c_panel_nodes", "s3c_angle_nodes"):
            if getattr(self, name) < 2:
                raise ValueError(f"{name} must be >= 2")
        if self.rho_max is not None and not self.rho_max > 0:
            raise ValueError("rho_max must be positive")
        if not self.window > 0 or not self.s3c_bound > 0:
            raise ValueError("window half-widths must be positive")

    def to_dict(self) -> dict:
        out = {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "covering"}
        out["covering"] = None if self.covering is None else str(self.covering)
        return out


# --- one-dimensional rules --------------------------------------------------------


@lru_cache(maxsize=None)
def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = w.flags.writeable = False
    return x, w


def gauss_legendre(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = _leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1), half * w


def composite_gl(n: int, a: float, b: float, panels: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = _leggauss(n)
    edges = np.linspace(a, b, panels + 1)
    lo, half = edges[:-1, None], 0.5 * np.diff(edges)[:, None]
    return (lo + half * (x + 1)).ravel(), (half * w).ravel()


def uniform_periodic(n: int, period: float) -> tuple[np.ndarray, np.ndarray]:
    return np.arange(n) * (period / n), np.full(n, period / n)


def _ts_fractions(level: int, step: float):
    """tanh-sinh abscissae on (0, 1) as (t, 1 - t, log weight); both distances exact."""
    k = np.arange(-level, level + 1) * step
    u = 0.5 * math.pi * np.sinh(k)
    au = np.abs(u)
    e = np.exp(-2 * au)
    small = e / (1 + e)
    left = np.where(u < 0, small, 1 - small)
    right = np.where(u < 0, 1 - small, small)
    log_cosh_u = au + np.log1p(e) - math.log(2.0)
    logw = math.log(step * 0.25 * math.pi) + np.log(np.cosh(k)) - 2 * log_cosh_u
    keep = small > 0
    return left[keep], right[keep], logw[keep]


def tanh_sinh(a: float, b: float, level: int = 64, step: float = 1 / 16) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on (a, b)."""
    left, _, logw = _ts_fractions(level, step)
    return a + (b - a) * left, (b - a) * np.exp(logw)


# --- integrand plumbing -------------------------------------------------------------


def _separable(f) -> bool:
    return isinstance(f, R._Separable)


def _radial_part(f, x0):
    return f.norm * f._radial(x0)[0]


def _phase(freq, phi):
    return np.exp(1j * freq * phi)


def _tensor(f, g, axes: list[tuple[np.ndarray, np.ndarray]], weight=None, chunk: int = 1 << 16,
            conj_first: bool = True) -> complex:
    """sum over the tensor grid of w * weight(x) * conj(f) g (or conj(g) f).

    Leading axes are looped over until the remaining block fits in `chunk`
    points, so the full grid is never held in memory.
    """
    sizes = [len(a) for a, _ in axes]
    split = 0
    while split < len(axes) - 1 and int(np.prod(sizes[split:])) > chunk:
        split += 1
    rest = axes[split:]
    grids = np.meshgrid(*[a for a, _ in rest], indexing="ij")
    x_rest = np.array([gr.ravel() for gr in grids])
    w_rest = np.prod([wt.ravel() for wt in np.meshgrid(*[w for _, w in rest], indexing="ij")], axis=0)
    total = 0j
    for idx in np.ndindex(*sizes[:split]):
        lead = [axes[k][0][i] for k, i in enumerate(idx)]
        wl = float(np.prod([axes[k][1][i] for k, i in enumerate(idx)]))
        xs = np.concatenate([np.repeat(np.array(lead)[:, None], x_rest.shape[1], axis=1), x_rest]) if lead else x_rest
        fv, gv = np.asarray(f(xs)), np.asarray(g(xs))
        prod = np.conj(fv) * gv if conj_first else np.conj(gv) * fv
        if weight is not None:
            prod = prod * weight(xs)
        total += wl * np.sum(w_rest * prod)
    if not np.isfinite(total):
        raise DivergenceError("non-finite accumulation in quadrature")
    return complex(total)


# --- S^3 ------------------------------------------------------------------------------


def _s3_axes(spec: QuadratureSpec):
    return [gauss_legendre(spec.n_theta, 0.0, math.pi / 2),
            uniform_periodic(spec.n_angle, 2 * math.pi), uniform_periodic(spec.n_angle, 2 * math.pi)]


def inner_s3(f, g, spec: QuadratureSpec = QuadratureSpec()) -> complex:
    """(1/2pi^2) int cos sin dtheta dphi+ dphi- conj(g) f."""
    axes = _s3_axes(spec)
    if _separable(f) and _separable(g):
        (th, wt), (pp, wp), (pm, wm) = axes
        rad = np.sum(wt * np.cos(th) * np.sin(th) * np.conj(_radial_part(g, th)) * _radial_part(f, th))
        ang = (np.sum(wp * np.conj(_phase(g.fp, pp)) * _phase(f.fp, pp))
               * np.sum(wm * np.conj(_phase(g.fm, pm)) * _phase(f.fm, pm)))
        return complex(rad * ang / (2 * math.pi ** 2))
    val = _tensor(f, g, axes, lambda x: np.cos(x[0]) * np.sin(x[0]), spec.chunk, conj_first=False)
    return val / (2 * math.pi ** 2)


# --- S^3_C (truncated) -------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedInner:
    value: complex
    bound: float
    nodes: int


def s3c_box_volume(bound: float) -> float:
    """(1,1) on the truncated box |theta1|, |phi+-1| <= B."""
    return bound ** 2 * math.pi / 8 * math.sinh(4 * bound)


def inner_s3c(f, g, spec: QuadratureSpec = QuadratureSpec(), bound: float | None = None) -> TruncatedInner:
    """Truncated S^3_C product; imaginary parts restricted to [-B, B].

    Real parts of the angles use Gauss-Legendre (theta0) and uniform rules
    (phi+-0); imaginary parts use Gauss-Legendre on unit-width panels, so the
    nodes inside a smaller box do not move when B doubles.
    """
    B = spec.s3c_bound if bound is None else float(bound)
    panels = max(1, math.ceil(2 * B - 1e-12))
    im = composite_gl(spec.s3c_panel_nodes, -B, B, panels)
    th0 = gauss_legendre(spec.s3c_theta_nodes, 0.0, math.pi / 2)
    ph0 = uniform_periodic(spec.s3c_angle_nodes, 2 * math.pi)
    axes = [th0, im, ph0, im, ph0, im]

    def lift(h):
        return lambda y: h(C.polarize(*y))

    def measure(y):
        th = y[0] + 1j * y[1]
        return np.abs(np.cos(th) * np.sin(th)) ** 2

    val = _tensor(lift(f), lift(g), axes, measure, spec.chunk) / (2 * math.pi) ** 2
    n = int(np.prod([len(a) for a, _ in axes]))
    return TruncatedInner(val, B, n)


@dataclass(frozen=True)
class DivergenceProbe:
    bounds: tuple[float, ...]
    values: tuple[complex, ...]
    diverging: bool


def s3c_divergence_probe(f, g, bounds=(0.5, 1.0, 1.5, 2.0), spec: QuadratureSpec = QuadratureSpec(),
                         rtol: float = 1e-6) -> DivergenceProbe:
    """Evaluate on nested boxes; flag growth that does not settle."""
    vals = [inner_s3c(f, g, spec, b).value for b in bounds]
    inc = np.abs(np.diff(vals))
    scale = max(abs(vals[-1]), 1e-300)
    diverging = bool(inc[-1] > rtol * scale and np.all(np.diff(inc) >= 0))
    return DivergenceProbe(tuple(bounds), tuple(vals), diverging)


# --- H_{2,2} ---------------------------------------------------------------------------


def i_ab_closed(a: float, b: float) -> float:
    """int_1^inf r^{2a+1} (r^2-1)^b dr = Gamma(1+b) Gamma(-a-b-1) / (2 Gamma(-a))."""
    if not a + b < -1:
        raise DivergenceError(f"I_ab diverges: a + b = {a + b} is not < -1")
    if not b > -1:
        raise DivergenceError(f"I_ab diverges: b = {b} is not > -1")
    lg = lgamma(1 + b) + lgamma(-a - b - 1) - lgamma(-a)
    return float(0.5 * np.exp(lg).real)


def i_ab_numeric(a: float, b: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Same integral by t = 1/r^2: (1/2) int_0^1 t^{-a-b-2} (1-t)^b dt."""
    if not a + b < -1:
        raise DivergenceError(f"I_ab diverges: a + b = {a + b} is not < -1")
    if not b > -1:
        raise DivergenceError(f"I_ab diverges: b = {b} is not > -1")
    t, one_minus, logw = _ts_fractions(spec.ts_level, spec.ts_step)
    val = 0.5 * np.sum(np.exp(logw + (-a - b - 2) * np.log(t) + b * np.log(one_minus)))
    if not np.isfinite(val):
        raise DivergenceError("non-finite accumulation in I_ab")
    return float(val)


def _pair_decay(f, g) -> float | None:
    """Large-r power A of |f g| ~ r^A, when both factors are cosh/sinh products."""
    if all(isinstance(h, R._CoshSinh) for h in (f, g)):
        return float(np.real(f.ea + f.eb + g.ea + g.eb))
    return None


def _check_h22_member(h):
    if isinstance(h, R.SU11ContFunction):
        raise NonNormalizableError(f"{h.label.key()}: continuous series has no product on a covering")
    if isinstance(h, R.SU11DiscFunction) and float(h.label.s) <= 0.5:
        raise NonNormalizableError(f"{h.label.key()}: discrete series needs s > 1/2")


def h22_rho_max(f, g, spec: QuadratureSpec) -> float:
    if spec.rho_max is not None:
        return spec.rho_max
    A = _pair_decay(f, g)
    if A is None:
        return 40.0
    if A >= -2:
        raise DivergenceError(f"integrand decays like r^{A}; r dr measure needs A < -2")
    # tail int_R^inf |N N| r^{A+1} dr = |N N| R^{A+2} / (-A-2)
    nn = abs(f.norm * g.norm) or 1.0
    R_ = (spec.tail_target * (-A - 2) / nn) ** (1 / (A + 2))
    return float(min(max(math.acosh(max(R_, 1.0 + 1e-12)), 1.0), 350.0))


def h22_tail_bound(f, g, rho_max: float) -> float | None:
    A = _pair_decay(f, g)
    if A is None:
        return None
    return abs(f.norm * g.norm) * math.cosh(rho_max) ** (A + 2) / (-A - 2)


def _radial_h22(rho_max: float, spec: QuadratureSpec):
    """rho nodes and weights for int_0^rho_max cosh sinh F drho (weight included)."""
    tmin = 1.0 / math.cosh(rho_max) ** 2
    left, right, logw = _ts_fractions(spec.ts_level, spec.ts_step)
    w = np.exp(logw)
    span = 1.0 - tmin
    t = tmin + span * left
    # sinh^2 rho = (1 - t) / t, with 1 - t taken from the exact complement
    rho = np.arcsinh(np.sqrt(span * right / t))
    return rho, 0.5 * span * w / t ** 2


def _covering_of(fs) -> C.Covering:
    cov = C.SIMPLE
    for h in fs:
        label = getattr(h, "label", None)
        if label is not None:
            cov = cov.lcm(R.covering_required(label))
    return cov


def inner_h22(f, g, spec: QuadratureSpec = QuadratureSpec(), covering: C.Covering | None = None) -> complex:
    """(1/q)(1/4pi^2) int cosh sinh drho dphi+ dphi- conj(f) g on the (q,1) covering.

    On the universal cover of phi+ the prefactor is 2/(2 pi)^2 and phi+ runs
    over [-window, window].
    """
    for h in (f, g):
        _check_h22_member(h)
    cov = covering or spec.covering or _covering_of((f, g))
    if cov.minus is C.UNIVERSAL or cov.minus != 1:
        raise ValueError(f"the H22 product is defined on (q,1) coverings, got {cov}")
    rho_max = h22_rho_max(f, g, spec)
    rad = _radial_h22(rho_max, spec)
    if cov.plus is C.UNIVERSAL:
        T = spec.window
        pa = composite_gl(spec.window_nodes, -T, T, max(1, math.ceil(2 * T)))
        pref = 2 / (2 * math.pi) ** 2
    else:
        pa = uniform_periodic(spec.n_angle * cov.plus, 2 * math.pi * cov.plus)
        pref = 1 / cov.plus / (2 * math.pi) ** 2
    ma = uniform_periodic(spec.n_angle, 2 * math.pi)
    if _separable(f) and _separable(g):
        (rho, wr), (pp, wp), (pm, wm) = rad, pa, ma
        r = np.sum(wr * np.conj(_radial_part(f, rho)) * _radial_part(g, rho))
        ang = (np.sum(wp * np.conj(_phase(f.fp, pp)) * _phase(g.fp, pp))
               * np.sum(wm * np.conj(_phase(f.fm, pm)) * _phase(g.fm, pm)))
        val = r * ang
        if not np.isfinite(val):
            raise DivergenceError("non-finite accumulation in H22 product")
        return complex(pref * val)
    return pref * _tensor(f, g, [rad, pa, ma], None, spec.chunk)


# --- Gram matrices ------------------------------------------------------------------------


def gram_matrix(functions: list, product: str, spec: QuadratureSpec = QuadratureSpec(),
                covering: C.Covering | None = None) -> np.ndarray:
    """Matrix G[i, j] = (f_i, f_j) under the named product ('s3' or 'h22')."""
    n = len(functions)
    if product == "h22":
        for h in functions:
            _check_h22_member(h)
        cov = covering or _covering_of(functions)
        pair = lambda a, b: inner_h22(a, b, spec, cov)
    elif product == "s3":
        pair = lambda a, b: inner_s3(b, a, spec)   # conj on the first slot
    else:
        raise ValueError(f"unknown product {product!r}")
    G = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            G[i, j] = pair(functions[i], functions[j])
            G[j, i] = np.conj(G[i, j])
    return G


def su2_family(lmax) -> list:
    out = []
    for k in range(int(2 * R.half_integer(lmax)) + 1):
        lab = R.SU2Label(Fraction(k, 2))
        out += [R.SU2Function(lab, m) for m in lab.weights()]
    return out


def su11_disc_family(spins, nmax: int, signs=(1, -1)) -> list:
    return [R.SU11DiscFunction(R.SU11DiscLabel(s, e, n)) for e in signs for s in spins for n in range(nmax + 1)]


# --- E2 --------------------------------------------------------------------------------------


def _window_axis(T: float, freq: float, spec: QuadratureSpec):
    panels = max(1, math.ceil(2 * T * max(1.0, abs(freq))))
    return composite_gl(spec.window_nodes, -T, T, panels)


def inner_e2_windowed(f, g, T: float, q: C.Multiplicity | None = None,
                      spec: QuadratureSpec = QuadratureSpec()) -> complex:
    """(1/q)(1/4pi^2) int_{-T}^{T} dPsi int_0^{2 pi q} dphi+ int_0^{2pi} dphi- conj(f) g.

    Compact-chart Lambda functions (or any callable of (Psi, phi+, phi-)).
    On the universal cover phi+ also runs over [-T, T] with prefactor 2/(2pi)^2.
    """
    if not T > 0:
        raise ValueError("window half-width must be positive")
    if q is None:
        q = C.SIMPLE.plus
        for h in (f, g):
            if _separable(h):
                q = C.Covering(q).lcm(C.Covering(C.multiplicity_for_frequency(np.real(h.fp)))).plus
    freq = 1.0
    if _separable(f) and _separable(g):
        freq = abs(getattr(f, "p", 1.0)) + abs(getattr(g, "p", 1.0))
    psi = _window_axis(T, freq, spec)
    if q is C.UNIVERSAL:
        pa = _window_axis(T, 1.0, spec)
        pref = 2 / (2 * math.pi) ** 2
    else:
        pa = uniform_periodic(spec.n_angle * q, 2 * math.pi * q)
        pref = 1 / q / (2 * math.pi) ** 2
    ma = uniform_periodic(spec.n_angle, 2 * math.pi)
    if _separable(f) and _separable(g):
        (ps, wps), (pp, wp), (pm, wm) = psi, pa, ma
        r = np.sum(wps * np.conj(_radial_part(f, ps)) * _radial_part(g, ps))
        ang = (np.sum(wp * np.conj(_phase(f.fp, pp)) * _phase(g.fp, pp))
               * np.sum(wm * np.conj(_phase(f.fm, pm)) * _phase(g.fm, pm)))
        return complex(pref * r * ang)
    return pref * _tensor(f, g, [psi, pa, ma], None, spec.chunk)


def e2_window_bound(p: float, p2: float) -> float:
    """|int_{-T}^{T} e^{2i(p2-p)Psi} dPsi| = |sin(2 dp T) / dp| <= 1/|dp|."""
    return 1.0 / abs(p2 - p)


def haar_e2_density(point) -> float:
    """Density of the invariant measure: 1/r on the cone, 1 in the log chart."""
    if isinstance(point, C.LogConePoint):
        return 1.0
    if not isinstance(point, C.ConePoint):
        raise TypeError(f"not a cone point: {point!r}")
    if C.in_removed_set(point) or point.r < 0:
        raise C.RemovedSetError("the apex r = 0 is removed")
    return 1.0 / point.r
