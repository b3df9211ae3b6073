"""Verification suites; each returns a list of CheckReport.

Every suite draws its random points from its own generator seeded with
(seed, suite index), so running suites in a different order or on their
own yields the same reports.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from typing import Callable

import numpy as np

from . import coords as C
from . import contract as K
from . import geometry as G
from . import liealg as LA
from . import quad as Q
from . import repfun as R
from . import sampling as S
from .fd import FDScheme, Jet
from .report import CheckReport


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    npoints: int = 100
    nfuncs: int = 20
    h_step: float = 1e-3
    nodes: int = 64
    rho_max: float | None = None
    window: float = 10.0
    tol: float | None = None        # overrides every tolerance when set
    algebra: str | None = None      # commutators: restrict to one realization
    family: str | None = None       # ladder / harmonic / gram: restrict to one family
    label: tuple | None = None      # harmonic: a single label, as (family, kwargs) pairs
    lmax: float = 3
    timing: bool = False

    @property
    def scheme(self) -> FDScheme:
        return FDScheme(h=self.h_step, h_outer=2 * self.h_step)

    @property
    def quad(self) -> Q.QuadratureSpec:
        return Q.QuadratureSpec(n_angle=self.nodes, n_theta=self.nodes, rho_max=self.rho_max, window=self.window)

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("timing")
        d["label"] = None if self.label is None else [list(p) for p in self.label]
        return d

    def rng(self, suite: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, SUITE_INDEX[suite]])


class _Collector:
    def __init__(self, suite: str, cfg: SuiteConfig):
        self.suite, self.cfg, self.out = suite, cfg, []
        self.echo = cfg.echo()

    def add(self, check: str, manifold: str, label: str, samples: int, residual: float, tol: float,
            t0: float | None = None, **detail):
        tol = self.cfg.tol if self.cfg.tol is not None else tol
        wall = (time.perf_counter() - t0) if (self.cfg.timing and t0 is not None) else None
        self.out.append(CheckReport(self.suite, check, manifold, label, int(samples), float(residual), tol,
                                    self.cfg.seed, self.echo, detail, wall))


# --- commutators ------------------------------------------------------------------------


REALIZATIONS: dict[str, Callable[[], LA.AlgebraRealization]] = {
    "sl2c": LA.sl2c_realization,
    "su2": LA.su2_realization,
    "su11": LA.su11_realization,
    "e2": lambda: LA.e2_realization("cone"),
    "e2-log": lambda: LA.e2_realization("log"),
    "e2-compact": lambda: LA.e2_realization("compact"),
    "su11-r": K.su11_ops_at_r,
    "su11-limit": K.su11_limit_ops,
}
PRIMARY_ALGEBRAS = ("sl2c", "su2", "su11", "e2")


def commutators(cfg: SuiteConfig) -> list[CheckReport]:
    col = _Collector("commutators", cfg)
    rng = cfg.rng("commutators")
    names = (cfg.algebra,) if cfg.algebra else tuple(REALIZATIONS)
    for name in names:
        if name not in REALIZATIONS:
            raise KeyError(f"unknown algebra {name!r}")
        alg = REALIZATIONS[name]()
        t0 = time.perf_counter()
        x = S.random_points(alg.chart, cfg.npoints, rng)
        fs = [S.band_limited(alg.chart, rng) for _ in range(cfg.nfuncs)]
        jets = [Jet(f, x, cfg.scheme) for f in fs]
        for a, b in alg.pairs():
            exp = alg.expected_operator(a, b)
            res = max(float(np.max(LA.commutator_residuals(alg.ops[a], alg.ops[b], exp, f, x, cfg.scheme, jet=j)))
                      for f, j in zip(fs, jets))
            col.add(f"[{a},{b}]", alg.chart, name, cfg.nfuncs * cfg.npoints, res, 1e-6, t0)
    return col.out


# --- ladder ---------------------------------------------------------------------------------


def ladder_members(family: str | None = None) -> list[tuple[R.RepLabel, list]]:
    """(label, weights) for every member the ladder and harmonic suites test."""
    out = []
    if family in (None, "su2"):
        for k in range(7):
            lab = R.SU2Label(Fraction(k, 2))
            out.append((lab, lab.weights()))
    if family in (None, "sl2c"):
        for lab in (R.SL2CLabel(Fraction(1, 2), 1j), R.SL2CLabel(Fraction(1, 2), 2.5)):
            ws = [(s, m) for s in lab.spins(Fraction(5, 2)) for m in R.SU2Label(s).weights()]
            out.append((lab, ws))
    if family in (None, "su11-disc"):
        for s in (1, 1.5, 2):
            for e in (1, -1):
                for n in range(5):
                    out.append((R.SU11DiscLabel(s, e, n), [None]))
    if family in (None, "e2"):
        for p in (0.5, 1.0, 1.5):
            for s in (0.0, 0.25):
                for n in (-1, 2):
                    out.append((R.E2Label(p, s, n), [None]))
    return out


GENERATORS = {
    R.SU2Label: (LA.su2_realization, ("R+", "R-", "R0")),
    R.SL2CLabel: (LA.sl2c_realization, ("J+", "J-", "J0", "K+", "K-", "K0")),
    R.SU11DiscLabel: (LA.su11_realization, ("J+", "J-", "J0")),
    R.SU11ContLabel: (LA.su11_realization, ("J+", "J-", "J0")),
    R.E2Label: (lambda: LA.e2_realization("cone"), ("P+", "P-", "J")),
}


def _weight_args(w):
    if w is None:
        return ()
    return tuple(w) if isinstance(w, tuple) else (w,)


def ladder_residual(label, weight, generator: str, x, scheme: FDScheme) -> float:
    alg = GENERATORS[type(label)][0]()
    f = R.family_function(label, weight)
    lhs = LA.apply(alg.ops[generator], f, x, scheme)
    rhs = np.zeros(x.shape[1], dtype=complex)
    for c, tgt in LA.ladder_expected(label, generator, *_weight_args(weight)):
        rhs = rhs + c * LA.ladder_target(label, tgt)(x)
    return float(np.max(np.abs(lhs - rhs)))


def _chart_of(label) -> str:
    return G.harmonic_constant(label)[0]


def ladder(cfg: SuiteConfig) -> list[CheckReport]:
    col = _Collector("ladder", cfg)
    rng = cfg.rng("ladder")
    pts = {c: S.random_points(c, cfg.npoints, rng) for c in ("s3", "s3c", "h22", "cone")}
    for lab, ws in ladder_members(cfg.family):
        chart = _chart_of(lab)
        for gen in GENERATORS[type(lab)][1]:
            t0 = time.perf_counter()
            res = max(ladder_residual(lab, w, gen, pts[chart], cfg.scheme) for w in ws)
            col.add(gen, chart, lab.key(), cfg.npoints * len(ws), res, 1e-5, t0)
    return col.out


# --- harmonic / casimir -----------------------------------------------------------------------


def harmonic_members(cfg: SuiteConfig) -> list[tuple[R.RepLabel, list]]:
    if cfg.label is not None:
        lab = label_from_pairs(cfg.label)
        if isinstance(lab, R.SL2CLabel):
            ws = [(s, m) for s in lab.spins(Fraction(5, 2)) for m in R.SU2Label(s).weights()]
        elif isinstance(lab, R.SU2Label):
            ws = lab.weights()
        else:
            ws = [None]
        return [(lab, ws)]
    out = ladder_members(cfg.family)
    if cfg.family in (None, "su11-cont"):
        out += [(R.SU11ContLabel(-0.25 + 0.3j, -0.25 + 0.3j, n), [None]) for n in (0, 2)]
        out += [(R.SU11ContLabel(-0.3, -0.1, 1), [None])]
    return out


def harmonic(cfg: SuiteConfig) -> list[CheckReport]:
    col = _Collector("harmonic", cfg)
    rng = cfg.rng("harmonic")
    pts = {c: S.random_points(c, cfg.npoints, rng) for c in ("s3", "s3c", "h22", "cone")}
    for lab, ws in harmonic_members(cfg):
        chart = _chart_of(lab)
        t0 = time.perf_counter()
        res = max(G.harmonic_residual(lab, w, pts[chart], cfg.scheme) for w in ws)
        col.add("laplacian-eigen", chart, lab.key(), cfg.npoints * len(ws), res, 1e-4, t0)
        if chart != "s3c" and cfg.label is None:
            an = FDScheme(backend="analytic")
            res = max(G.harmonic_residual(lab, w, pts[chart], an) for w in ws)
            col.add("laplacian-eigen-analytic", chart, lab.key(), cfg.npoints * len(ws), res, 1e-8, t0)
    if cfg.label is None and cfg.family in (None, "sl2c"):
        for mono in (G.Monomial(1, 1, 0, 0), G.Monomial(2, 0, 1, 1), G.Monomial(0, 3, 2, 0)):
            res = G.monomial_residual(mono, pts["s3c"], cfg.scheme)
            col.add("monomial", "s3c", f"z+^{mono.a} z-^{mono.b} zb-^{mono.c} zb+^{mono.d}", cfg.npoints, res, 1e-4)
    return col.out


def casimir(cfg: SuiteConfig) -> list[CheckReport]:
    col = _Collector("casimir", cfg)
    rng = cfg.rng("casimir")
    sch = cfg.scheme

    def lap(manifold, f, x):
        return G.laplacian_values(G.LaplacianSpec(manifold, sch), f, x)

    # S^3 and H22: Delta + 4Q on family members and band-limited functions
    for manifold, alg, members in (
        ("s3", LA.su2_realization(), [R.SU2Function(R.SU2Label(l), m) for l in (1, 2, 3)
                                      for m in R.SU2Label(l).weights()]),
        ("h22", LA.su11_realization(), [R.SU11DiscFunction(R.SU11DiscLabel(s, e, n))
                                        for s in (1, 1.5) for e in (1, -1) for n in (0, 2)]),
    ):
        x = S.random_points(manifold, cfg.npoints, rng)
        fs = members + [S.band_limited(manifold, rng) for _ in range(5)]
        t0 = time.perf_counter()
        res = max(float(np.max(np.abs(lap(manifold, f, x) + 4 * G.casimir_from_realization(alg, f, x, "Q", sch))))
                  for f in fs)
        col.add("laplacian+4Q", manifold, alg.name, cfg.npoints * len(fs), res, 1e-4, t0)

    # S^3_C: -Delta/2 against C_L + C_Lb as required, and the -Delta/4 relation that actually holds
    alg = LA.sl2c_realization()
    x = S.random_points("s3c", cfg.npoints, rng)
    fs = [R.SL2CFunction(R.SL2CLabel(Fraction(1, 2), 1j), s, m) for s, m in ((0.5, 0.5), (1.5, -0.5))]
    fs += [R.SL2CFunction(R.SL2CLabel(Fraction(1, 2), 2.5), 1.5, 0.5)]
    fs += [S.band_limited("s3c", rng) for _ in range(3)]
    t0 = time.perf_counter()
    diffs2, diffs4 = [], []
    for f in fs:
        D = lap("s3c", f, x)
        cl = G.casimir_from_realization(alg, f, x, "CL+CLb", sch)
        diffs2.append(float(np.max(np.abs(-D / 2 - cl))))
        diffs4.append(float(np.max(np.abs(-D / 4 - cl))))
    col.add("-laplacian/2-(CL+CLb)", "s3c", "sl2c", cfg.npoints * len(fs), max(diffs2), 1e-4, t0)
    col.add("-laplacian/4-(CL+CLb)", "s3c", "sl2c", cfg.npoints * len(fs), max(diffs4), 1e-4, t0)

    # E2: Q = p^2 and Delta_c eigen, independently
    e2 = LA.e2_realization("cone")
    x = S.random_points("cone", cfg.npoints, rng)
    for lab, _ in ladder_members("e2"):
        f = R.E2Function(lab)
        p = float(lab.p)
        t0 = time.perf_counter()
        res = float(np.max(np.abs(G.casimir_from_realization(e2, f, x, "Q", sch) - p * p * f(x))))
        col.add("Q=p^2", "cone", lab.key(), cfg.npoints, res, 1e-6, t0)
        res = float(np.max(np.abs(lap("cone", f, x) + (2 + 2 * p) * 2 * p * f(x))))
        col.add("laplacian_c-eigen", "cone", lab.key(), cfg.npoints, res, 1e-4, t0)
    return col.out


# --- spinor table ------------------------------------------------------------------------------


def spinor_table(cfg: SuiteConfig) -> list[CheckReport]:
    col = _Collector("spinor-table", cfg)
    rng = cfg.rng("spinor-table")
    x = S.random_points("s3c", 50, rng)
    t0 = time.perf_counter()
    for gen, src, res in LA.spinor_action_table(x, cfg.scheme):
        col.add(gen, "s3c", src, 50, res, 1e-10, t0)
    return col.out


# --- gram ------------------------------------------------------------------------------------------


IAB_GRID = tuple((a, b) for a in (-2.25, -3.0, -4.0, -5.5, -7.0) for b in (-0.75, -0.25, 0.5, 1.0))


def gram(cfg: SuiteConfig) -> list[CheckReport]:
    col = _Collector("gram", cfg)
    spec = cfg.quad
    fam = cfg.family
    if fam in (None, "su2"):
        t0 = time.perf_counter()
        F = Q.su2_family(cfg.lmax)
        Gm = Q.gram_matrix(F, "s3", spec)
        col.add("gram=I", "s3", f"SU2(l<={cfg.lmax})", len(F) ** 2, np.max(np.abs(Gm - np.eye(len(F)))), 1e-10, t0)
    if fam in (None, "su11-disc"):
        t0 = time.perf_counter()
        F = Q.su11_disc_family((1, 1.5, 2), 3)
        Gm = Q.gram_matrix(F, "h22", spec)
        col.add("gram=I", "h22", "SU11Disc(s in {1,3/2,2}, n<=3, +-)", len(F) ** 2,
                np.max(np.abs(Gm - np.eye(len(F)))), 1e-6, t0)
        half = len(F) // 2
        col.add("sign-blocks=0", "h22", "SU11Disc(s in {1,3/2,2}, n<=3, +-)", half * half,
                np.max(np.abs(Gm[:half, half:])), 1e-8, t0)
        t0 = time.perf_counter()
        F = [R.SU11DiscFunction(R.SU11DiscLabel(s, 1, n)) for s in (0.75, 1.5) for n in range(3)]
        cov = Q._covering_of(F)
        Gm = Q.gram_matrix(F, "h22", spec)
        col.add("gram=I", "h22", f"SU11Disc(s in {{3/4,3/2}}) on {cov}", len(F) ** 2,
                np.max(np.abs(Gm - np.eye(len(F)))), 1e-6, t0, covering=str(cov))
    if fam in (None, "iab"):
        t0 = time.perf_counter()
        rel = max(abs(Q.i_ab_numeric(a, b, spec) / Q.i_ab_closed(a, b) - 1) for a, b in IAB_GRID)
        col.add("I_ab numeric=closed", "h22", "20-point (a,b) grid", len(IAB_GRID), rel, 1e-8, t0)
    return col.out


# --- e2 window ------------------------------------------------------------------------------------


def e2_window(cfg: SuiteConfig) -> list[CheckReport]:
    col = _Collector("e2-window", cfg)
    spec = cfg.quad
    L = lambda p, s, n: R.E2Function(R.E2Label(p, s, n), "compact")
    t0 = time.perf_counter()
    res = max(abs(Q.inner_e2_windowed(L(p, s, n), L(p, s, n2), cfg.window, spec=spec))
              for p in (0.5, 1.0) for s in (0.0, 0.25, 0.5) for n in (-1, 0, 2) for n2 in (-2, 1, 3) if n != n2)
    col.add("n!=n' orthogonal", "compact", "E2 p in {1/2,1}, s in {0,1/4,1/2}", 54, res, 1e-12, t0)
    t0 = time.perf_counter()
    res = 0.0
    for p, s, n in ((0.5, 0.0, 0), (1.0, 0.25, 1), (1.5, 0.5, -2)):
        for T in (1.0, 10.0, 100.0):
            v1 = Q.inner_e2_windowed(L(p, s, n), L(p, s, n), T, spec=spec)
            v2 = Q.inner_e2_windowed(L(p, s, n), L(p, s, n), 2 * T, spec=spec)
            res = max(res, abs(v2 / v1 - 2))
    col.add("norm(2T)/norm(T)=2", "compact", "E2 equal p", 9, res, 1e-6, t0)
    t0 = time.perf_counter()
    excess = 0.0
    worst_ratio = 0.0
    for p, p2 in ((1.0, 1.3), (0.5, 2.0), (1.0, 1.01)):
        bound = Q.e2_window_bound(p, p2)
        for T in (1.0, 10.0, 100.0, 1000.0):
            v = abs(Q.inner_e2_windowed(L(p, 0.25, 0), L(p2, 0.25, 0), T, spec=spec))
            excess = max(excess, v - bound)
            worst_ratio = max(worst_ratio, v / bound)
    col.add("|(p,p')| <= 1/|p-p'|", "compact", "E2 p!=p', T<=1000", 12, max(excess, 0.0), 0.0, t0,
            max_ratio_to_bound=worst_ratio)
    return col.out


# --- contraction ------------------------------------------------------------------------------------


EPSILONS = (0.2, 0.1, 0.05, 0.025)
R_SAMPLES = (4.0, 8.0, 16.0, 32.0, 64.0)


def contraction(cfg: SuiteConfig) -> list[CheckReport]:
    col = _Collector("contraction", cfg)
    rng = cfg.rng("contraction")
    sch = cfg.scheme
    x = S.random_points("s3", cfg.npoints, rng)
    fs = [S.band_limited("s3", rng) for _ in range(5)]
    t0 = time.perf_counter()
    tabs = [K.e2_table_residuals(e, fs, x, sch) for e in EPSILONS]
    k = K.fit_power(EPSILONS, [t[("P+", "P-")] for t in tabs])
    col.add("[P+,P-]->0 exponent", "s3", "su2->e2", len(EPSILONS), abs(k - 2) if k is not None else math.inf, 0.2,
            t0, exponent=k, residuals=[t[("P+", "P-")] for t in tabs])
    other = max(v for t in tabs for key, v in t.items() if key != ("P+", "P-"))
    col.add("[J,P+-] exact", "s3", "su2->e2", len(EPSILONS) * 2, other, 1e-6, t0)
    alg = K.su2_contracted_ops(0.1)
    res = max(float(np.max(LA.commutator_residuals(alg.ops[a], alg.ops[b], alg.expected_operator(a, b), f, x, sch)))
              for a, b in alg.pairs() for f in fs)
    col.add("contracted table eps=0.1", "s3", "su2->e2", len(fs) * cfg.npoints, res, 1e-6, t0)

    angles = np.array([rng.uniform(0, 2 * math.pi, cfg.npoints), rng.uniform(0, 2 * math.pi, cfg.npoints)])
    frs = [S.band_limited("h22r", rng) for _ in range(5)]
    for gen in ("iJ+", "iJ-", "J0"):
        t0 = time.perf_counter()
        curves = [K.contraction_residual_curve(gen, f, angles, R_SAMPLES, sch) for f in frs]
        if gen == "J0":
            res = max(max(c.residuals) for c in curves)
            col.add("J0 residual=0", "h22r", "su11->e2", len(frs) * len(R_SAMPLES), res, 0.0, t0)
            continue
        exps = [c.exponent for c in curves]
        mono = all(np.all(np.diff(c.residuals) < 0) for c in curves)
        worst = min(e for e in exps if e is not None)
        col.add(f"{gen} decay exponent>=1", "h22r", "su11->e2", len(frs) * len(R_SAMPLES), max(0.0, 1 - worst), 0.0,
                t0, exponents=exps, monotone=mono)
    t0 = time.perf_counter()
    res = K.radial_coefficient_mismatch(S.random_points("cone", cfg.npoints, rng))
    col.add("cone=limit coefficients", "cone", "su11->e2", cfg.npoints, res, 1e-12, t0)
    t0 = time.perf_counter()
    x0 = S.random_points("cone", len(K.REAL_FIELDS), rng).real
    drift = max(K.flow_measure_drift(fld, x0[:, i]) for i, fld in enumerate(K.REAL_FIELDS))
    col.add("flow measure drift", "cone", "e2", len(K.REAL_FIELDS), drift, 1e-6, t0)
    return col.out


# --- dual formula ---------------------------------------------------------------------------------


def dual_formula(cfg: SuiteConfig) -> list[CheckReport]:
    col = _Collector("dual-formula", cfg)
    rng = cfg.rng("dual-formula")
    x = S.random_points("s3c", cfg.npoints, rng)
    sp = C.spinors(x)
    for l0, l1 in ((Fraction(1, 2), 1.5), (Fraction(1, 2), 2.5), (1, 3)):
        lab = R.SL2CLabel(l0, l1)
        t0 = time.perf_counter()
        res = 0.0
        n = 0
        for s in lab.spins():
            for m in R.SU2Label(s).weights():
                a = R.SL2CFunction(lab, s, m)(x)
                b = R.psi_homogeneous(lab, s, m, sp["z+"], sp["z-"], sp["zb+"], sp["zb-"])
                res = max(res, float(np.max(np.abs(a - b))))
                n += 1
        col.add("angle=homogeneous", "s3c", lab.key(), cfg.npoints * n, res, 1e-10, t0)
    return col.out


SUITES: dict[str, Callable[[SuiteConfig], list[CheckReport]]] = {
    "commutators": commutators,
    "ladder": ladder,
    "harmonic": harmonic,
    "casimir": casimir,
    "gram": gram,
    "spinor-table": spinor_table,
    "contraction": contraction,
    "e2-window": e2_window,
    "dual-formula": dual_formula,
}
SUITE_INDEX = {name: i for i, name in enumerate(SUITES)}


def run(names, cfg: SuiteConfig) -> list[CheckReport]:
    out = []
    for name in names:
        out += SUITES[name](cfg)
    return sorted(out, key=CheckReport.sort_key)


# --- label parsing shared with the CLI -----------------------------------------------------------


def label_from_pairs(pairs) -> R.RepLabel:
    d = dict(pairs)
    fam = d.pop("family")
    if fam == "sl2c":
        return R.SL2CLabel(R.half_integer(d["ell0"], "ell0"), complex(d.get("ell1_re", 0.0), d.get("ell1_im", 0.0)))
    if fam == "su2":
        return R.SU2Label(d["ell"])
    if fam == "su11-disc":
        return R.SU11DiscLabel(float(d["s"]), int(d.get("sign", 1)), int(d.get("n", 0)))
    if fam == "su11-cont":
        return R.SU11ContLabel(complex(d["lambda"]), complex(d["mu"]), int(d.get("n", 0)))
    if fam == "e2":
        return R.E2Label(float(d["p"]), float(d.get("s", 0.0)), int(d.get("n", 0)))
    raise ValueError(f"unknown family {fam!r}")
