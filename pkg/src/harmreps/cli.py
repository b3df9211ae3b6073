"""Command-line front end.

    harmreps eval FAMILY [label flags] (--grid AxBxC | --point a,b,c ...) [--out FILE]
    harmreps check SUITE [filters] [--format jsonl|csv] [--out FILE]
    harmreps sweep 4,8,16,32 [--generators iJ+,iJ-,J0] [--out FILE]

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import coords as C
from . import contract as K
from . import repfun as R
from . import sampling
from . import suites as SU
from .fd import FDScheme
from .report import CheckReport, _num, dumps, write_jsonl

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
FAMILIES = ("sl2c", "su2", "su11-disc", "su11-cont", "e2")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- label construction -----------------------------------------------------------------


def _complex(text: str) -> complex:
    return complex(text.replace(" ", "").replace("i", "j"))


def build_label(a) -> tuple[R.RepLabel, object]:
    """(label, weight) from parsed flags; ValueError on anything ill-formed."""
    fam = a.family
    if fam == "sl2c":
        if a.ell0 is None:
            raise ValueError("sl2c needs --ell0")
        l1 = _complex(a.ell1) if a.ell1 is not None else complex(a.ell1_re or 0.0, a.ell1_im or 0.0)
        lab = R.SL2CLabel(R.half_integer(a.ell0, "ell0"), l1)
        if a.spin is None:
            return lab, None
        s = R.half_integer(a.spin, "spin")
        m = R.half_integer(a.m if a.m is not None else -s, "m")
        R._check_sl2c_weight(lab, s, m)
        return lab, (s, m)
    if fam == "su2":
        if a.ell is None:
            raise ValueError("su2 needs --ell")
        lab = R.SU2Label(a.ell)
        if a.m is None:
            return lab, None
        m = R.half_integer(a.m, "m")
        if abs(m) > lab.ell or (lab.ell - m).denominator != 1:
            raise ValueError(f"m = {m} is not a weight of ell = {lab.ell}")
        return lab, m
    if fam == "su11-disc":
        if a.s is None:
            raise ValueError("su11-disc needs --s")
        return R.SU11DiscLabel(float(a.s), a.sign or 1, _int(a.n, 0)), None
    if fam == "su11-cont":
        if a.lam is None or a.mu is None:
            raise ValueError("su11-cont needs --lambda and --mu")
        return R.SU11ContLabel(_complex(a.lam), _complex(a.mu), _int(a.n, 0)), None
    if fam == "e2":
        if a.p is None:
            raise ValueError("e2 needs --p")
        return R.E2Label(float(a.p), float(a.s or 0.0), _int(a.n, 0)), None
    raise ValueError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")


def _int(x, default: int) -> int:
    if x is None:
        return default
    v = float(x)
    if v != int(v):
        raise ValueError(f"expected an integer, got {x}")
    return int(v)


def _label_pairs(a) -> tuple | None:
    """Harmonic-suite single-label filter, if any label flag was given."""
    keys = ("ell0", "ell1", "ell1_re", "ell1_im", "ell", "s", "sign", "n", "lam", "mu", "p")
    given = {k: getattr(a, k) for k in keys if getattr(a, k, None) is not None}
    if not given or a.family is None:
        return None
    if a.family == "sl2c" and "ell1" in given:
        l1 = _complex(given.pop("ell1"))
        given["ell1_re"], given["ell1_im"] = l1.real, l1.imag
    given = {("lambda" if k == "lam" else k): v for k, v in given.items()}
    pairs = (("family", a.family),) + tuple(sorted(given.items()))
    SU.label_from_pairs(pairs)  # validate now
    return pairs


# --- eval -----------------------------------------------------------------------------------


def _chart(label: R.RepLabel, form: str) -> str:
    if isinstance(label, R.E2Label):
        return form
    return {R.SL2CLabel: "s3c", R.SU2Label: "s3", R.SU11DiscLabel: "h22", R.SU11ContLabel: "h22"}[type(label)]


COLUMNS = {
    "s3c": ["theta", "theta_im", "phi+", "phi+_im", "phi-", "phi-_im"],
    "s3": ["theta", "phi+", "phi-"],
    "h22": ["rho", "phi+", "phi-"],
    "cone": ["r", "phi+", "phi-"],
    "log": ["psi", "phi+", "phi-"],
    "compact": ["psi", "phi+", "phi-"],
}
# first-coordinate range of the fundamental domain used for grids
GRID_RANGE = {"s3c": (0.0, math.pi / 2), "s3": (0.0, math.pi / 2), "h22": (0.0, 3.0),
              "cone": (0.0, 3.0), "log": (-2.0, 2.0), "compact": (0.0, 2 * math.pi)}


def _angle_span(q) -> float:
    return 2 * math.pi * (1 if q is C.UNIVERSAL else q)


def grid_points(chart: str, spec: str, cov: C.Covering) -> np.ndarray:
    """Midpoint grid 'AxBxC' over (first coordinate) x [0, 2 pi q+) x [0, 2 pi q-)."""
    try:
        dims = [int(t) for t in spec.lower().split("x")]
    except ValueError:
        raise ValueError(f"grid must look like AxBxC, got {spec!r}") from None
    if len(dims) != 3 or min(dims) < 1:
        raise ValueError(f"grid must have three positive sizes, got {spec!r}")
    lo, hi = GRID_RANGE[chart]
    spans = [(lo, hi), (0.0, _angle_span(cov.plus)), (0.0, _angle_span(cov.minus))]
    axes = [a + (b - a) * (np.arange(n) + 0.5) / n for n, (a, b) in zip(dims, spans)]
    mesh = [m.ravel() for m in np.meshgrid(*axes, indexing="ij")]
    if chart == "s3c":
        z = np.zeros_like(mesh[0])
        return np.array([mesh[0], z, mesh[1], z, mesh[2], z])
    return np.array(mesh)


def parse_point(chart: str, text: str) -> np.ndarray:
    vals = [float(t) for t in text.split(",")]
    n = len(COLUMNS[chart])
    if chart == "s3c" and len(vals) == 3:
        vals = [vals[0], 0.0, vals[1], 0.0, vals[2], 0.0]
    if len(vals) != n:
        raise ValueError(f"a {chart} point needs {n} values, got {len(vals)}")
    return np.array(vals)


def _covers(given: C.Covering, need: C.Covering) -> bool:
    def ok(g, n):
        return g is C.UNIVERSAL or (n is not C.UNIVERSAL and g % n == 0)
    return ok(given.plus, need.plus) and ok(given.minus, need.minus)


def _members(label, weight):
    if isinstance(label, R.SL2CLabel) and weight is None:
        raise ValueError("sl2c eval needs --spin (and --m)")
    if isinstance(label, R.SU2Label) and weight is None:
        raise ValueError("su2 eval needs --m")
    return weight


def cmd_eval(a, out) -> int:
    label, weight = build_label(a)
    weight = _members(label, weight)
    chart = _chart(label, a.form)
    need = R.covering_required(label)
    cov = C.Covering.parse(a.covering) if a.covering else need
    if not _covers(cov, need):
        raise ValueError(f"covering {cov} does not contain the required covering {need}")
    if a.grid and a.point:
        raise ValueError("give either --grid or --point, not both")
    if a.grid:
        x = grid_points(chart, a.grid, cov)
    elif a.point:
        x = np.array([parse_point(chart, t) for t in a.point]).T
    else:
        raise ValueError("eval needs --grid or --point")
    if chart == "s3c":
        xe = C.polarize(x[0], x[1], x[2], x[3], x[4], x[5])
    else:
        xe = x
    vals = R.family_function(label, weight, a.form)(xe)
    buf = io.StringIO()
    wdesc = "" if weight is None else (f" m={weight}" if not isinstance(weight, tuple)
                                       else f" s={weight[0]} m={weight[1]}")
    buf.write(f"# label={label.key()}{wdesc} covering={cov} chart={chart}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS[chart] + ["re", "im"])
    for j in range(x.shape[1]):
        v = complex(vals[j])
        w.writerow([_num(float(c)) for c in x[:, j]] + [_num(v.real), _num(v.imag)])
    _emit(buf.getvalue(), a.out, out)
    return EXIT_OK


# --- check ---------------------------------------------------------------------------------


def suite_config(a) -> SU.SuiteConfig:
    kw = dict(seed=a.seed, tol=a.tol, algebra=a.algebra, family=a.family, timing=a.timing)
    for name, attr in (("h_step", "h_step"), ("nodes", "nodes"), ("rho_max", "rho_max"), ("window", "window"),
                       ("lmax", "lmax"), ("npoints", "npoints"), ("nfuncs", "nfuncs")):
        v = getattr(a, attr, None)
        if v is not None:
            kw[name] = v
    kw["label"] = _label_pairs(a)
    return SU.SuiteConfig(**kw)


def cmd_check(a, out) -> int:
    names = list(SU.SUITES) if a.suite == "all" else [a.suite]
    if a.suite != "all" and a.suite not in SU.SUITES:
        raise ValueError(f"unknown suite {a.suite!r}; expected one of all, {', '.join(SU.SUITES)}")
    cfg = suite_config(a)
    reports = SU.run(names, cfg)
    if not reports:
        raise ValueError("the filters selected no checks")
    buf = io.StringIO()
    if a.format == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "check", "manifold", "label", "samples", "max_residual", "tolerance", "passed", "seed"])
        for r in sorted(reports, key=CheckReport.sort_key):
            w.writerow([r.suite, r.check, r.manifold, r.label, r.samples, _num(r.max_residual), _num(r.tolerance),
                        r.passed, r.seed])
    else:
        write_jsonl(reports, buf)
    _emit(buf.getvalue(), a.out, out)
    failed = [r for r in reports if not r.passed]
    print(f"seed={cfg.seed} checks={len(reports)} failed={len(failed)}", file=sys.stderr)
    for r in failed:
        print(r.line(), file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


# --- contraction sweep -------------------------------------------------------------------


def cmd_sweep(a, out) -> int:
    try:
        rs = [float(t) for t in a.r.split(",") if t.strip()]
    except ValueError:
        raise ValueError(f"r list must be comma-separated numbers, got {a.r!r}") from None
    if not rs:
        raise ValueError("empty r list")
    K._check_increasing(rs)
    gens = [g.strip() for g in a.generators.split(",")]
    for g in gens:
        if g not in ("iJ+", "iJ-", "J0"):
            raise ValueError(f"unknown generator {g!r}")
    rng = np.random.default_rng([a.seed, len(SU.SUITES)])
    n = a.npoints or 100
    angles = np.array([rng.uniform(0, 2 * math.pi, n), rng.uniform(0, 2 * math.pi, n)])
    f = sampling.band_limited("h22r", rng)
    scheme = FDScheme(h=a.h_step or 1e-3, h_outer=2 * (a.h_step or 1e-3))
    tol = 0.0 if a.tol is None else a.tol
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "generator", "residual"])
    exps, failed = {}, False
    for g in gens:
        curve = K.contraction_residual_curve(g, f, angles, rs, scheme)
        for r, res in zip(curve.samples, curve.residuals):
            w.writerow([_num(r), g, _num(res)])
        exps[g] = curve.exponent
        # J0 agrees exactly (no fit); otherwise the decay must be at least first order
        if curve.exponent is not None and g != "J0" and curve.exponent < 1 - tol:
            failed = True
    buf.write(dumps({"exponents": exps, "seed": a.seed, "tolerance": tol, "r": rs}) + "\n")
    _emit(buf.getvalue(), a.out, out)
    print(f"seed={a.seed}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


# --- plumbing -----------------------------------------------------------------------------------


def _emit(text: str, path: str | None, out) -> None:
    if path in (None, "-"):
        out.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float)
    p.add_argument("--h-step", type=float)
    p.add_argument("--out", "-o")
    p.add_argument("--npoints", type=int)


def _label_flags(p: argparse.ArgumentParser):
    p.add_argument("--ell", type=float)
    p.add_argument("--m", type=float)
    p.add_argument("--ell0", type=float)
    p.add_argument("--ell1", help="complex, e.g. 1.5 or 0+1j")
    p.add_argument("--ell1-re", type=float)
    p.add_argument("--ell1-im", type=float)
    p.add_argument("--spin", type=float, help="SL2C spin s of the member")
    p.add_argument("--s", type=float)
    p.add_argument("--n", type=float)
    p.add_argument("--sign", type=int, default=None)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--mu")
    p.add_argument("--p", type=float)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="harmreps", description="Harmonic-function realizations of SL(2,C), SU(2), SU(1,1), E2.")
    sub = ap.add_subparsers(dest="cmd", parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate one family member on a grid or point list")
    ev.add_argument("family", choices=FAMILIES)
    _label_flags(ev)
    ev.add_argument("--form", choices=("cone", "log", "compact"), default="cone")
    ev.add_argument("--grid")
    ev.add_argument("--point", action="append")
    ev.add_argument("--covering")
    _common(ev)

    ck = sub.add_parser("check", help="run a verification suite, JSON lines out")
    ck.add_argument("suite")
    ck.add_argument("--algebra", choices=tuple(SU.REALIZATIONS))
    ck.add_argument("--family")
    _label_flags(ck)
    ck.add_argument("--nodes", type=int)
    ck.add_argument("--rho-max", type=float)
    ck.add_argument("--window", type=float)
    ck.add_argument("--lmax", type=float)
    ck.add_argument("--nfuncs", type=int)
    ck.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    ck.add_argument("--timing", action="store_true", help="add wall_time to reports (not byte-stable)")
    _common(ck)

    for name in ("contract-sweep", "sweep"):
        sw = sub.add_parser(name, help="su(1,1) -> e(2) residual curves over radii r > 1")
        sw.add_argument("r", help="comma-separated radii, e.g. 4,8,16,32")
        sw.add_argument("--generators", default="iJ+,iJ-,J0")
        _common(sw)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        a = build_parser().parse_args(argv)
        if a.cmd is None:
            raise UsageError("missing command (eval, check, sweep)")
        cmd = {"eval": cmd_eval, "check": cmd_check, "contract-sweep": cmd_sweep, "sweep": cmd_sweep}[a.cmd]
        return cmd(a, out)
    except UsageError as e:
        print(f"harmreps: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"harmreps: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, TypeError, KeyError) as e:
        print(f"harmreps: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
