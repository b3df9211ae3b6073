"""Acceptance gate: ten criteria at their stated tolerances and runtime budgets.

Each test prints one PASS/FAIL line (collected into the terminal summary)
and then asserts the same verdict.
"""

import time

import pytest

from harmreps import suites as SU
from conftest import ACCEPTANCE_LINES

CFG = SU.SuiteConfig(seed=0)
_cache = {}


def suite(name):
    if name not in _cache:
        t0 = time.perf_counter()
        reps = SU.run([name], CFG)
        _cache[name] = (reps, time.perf_counter() - t0)
    return _cache[name]


def verdict(n, title, reports, elapsed=None, budget=None, extra_ok=True, note=""):
    bad = [r for r in reports if not r.passed]
    slow = budget is not None and elapsed > budget
    ok = bool(reports) and not bad and not slow and extra_ok
    worst = max((r.max_residual / r.tolerance if r.tolerance else r.max_residual for r in reports), default=0.0)
    parts = [f"criterion {n}: {'PASS' if ok else 'FAIL'} {title}", f"checks={len(reports)}", f"failed={len(bad)}"]
    if budget is not None:
        parts.append(f"time={elapsed:.2f}s/{budget:g}s")
    parts.append(f"worst residual/tol={worst:.2e}")
    if bad:
        parts.append("first failure: " + bad[0].line())
    if note:
        parts.append(note)
    line = " ".join(parts)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_commutators():
    reps, t = suite("commutators")
    primary = [r for r in reps if r.label in SU.PRIMARY_ALGEBRAS]
    assert {r.label for r in primary} == set(SU.PRIMARY_ALGEBRAS)
    assert all(r.samples >= 20 * 100 for r in primary)
    verdict(1, "structure tables on S3_C, S3, H22, cone", primary, t, 10)


def test_criterion_02_ladder():
    reps, t = suite("ladder")
    labels = {r.manifold: set() for r in reps}
    for r in reps:
        labels[r.manifold].add(r.label)
    sizes = {m: len(v) for m, v in labels.items()}
    verdict(2, "differential action = ladder expansion", reps, t, 30,
            extra_ok=sizes == {"s3": 7, "s3c": 2, "h22": 30, "cone": 12}, note=f"labels={sizes}")


def test_criterion_03_spinor_table():
    reps, t = suite("spinor-table")
    verdict(3, "spinor action table", reps, t, 1, extra_ok=len(reps) == 24)


def test_criterion_04_harmonic():
    reps, t = suite("harmonic")
    fd = [r for r in reps if r.check in ("laplacian-eigen", "monomial")]
    verdict(4, "family members are Laplacian eigenfunctions", fd, t, 20)


def test_criterion_05_casimir():
    reps, t = suite("casimir")
    # the S3_C relation is checked literally as -Delta/2; the -Delta/4 report is diagnostic only
    used = [r for r in reps if r.check != "-laplacian/4-(CL+CLb)"]
    diag = next(r for r in reps if r.check == "-laplacian/4-(CL+CLb)")
    verdict(5, "Casimir-Laplacian identities", used, t, 10,
            note=f"(diagnostic -Delta/4 on S3_C: residual={diag.max_residual:.2e})")


def test_criterion_06_gram():
    reps, t = suite("gram")
    verdict(6, "orthonormality and I_ab closed form", reps, t, 20)


def test_criterion_07_e2_window():
    reps, t = suite("e2-window")
    verdict(7, "E2 windowed inner products", reps, t, 5)


def test_criterion_08_contraction():
    reps, t = suite("contraction")
    used = [r for r in reps if r.check != "flow measure drift"]
    verdict(8, "su(2) and su(1,1) contractions to e(2)", used, t, 10)


def test_criterion_09_dual_formula():
    reps, t = suite("dual-formula")
    verdict(9, "angle formula = homogeneous formula", reps, t, 5, extra_ok=len(reps) == 3)


def test_criterion_10_determinism():
    def full():
        return "".join(r.to_json() + "\n" for r in SU.run(list(SU.SUITES), CFG))

    a, b = full(), full()
    ok = a == b
    line = f"criterion 10: {'PASS' if ok else 'FAIL'} byte-identical reports over two full runs lines={a.count(chr(10))}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok
