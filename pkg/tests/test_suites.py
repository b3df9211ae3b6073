import numpy as np
import pytest

from harmreps import repfun as R
from harmreps import suites as SU


def test_rng_is_per_suite():
    cfg = SU.SuiteConfig(seed=5)
    a = cfg.rng("ladder").random(4)
    assert np.array_equal(a, SU.SuiteConfig(seed=5).rng("ladder").random(4))
    assert not np.array_equal(a, cfg.rng("harmonic").random(4))
    assert not np.array_equal(a, SU.SuiteConfig(seed=6).rng("ladder").random(4))


def test_config_echo_is_serializable_and_drops_timing():
    from harmreps.report import dumps
    cfg = SU.SuiteConfig(label=(("family", "su2"), ("ell", 1.0)), timing=True)
    e = cfg.echo()
    assert "timing" not in e and e["label"] == [["family", "su2"], ["ell", 1.0]]
    dumps(e)


def test_tol_override():
    rs = SU.run(["spinor-table"], SU.SuiteConfig(tol=0.5))
    assert rs and all(r.tolerance == 0.5 for r in rs)


def test_run_is_sorted_and_deterministic():
    cfg = SU.SuiteConfig(npoints=10)
    a = SU.run(["dual-formula", "commutators"], cfg)
    b = SU.run(["commutators", "dual-formula"], cfg)
    assert [r.to_json() for r in a] == [r.to_json() for r in b]
    assert [r.sort_key() for r in a] == sorted(r.sort_key() for r in a)


def test_seed_changes_samples_not_verdicts():
    a = SU.run(["commutators"], SU.SuiteConfig(seed=1, npoints=20, algebra="su2"))
    b = SU.run(["commutators"], SU.SuiteConfig(seed=2, npoints=20, algebra="su2"))
    assert all(r.passed for r in a + b)
    assert [r.max_residual for r in a] != [r.max_residual for r in b]


def test_wall_time_with_timing():
    rs = SU.run(["spinor-table"], SU.SuiteConfig(timing=True))
    assert all(r.wall_time is not None and r.wall_time >= 0 for r in rs)
    assert all(r.wall_time is None for r in SU.run(["spinor-table"], SU.SuiteConfig()))


def test_label_from_pairs():
    lab = SU.label_from_pairs((("family", "su2"), ("ell", 1.5)))
    assert isinstance(lab, R.SU2Label)


@pytest.mark.parametrize("fam", ["sl2c", "su2", "su11-disc", "e2"])
def test_ladder_members_exist(fam):
    assert SU.ladder_members(fam)
