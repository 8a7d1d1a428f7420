import numpy as np
import pytest

from bosonepr import verify


def test_every_suite_runs_and_passes():
    results = verify.run_suites(seed=3, trials=20)
    assert [r.name for r in results] == [s.name for s in verify.SUITES]
    failed = [r.line() for r in results if not r.passed]
    assert not failed, failed


def test_suites_cover_every_module():
    prefixes = {s.name.split(".")[0] for s in verify.SUITES}
    assert prefixes == {"kinematics", "spin1rep", "states", "observables", "correlators", "bell"}


def test_single_trial_and_determinism():
    a = [r.line() for r in verify.run_suites(seed=1, trials=1)]
    b = [r.line() for r in verify.run_suites(seed=1, trials=1)]
    assert a == b and len(a) == len(verify.SUITES)
    with pytest.raises(ValueError):
        verify.run_suites(trials=0)


def test_failing_suite_is_reported():
    def broken(rng, trials):
        raise ValueError("boom")

    res = verify.run_suites(trials=1, suites=(verify.Suite("demo.broken", broken, 1e-12),
                                              verify.Suite("demo.loose", lambda rng, t: 1.0, 1e-3)))
    assert not res[0].passed and np.isinf(res[0].residual)
    assert not res[1].passed and res[1].line().startswith("FAIL")


def test_random_generators_respect_ranges():
    rng = np.random.default_rng(0)
    for _ in range(100):
        p = verify.random_momentum(rng)
        assert 0.1 <= p.m <= 10 and p.abs_p <= 50 * p.m * (1 + 1e-12)
