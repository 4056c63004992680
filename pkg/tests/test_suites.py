import numpy as np
import pytest

from heckesharp import kernels
from heckesharp.bernstein import build_stabilizer_data, random_descriptor
from heckesharp.catalog import builtin_descriptor
from heckesharp.suites import SuiteResult, bernstein_suite, run_suites

NAMES = ["weyl", "torus", "free", "decomposition", "cocycles"]


@pytest.mark.parametrize("name", NAMES)
def test_all_suites_pass_on_catalog(name):
    results = run_suites(builtin_descriptor(name), window=2, samples=6, seed=1)
    assert len(results) == 10
    for r in results:
        assert r.passed, r.line()
    assert all(r.cases >= 6 for r in results[4:8])


def test_suites_pass_on_random_descriptors():
    rng = np.random.default_rng(11)
    for _ in range(4):
        for r in run_suites(random_descriptor(rng, max_rank=4), window=1, samples=3, seed=2):
            assert r.passed, r.line()


def test_window_zero_is_vacuous():
    results = run_suites(builtin_descriptor("weyl"), window=0, samples=5)
    vac = [r for r in results if r.vacuous]
    assert len(vac) == 6
    assert all(r.line().endswith("vacuous (window 0)") for r in vac)
    assert [r.vacuous for r in results] == [False] * 4 + [True] * 6


def test_fixed_seed_is_deterministic():
    desc = builtin_descriptor("free")
    a = [r.to_json() for r in run_suites(desc, window=2, samples=4, seed=5)]
    b = [r.to_json() for r in run_suites(desc, window=2, samples=4, seed=5)]
    assert a == b


def test_broken_kernel_is_caught(monkeypatch):
    good = kernels.bernstein_chain
    monkeypatch.setattr(kernels, "bernstein_chain", lambda x, j, n: good(x, j, n)[:-1])
    datum = build_stabilizer_data(builtin_descriptor("weyl")).datum
    r = bernstein_suite(datum, np.random.default_rng(0), 10, 2)
    assert not r.passed
    assert r.counterexample
    assert r.line().startswith("FAIL Bernstein relation")


def test_smallest_counterexample_is_kept():
    r = SuiteResult("demo")
    r.record(False, "big", size=(5,))
    r.record(False, "small", size=(1,))
    r.record(False, lambda: "larger", size=(3,))
    r.record(True)
    assert r.counterexample == "small"
    assert r.line() == "FAIL demo: 3/4 cases failed; minimal counterexample: small"
