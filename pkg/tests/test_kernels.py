import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckesharp import _kernels_py, kernels
from heckesharp.coeffring import cyclo_table
from heckesharp.hecke.algebra import RootDatumGL

compiled = pytest.importorskip("heckesharp._kernels")

exps = st.lists(st.integers(-4, 4), max_size=4).map(tuple).map(lambda e: _kernels_py.add_exponents(e, ()))


def term_dicts(phi):
    vec = st.lists(st.integers(-6, 6), min_size=phi, max_size=phi).map(tuple)
    return st.dictionaries(exps, vec, max_size=5).map(lambda d: {e: v for e, v in d.items() if any(v)})


@given(exps, exps)
def test_add_exponents_agree(e1, e2):
    assert compiled.add_exponents(e1, e2) == _kernels_py.add_exponents(e1, e2)


@given(st.sampled_from([1, 3, 4, 5, 8, 12]), st.data())
def test_mul_terms_agree(n, data):
    t = cyclo_table(n)
    a = data.draw(term_dicts(t.phi))
    b = data.draw(term_dicts(t.phi))
    assert compiled.mul_terms(a, b, t.phi, t.red) == _kernels_py.mul_terms(a, b, t.phi, t.red)


@given(term_dicts(2), term_dicts(2), st.integers(-3, 3), st.integers(-3, 3))
def test_add_terms_agree(a, b, fa, fb):
    assert compiled.add_terms(a, fa, b, fb) == _kernels_py.add_terms(a, fa, b, fb)


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=5).map(tuple), st.data())
def test_bernstein_chain_agree(x, data):
    j = data.draw(st.integers(0, len(x) - 2))
    n = data.draw(st.integers(0, 6))
    chain = compiled.bernstein_chain(x, j, n)
    assert chain == _kernels_py.bernstein_chain(x, j, n)
    assert len(chain) == n and all(sum(z) == sum(x) for z in chain)


@pytest.mark.parametrize("qdm", [(2, 1, 2), (3, 3, 2), (3, 2, 3), (4, 3, 2), (5, 2, 2), (7, 2, 3)])
@pytest.mark.parametrize("twist", [True, False])
def test_green_scan_agree(qdm, twist):
    assert compiled.green_scan(*qdm, twist) == _kernels_py.green_scan(*qdm, twist)


def test_hecke_products_agree_across_backends(backend):
    datum = RootDatumGL([(3, 0), (2, 1)])
    rng = np.random.default_rng(3)
    pairs = [(datum.random_element(rng), datum.random_element(rng)) for _ in range(10)]
    got = [str(a * b) for a, b in pairs]
    kernels.set_backend("python")
    want = [str(a * b) for a, b in pairs]
    assert got == want


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


def test_environment_forces_python_backend():
    env = dict(os.environ, HECKESHARP_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from heckesharp import kernels; print(kernels.BACKEND)"],
                         capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "python"


def test_benchmark_script_runs(capsys):
    import runpy
    path = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "benchmarks", "bench_kernels.py")
    runpy.run_path(path)["main"](["--repeat", "1", "--pairs", "2"])
    out = capsys.readouterr().out
    assert "green search q=3 d=3 m=2" in out and "speedup" in out
