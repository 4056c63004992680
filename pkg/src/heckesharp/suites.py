"""Property suites run against a descriptor.

Every suite is deterministic given the seed. Randomized lattice samples
use coordinates in [-window, window]; with ``window == 0`` the lattice
suites are reported as vacuous while the finite-group suites still run.
A failing suite keeps its smallest counterexample (fewest terms, then
smallest coordinates), printed in canonical element syntax.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .bernstein import (
    InertialDescriptor,
    _affine_apply,
    build_stabilizer_data,
    exactness_report,
    stab_orbit,
)
from .coeffring import TorusLaurent, laurent_divide_geometric
from .finstruct import twisted_algebra_structure
from .hecke.algebra import HeckeElement, RootDatumGL, is_central
from .hecke.crossed import invariant_projection

DEFAULT_WINDOW = 3
DEFAULT_SAMPLES = 20
DEFAULT_SEED = 0


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    counterexample: str | None = None
    vacuous: bool = False
    seconds: float = 0.0
    _size: tuple = field(default=(), repr=False)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, witness=None, size=()):
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None or size < self._size:
                self.counterexample = witness() if callable(witness) else str(witness)
                self._size = size

    def line(self) -> str:
        if self.vacuous:
            return f"PASS {self.name}: vacuous (window 0)"
        if self.passed:
            return f"PASS {self.name}: {self.cases} cases"
        return (f"FAIL {self.name}: {self.failures}/{self.cases} cases failed; "
                f"minimal counterexample: {self.counterexample}")

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "cases": self.cases,
                "failures": self.failures, "counterexample": self.counterexample,
                "vacuous": self.vacuous}


def _size(*elems):
    return (sum(len(e.terms) for e in elems),
            sum(abs(c) for e in elems for (x, _) in e.terms for c in x))


def _rand_x(rng, rank, window):
    return tuple(int(a) for a in rng.integers(-window, window + 1, rank))


# -- lattice suites ---------------------------------------------------------------------------

def quadratic_suite(datum: RootDatumGL) -> SuiteResult:
    res = SuiteResult("quadratic relation")
    for j in datum.simple:
        ts = datum.t_s(j)
        q = datum.q(datum.param_of[j])
        lhs = (ts + datum.one()) * (ts - datum.one() * q)
        res.record(lhs == datum.zero(), lambda: f"(T_{j + 1} + 1)(T_{j + 1} - q) = {lhs}", (j,))
    return res


def braid_suite(datum: RootDatumGL) -> SuiteResult:
    res = SuiteResult("braid relations")
    simple = list(datum.simple)
    for a in simple:
        for b in simple:
            if b <= a:
                continue
            ta, tb = datum.t_s(a), datum.t_s(b)
            if b == a + 1 and datum.block_of[a] == datum.block_of[b]:
                lhs, rhs = ta * tb * ta, tb * ta * tb
            else:
                lhs, rhs = ta * tb, tb * ta
            res.record(lhs == rhs, lambda: f"T_{a + 1}, T_{b + 1}: {lhs} != {rhs}", (a, b))
    return res


def bernstein_suite(datum: RootDatumGL, rng, samples: int, window: int) -> SuiteResult:
    """T_s theta_x - theta_{sx} T_s = (q - 1)(theta_x - theta_{sx}) / (1 - theta_{-alpha})."""
    res = SuiteResult("Bernstein relation")
    simple = list(datum.simple)
    if not simple:
        for _ in range(samples):
            x = _rand_x(rng, datum.rank, window)
            th = datum.theta(x)
            res.record(th * datum.one() == th, lambda: str(th), _size(th))
        return res
    for _ in range(samples):
        j = simple[int(rng.integers(len(simple)))]
        x = _rand_x(rng, datum.rank, window)
        sx = datum.act(datum.reflection(j), x)
        ts = datum.t_s(j)
        lhs = ts * datum.theta(x) - datum.theta(sx) * ts
        alpha = tuple(int(k == j) - int(k == j + 1) for k in range(datum.rank))
        quot = laurent_divide_geometric(TorusLaurent.theta(x) - TorusLaurent.theta(sx), alpha)
        qm1 = datum.q(datum.param_of[j]) - 1
        rhs = HeckeElement(datum, {(y, datum.identity): c * qm1 for y, c in quot.terms.items()})
        res.record(lhs == rhs, lambda: f"T_{j + 1} * theta{list(x)}: {lhs} != {rhs}",
                   (sum(map(abs, x)),))
    return res


def theta_suite(datum: RootDatumGL, rng, samples: int, window: int) -> SuiteResult:
    res = SuiteResult("theta homomorphism")
    for _ in range(samples):
        x, y = _rand_x(rng, datum.rank, window), _rand_x(rng, datum.rank, window)
        prod = datum.theta(x) * datum.theta(y)
        want = datum.theta(tuple(a + b for a, b in zip(x, y)))
        inv = datum.theta(x) * datum.theta(tuple(-a for a in x))
        ok = prod == want and inv == datum.one()
        res.record(ok, lambda: f"theta{list(x)} * theta{list(y)} = {prod}",
                   (sum(map(abs, x)) + sum(map(abs, y)),))
    return res


def basis_suite(datum: RootDatumGL, rng, samples: int, window: int) -> SuiteResult:
    """Products re-expand uniquely, and multiplication is associative."""
    res = SuiteResult("basis and associativity")
    for _ in range(samples):
        a, b, c = (datum.random_element(rng, 2, window) for _ in range(3))
        ab = a * b
        rebuilt = datum.zero()
        for (x, w), coeff in ab.terms.items():
            rebuilt = rebuilt + datum.theta(x, coeff) * datum.t_w(w)
        ok = rebuilt == ab and (ab * c) == a * (b * c)
        res.record(ok, lambda: f"a = {a}; b = {b}; c = {c}", _size(a, b, c))
    return res


def centrality_suite(datum: RootDatumGL, rng, samples: int, window: int) -> SuiteResult:
    res = SuiteResult("centre characterization")
    for _ in range(samples):
        x = _rand_x(rng, datum.rank, window)
        f = datum.orbit_sum(x)
        res.record(is_central(f), lambda: f"orbit sum {f} is not central", _size(f))
        invariant = all(datum.act(datum.reflection(j), x) == x for j in datum.simple)
        if not invariant:
            th = datum.theta(x)
            res.record(not is_central(th), lambda: f"{th} passes the centre test", _size(th))
    return res


def automorphism_suite(data, rng, samples: int, window: int) -> SuiteResult:
    """alpha(ab) = alpha(a) alpha(b) for the action of every stabilizing
    character, and a -> alpha_a is a homomorphism."""
    res = SuiteResult("automorphism multiplicativity")
    datum = data.datum
    g = data.char_group
    autos = {a: data.automorphism(a) for a in data.x_g_s}
    for a in data.x_g_s:
        for b in data.x_g_s:
            comp = autos[a] * autos[b]
            res.record(comp == autos[g.add(a, b)],
                       lambda: f"alpha_{list(a)} o alpha_{list(b)} = {comp!r} != alpha_{list(g.add(a, b))}",
                       (0,))
    keys = list(data.x_g_s)
    for _ in range(samples):
        a = keys[int(rng.integers(len(keys)))]
        phi = autos[a]
        x = datum.random_element(rng, 2, window)
        y = datum.random_element(rng, 2, window)
        ok = phi(x * y) == phi(x) * phi(y)
        res.record(ok, lambda: f"{phi!r} on x = {x}; y = {y}", _size(x, y))
    return res


def invariants_suite(data, rng, samples: int, window: int) -> SuiteResult:
    """Averaging over the translations in X^L(s) is idempotent with fixed image."""
    res = SuiteResult("invariant projection")
    datum = data.datum
    group = sorted({data.automorphism(a) for a in data.x_l_s}, key=repr)
    for _ in range(samples):
        f = datum.random_element(rng, 3, window, with_T=False)
        p = invariant_projection(f, group)
        ok = invariant_projection(p, group) == p and all(a(p) == p for a in group)
        res.record(ok, lambda: f"f = {f}", _size(f))
    return res


# -- finite suites ------------------------------------------------------------------------------

def finite_group_suite(data) -> SuiteResult:
    res = SuiteResult("finite groups and exact sequences")
    for name, ok in exactness_report(data).items():
        res.record(ok, f"check {name} fails", (0,))
    # the orbit of 0 is closed under every generator
    orbit = stab_orbit(data)
    for p in orbit:
        for f in data.generator_maps.values():
            q = _affine_apply(f, p)
            res.record(q in orbit, lambda: f"orbit not closed at {[str(c) for c in p]}", (0,))
    return res


def cocycle_suite(desc: InertialDescriptor) -> SuiteResult:
    res = SuiteResult("twisted group algebra")
    if desc.kappa is None:
        return res
    alg = twisted_algebra_structure(desc.kappa.group, desc.kappa)
    order = desc.kappa.group.order
    res.record(order == alg.irrep_count * alg.irrep_dimension ** 2,
               f"|G| = {order} but |C| delta^2 = {alg.irrep_count * alg.irrep_dimension ** 2}", (0,))
    res.record(desc.kappa.is_coboundary() == (alg.irrep_dimension == 1),
               "coboundary test disagrees with delta", (0,))
    return res


def run_suites(desc: InertialDescriptor, window: int = DEFAULT_WINDOW, samples: int = DEFAULT_SAMPLES,
               seed: int = DEFAULT_SEED) -> list:
    """Run every suite. InvalidCocycle and InconsistentDescriptor propagate."""
    data = build_stabilizer_data(desc)
    datum = data.datum
    out = []

    def timed(fn, *args):
        t0 = time.perf_counter()
        r = fn(*args)
        r.seconds = time.perf_counter() - t0
        out.append(r)

    timed(finite_group_suite, data)
    timed(cocycle_suite, desc)
    timed(quadratic_suite, datum)
    timed(braid_suite, datum)
    lattice = [("theta homomorphism", theta_suite), ("Bernstein relation", bernstein_suite),
               ("basis and associativity", basis_suite), ("centre characterization", centrality_suite)]
    for k, (name, fn) in enumerate(lattice):
        if window == 0:
            out.append(SuiteResult(name, vacuous=True))
        else:
            timed(fn, datum, np.random.default_rng([seed, k]), samples, window)
    for k, (name, fn) in enumerate([("automorphism multiplicativity", automorphism_suite),
                                    ("invariant projection", invariants_suite)]):
        if window == 0:
            out.append(SuiteResult(name, vacuous=True))
        else:
            timed(fn, data, np.random.default_rng([seed, 10 + k]), samples, window)
    return out


__all__ = [
    "SuiteResult", "automorphism_suite", "basis_suite", "bernstein_suite", "braid_suite",
    "centrality_suite", "cocycle_suite", "finite_group_suite", "invariants_suite",
    "quadratic_suite", "run_suites", "theta_suite",
]
