"""Acceptance criteria C1 to C9.

Each test prints one ``PASS``/``FAIL`` line straight to the terminal (the
capture is bypassed) with its measured runtime, then asserts.
"""

import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from heckesharp.bernstein import build_stabilizer_data, exactness_report, fixed_point_exists, random_descriptor
from heckesharp.catalog import builtin_descriptor, green_report, run_entry
from heckesharp.errors import InvalidAutomorphism
from heckesharp.finstruct import TwoCocycle, abelian_groups_up_to, is_coboundary, twisted_algebra_structure
from heckesharp.hecke import HeckeAutomorphism, RootDatumGL, is_central, standard_folklore_check
from oracles import encode, green_brute, image_of_one_minus_w, twisted_centre_dimension

CATALOG = ["weyl", "torus", "free", "decomposition", "cocycles"]


@pytest.fixture
def report(capsys):
    def emit(cid, title, ok, seconds=None, limit=None, detail=""):
        timing = ""
        if seconds is not None:
            timing = f" [{seconds:.2f} s" + (f", limit {limit} s]" if limit else "]")
        line = f"{'PASS' if ok else 'FAIL'} {cid}: {title}{timing}"
        if detail:
            line += f" ({detail})"
        with capsys.disabled():
            print("\n" + line)
        return ok
    return emit


# -- C1 ---------------------------------------------------------------------------------------

def test_c1_catalog_exactness(report):
    t0 = time.perf_counter()
    results = [run_entry(name) for name in CATALOG]
    dt = time.perf_counter() - t0
    bad = [f"{r.name}: {d}" for r in results for d in r.diff()]
    values = {(r.name, c.label): c.actual for r in results for c in r.checks}
    ok = (not bad and all(r.status == "pass" for r in results) and dt < 5
          and values[("weyl", "W_s")] == "S_2 x S_2 x S_2"
          and values[("weyl", "outer group")] == "Z/3"
          and values[("decomposition", "kappa trivial")] is True
          and values[("decomposition", "irrep count")] == 4
          and values[("cocycles", "irrep dimension")] == 2)
    n = sum(len(r.checks) for r in results)
    report("C1", f"catalog exactness, {n} checks over {len(results)} entries", ok, dt, 5,
           "; ".join(bad))
    assert ok, bad


# -- C2 ---------------------------------------------------------------------------------------

def _configurations():
    for total in range(1, 5):
        for cut in itertools.product([0, 1], repeat=total - 1):
            sizes, cur = [], 1
            for c in cut:
                if c:
                    sizes.append(cur)
                    cur = 1
                else:
                    cur += 1
            sizes.append(cur)
            yield [(e, 0) for e in sizes]
            if len(sizes) > 1:
                yield [(e, i) for i, e in enumerate(sizes)]


def _geometric_rhs(datum, x, j, qm1):
    """(q - 1)(theta_x - theta_sx) / (1 - theta_-alpha) as an explicit finite sum."""
    n = x[j] - x[j + 1]
    out = datum.zero()
    for k in range(abs(n)):
        step = -k if n > 0 else k + 1
        y = list(x)
        y[j] += step
        y[j + 1] -= step
        out = out + datum.theta(tuple(y)) * (qm1 if n > 0 else -qm1)
    return out


def _relation_cases(datum, rng, cases):
    failures = []
    one = datum.one()
    simple = list(datum.simple)
    for _ in range(cases):
        x = tuple(int(a) for a in rng.integers(-3, 4, datum.rank))
        y = tuple(int(a) for a in rng.integers(-3, 4, datum.rank))
        th = datum.theta(x)
        if not simple:
            if th * datum.theta(y) != datum.theta(tuple(a + b for a, b in zip(x, y))):
                failures.append(("theta", x, y))
            continue
        j = simple[int(rng.integers(len(simple)))]
        ts = datum.t_s(j)
        q = datum.q(datum.param_of[j])
        if (ts + one) * (ts - one * q) * th != datum.zero():
            failures.append(("quadratic", j, x))
        sx = list(x)
        sx[j], sx[j + 1] = sx[j + 1], sx[j]
        if ts * th - datum.theta(tuple(sx)) * ts != _geometric_rhs(datum, x, j, q - 1):
            failures.append(("bernstein", j, x))
        for b in simple:
            if b == j:
                continue
            tb = datum.t_s(b)
            if abs(b - j) == 1 and datum.block_of[b] == datum.block_of[j]:
                lhs, rhs = ts * tb * ts * th, tb * ts * tb * th
            else:
                lhs, rhs = ts * tb * th, tb * ts * th
            if lhs != rhs:
                failures.append(("braid", j, b, x))
    return failures


def test_c2_hecke_relations(report):
    t0 = time.perf_counter()
    configs = list(_configurations())
    failures = []
    for i, blocks in enumerate(configs):
        datum = RootDatumGL(blocks)
        fails = _relation_cases(datum, np.random.default_rng([2, i]), 200)
        failures += [(blocks,) + f for f in fails]
    dt = time.perf_counter() - t0
    ok = not failures and dt < 60
    report("C2", f"quadratic/braid/Bernstein relations, {len(configs)} configurations x 200 cases",
           ok, dt, 60, str(failures[:1]) if failures else "")
    assert ok, failures[:3]


# -- C3 ---------------------------------------------------------------------------------------

def _commutes_with_generators(f):
    d = f.datum
    gens = [d.t_s(j) for j in d.simple]
    gens += [d.theta(tuple(int(i == k) for i in range(d.rank))) for k in range(d.rank)]
    return all(g * f == f * g for g in gens)


def test_c3_centre(report):
    t0 = time.perf_counter()
    orbit_sums = 0
    bad = []
    for rank in (2, 3):
        datum = RootDatumGL([(rank, 0)])
        for x in itertools.product(range(-2, 3), repeat=rank):
            if list(x) != sorted(x, reverse=True):
                continue
            f = datum.orbit_sum(x)
            orbit_sums += 1
            if not (_commutes_with_generators(f) and is_central(f)):
                bad.append(("orbit sum", x))
    rng = np.random.default_rng(3)
    rejected = 0
    while rejected < 24:
        datum = RootDatumGL([(int(rng.integers(2, 4)), 0)])
        f = datum.random_element(rng, n_terms=2, coord=3, with_T=bool(rejected % 2))
        invariant = all(f.terms.get((datum.act(w, x), v)) == c
                        for (x, v), c in f.terms.items() for w in datum.weyl_elements())
        if invariant and f.is_theta_only():
            continue
        if is_central(f) or _commutes_with_generators(f):
            bad.append(("non-invariant", str(f)))
        rejected += 1
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    report("C3", f"centre: {orbit_sums} orbit sums central, {rejected} non-invariant elements rejected",
           ok, dt, 30, str(bad[:1]) if bad else "")
    assert ok, bad


# -- C4 ---------------------------------------------------------------------------------------

def test_c4_automorphisms(report):
    t0 = time.perf_counter()
    pairs = {}
    bad = []
    for i, name in enumerate(CATALOG):
        data = build_stabilizer_data(builtin_descriptor(name))
        datum = data.datum
        autos = [data.automorphism(a) for a in data.x_g_s]
        rng = np.random.default_rng([4, i])
        for _ in range(100):
            phi = autos[int(rng.integers(len(autos)))]
            a, b = datum.random_element(rng), datum.random_element(rng)
            if phi(a * b) != phi(a) * phi(b):
                bad.append((name, repr(phi)))
        pairs[name] = 100
    enforced = 0
    for blocks, w in [([(1, 0), (1, 1)], (1, 0)), ([(2, 0), (2, 1)], (2, 3, 0, 1)),
                      ([(1, 0), (1, 0), (1, 1)], (0, 2, 1))]:
        try:
            HeckeAutomorphism(RootDatumGL(blocks), w)
        except InvalidAutomorphism as exc:
            enforced += "parameters differ" in str(exc)
    HeckeAutomorphism(RootDatumGL([(1, 0), (1, 1), (1, 0)]), (2, 1, 0))
    dt = time.perf_counter() - t0
    ok = not bad and enforced == 3
    report("C4", f"automorphism multiplicativity on {sum(pairs.values())} pairs, "
                 f"q-matching enforced {enforced}/3", ok, dt)
    assert ok, bad


# -- C5 ---------------------------------------------------------------------------------------

def test_c5_twisted_group_algebras(report):
    t0 = time.perf_counter()
    groups = abelian_groups_up_to(16)
    per_group = math.ceil(500 / len(groups))
    cases = 0
    bad = []
    for i, group in enumerate(groups):
        rng = np.random.default_rng([5, i])
        for _ in range(per_group):
            k = TwoCocycle.random(group, rng)
            alg = twisted_algebra_structure(group, k)
            delta = alg.irrep_dimension
            cases += 1
            if not (isinstance(delta, int) and group.order == alg.irrep_count * delta ** 2):
                bad.append((str(group), "dimension law"))
            if is_coboundary(k) != (delta == 1):
                bad.append((str(group), "coboundary"))
            if twisted_centre_dimension(group, k) != alg.irrep_count:
                bad.append((str(group), "centre dimension"))
    dt = time.perf_counter() - t0
    ok = not bad and cases >= 500
    report("C5", f"|G| = |C| delta^2 and coboundary iff delta = 1 on {cases} cocycles over "
                 f"{len(groups)} groups", ok, dt, detail=str(bad[:1]) if bad else "")
    assert ok, bad


# -- C6 ---------------------------------------------------------------------------------------

def test_c6_fixed_points(report):
    t0 = time.perf_counter()
    cases = 0
    bad = []
    for r in range(1, 5):
        for w in itertools.permutations(range(r)):
            masks = {}
            for n in range(1, 9):
                for num in itertools.product(range(n), repeat=r):
                    # enumerate each point once: by its exact order n
                    if math.lcm(*(n // math.gcd(a, n) for a in num)) != n:
                        continue
                    c = tuple(Fraction(a, n) for a in num)
                    if n not in masks:
                        masks[n] = image_of_one_minus_w(w, 2 * n)
                    want = bool(masks[n][encode(c, 2 * n)])
                    cases += 1
                    if fixed_point_exists(w, c) != want:
                        bad.append((w, c))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    report("C6", f"fixed-point test vs exhaustive search, {cases} (w, c) pairs with r <= 4, order <= 8",
           ok, dt, 60, str(bad[:1]) if bad else "")
    assert ok, bad[:3]


# -- C7 ---------------------------------------------------------------------------------------

def test_c7_folklore(report):
    t0 = time.perf_counter()
    results = {(kind, n): standard_folklore_check(kind, n, n_samples=3)
               for kind in ("scalars", "m2", "hecke") for n in (2, 3)}
    dt = time.perf_counter() - t0
    ok = all(results.values())
    failed = [f"{k}/Z{n}" for (k, n), v in results.items() if not v]
    report("C7", "(End C[R] (x) B)^R = B x| R for B in scalars, M_2, GL_2 window; R = Z/2, Z/3",
           ok, dt, detail=", ".join(failed))
    assert ok, failed


# -- C8 ---------------------------------------------------------------------------------------

def test_c8_green_search(report):
    t0 = time.perf_counter()
    rep = green_report(3, 3, 2)
    dt = time.perf_counter() - t0
    ok = (dt < 1 and rep["solutions"] == green_brute(3, 3, 2)
          and rep["claimed"] == [182, 618] and rep["claimed_but_rejected"] == [182, 618])
    why = ", ".join(f"{k}: {v['failed'][0]}" for k, v in rep["rejections"].items())
    report("C8", f"green search q=3 d=3 m=2: solutions {rep['solutions']}, claimed {rep['claimed']} "
                 f"rejected ({why})", ok, dt, 1)
    assert ok


# -- C9 ---------------------------------------------------------------------------------------

def test_c9_exact_sequences(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    descs = [(name, builtin_descriptor(name)) for name in CATALOG]
    descs += [(f"random#{i}", random_descriptor(rng)) for i in range(50)]
    bad = []
    for name, desc in descs:
        data = build_stabilizer_data(desc)
        checks = exactness_report(data)
        checks["|Stab| = |X^L| |W^sharp|"] = data.stab_order == len(data.x_l_s) * data.w_sharp_order
        checks["|X^G| = |Stab| / |W_s|"] = len(data.x_g_s) * data.w_s_order == data.stab_order
        bad += [(name, k) for k, v in checks.items() if not v]
    dt = time.perf_counter() - t0
    ok = not bad
    report("C9", f"exact-sequence cardinalities on {len(descs)} descriptors", ok, dt,
           detail=str(bad[:1]) if bad else "")
    assert ok, bad
