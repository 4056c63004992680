"""Worked examples as executable regression entries, plus the search for
regular finite-field characters whose Frobenius twist matches a norm twist.

Each entry recomputes a list of named values from its descriptor and
compares them with the stored expectations. Values recorded as claims
(stated outcomes that the recomputation contradicts) do not fail an
entry; they turn its status into ``claim-discrepancy`` and both values
are reported side by side.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels as _k
from .bernstein import (
    Block,
    GammaAction,
    InertialDescriptor,
    build_stabilizer_data,
    fixed_point_exists,
    fixed_point_exists_on,
    quotient_torus,
    stab_orbit,
    structure_report,
    subquotient_invariants,
    weyl_group_gl,
    weyl_string,
)
from .coeffring import QmodZ
from .errors import RangeExceeded, UnknownEntry
from .hecke.automorphism import HeckeAutomorphism
from .finstruct import (
    FinAbGroup,
    TwoCocycle,
    cycle_string,
    group_string,
    is_coboundary,
    perm_compose,
    perm_from_cycles,
    twisted_algebra_structure,
)

GREEN_LIMIT = 2 ** 40


# -- descriptors ---------------------------------------------------------------------------

def _pair_table():
    # gamma = (1,0), eta = (0,1); the permutations act on five blocks of size one
    return [
        GammaAction((1, 0), perm_from_cycles([[2, 5], [3, 4]], 5), (0,) * 5),
        GammaAction((0, 1), perm_from_cycles([[2, 4], [3, 5]], 5), (0,) * 5),
        GammaAction((1, 1), perm_from_cycles([[2, 3], [4, 5]], 5), (0,) * 5),
    ]


def weyl_descriptor() -> InertialDescriptor:
    return InertialDescriptor(
        d=2, blocks=[Block(1, 2, 1)] * 3, gamma_group=FinAbGroup([3]),
        gamma_actions=[GammaAction((1,), perm_from_cycles([[1, 3, 5], [2, 4, 6]], 6), (0,) * 6)],
        notes="order-3 ramified twist cycling three GL_2 blocks")


def torus_descriptor() -> InertialDescriptor:
    return InertialDescriptor(
        d=1, blocks=[Block(4, 1, 1)] * 2, gamma_group=FinAbGroup([4]),
        gamma_actions=[GammaAction((1,), (0, 1), (Fraction(-1, 4), Fraction(1, 4)))],
        notes="eta acts on T_s by the translation chi_eta = (chi_0^-1, chi_0)")


def free_descriptor() -> InertialDescriptor:
    return InertialDescriptor(
        d=1, blocks=[Block(2, 1, 1), Block(2, 1, 1), Block(4, 1, 1)], gamma_group=FinAbGroup([4]),
        gamma_actions=[GammaAction((1,), (1, 0, 2), (Fraction(1, 2), 0, 0))],
        notes="gamma swaps the two GL_2 factors and translates by chi_0^2 on the first")


def decomposition_descriptor() -> InertialDescriptor:
    group = FinAbGroup([2, 2])
    return InertialDescriptor(
        d=1, blocks=[Block(2, 1, 1)] * 5, gamma_group=group, gamma_actions=_pair_table(),
        kappa=TwoCocycle.trivial(group),
        notes="Klein four group of self-twists with trivial cocycle")


def cocycles_descriptor() -> InertialDescriptor:
    group = FinAbGroup([2, 2])
    return InertialDescriptor(
        d=2, blocks=[Block(1, 1, 1)] * 5, gamma_group=group, gamma_actions=_pair_table(),
        v_mu_dim=2, kappa=TwoCocycle.from_bilinear(group, {(0, 1): 1}),
        notes="Klein four group of self-twists with non-split cocycle; v_mu_dim is a stand-in")


# -- helpers ------------------------------------------------------------------------------------

def _pt(*xs):
    return [str(QmodZ(Fraction(x))) for x in xs]


def _pairs(data):
    return sorted([cycle_string(r), list(a[:-1])] for r, a in data.stab_omega_pairs())


def _map_string(r, c):
    src = {r[k]: k for k in range(len(r))}
    out = []
    for j in range(len(r)):
        s = f"t{src[j] + 1}"
        out.append(s if c[j] == 0 else f"{s} + {c[j]}")
    return out


def _acts_freely(data):
    ident = tuple(range(data.desc.rank))
    for a in data.x_g_s:
        r, c = data.maps[a]
        for v in data.datum.weyl_elements():
            w = perm_compose(v, r)
            if (w, c) == (ident, tuple(QmodZ(0) for _ in c)):
                continue
            if fixed_point_exists(w, c):
                return False
    return True


def _unramified(data):
    return [a for a in data.x_l_s if all(x == 0 for x in a[:-1])]


# -- per-entry computations -------------------------------------------------------------------

def _compute_weyl(desc):
    data = build_stabilizer_data(desc)
    g = data.char_group
    rep = structure_report(desc, data)
    stab = set(data.stab_s())
    omega = data.stab_omega_pairs()
    prod = set()
    for r, a in omega:
        for v in data.datum.weyl_elements():
            for u in _unramified(data):
                prod.add((perm_compose(r, v), g.add(a, u)))
    gen = perm_from_cycles([[1, 3, 5], [2, 4, 6]], 6)
    cyclic = {(tuple(range(6)), (0, 0)), (gen, (1, 0)), (perm_compose(gen, gen), (2, 0))}
    return {
        "T_s rank": quotient_torus(desc, "T_s").rank,
        "W_s": weyl_string(desc),
        "X^L(omega) order": len(data.x_l_omega),
        "X^G(I(omega)) gammas": sorted(list(a[:-1]) for _, a in omega),
        "R_sharp": sorted(cycle_string(r) for r in data.r_sharp),
        "outer group": rep.outer_group,
        "Stab(omega) generated by ((135)(246), zeta)": {(r, a) for r, a in omega} == cyclic,
        "Stab(s) = Stab(omega) W_s X_nr(G/Z(G))": prod == stab,
        "|W_s_sharp| = |W_s| |R_sharp|": [data.w_sharp_order, data.w_s_order * len(data.r_sharp)],
        "|Stab(s)|": data.stab_order,
        "copies": rep.copies,
    }


def _compute_torus(desc):
    data = build_stabilizer_data(desc)
    g = data.char_group
    eta = (1, 0)
    unram = _unramified(data)
    x_l_s = set(data.x_l_s)
    prod = set(g.span(list(data.x_l_omega) + unram))
    t_sharp = quotient_torus(desc, "custom", [(0, Fraction(1, 2))])
    t_t = quotient_torus(desc, "custom_full", [desc.unramified_point(), data.maps[eta][1]])
    orbit = stab_orbit(data, include_unramified=False, include_weyl=False)
    return {
        "T_s rank": quotient_torus(desc, "T_s").rank,
        "X^L(omega)": sorted(list(a) for a in data.x_l_omega),
        "X^L(s) = <eta> X_nr(L/L#Z(G))": x_l_s == set(g.span([eta] + unram)),
        "chi_eta": [str(x) for x in data.maps[eta][1]],
        "X^L(s) != X^L(omega) X_nr(L/L#Z(G))": x_l_s != prod,
        "T_s_sharp lattice": [list(b) for b in quotient_torus(desc, "T_s_sharp").character_lattice],
        "T_t_sharp lattice": [list(b) for b in t_sharp.character_lattice],
        "T_t_sharp finite part": group_string(t_sharp.finite_invariants),
        "T_t lattice": [list(b) for b in t_t.character_lattice],
        "T_t finite part": group_string(t_t.finite_invariants),
        "orbit of 0 under eta": sorted([str(x) for x in p] for p in orbit),
    }


def _compute_free(desc):
    data = build_stabilizer_data(desc)
    gamma = (1, 0)
    r, c = data.maps[gamma]
    sharp = quotient_torus(desc, "T_s_sharp")
    sharp_z = quotient_torus(desc, "custom", [desc.unramified_point()])
    phi = data.automorphism(gamma)
    direct = HeckeAutomorphism(data.datum, r, c)
    g = data.char_group
    gen_span = set(g.span([gamma] + _unramified(data)))
    return {
        "W_s": weyl_string(desc),
        "R_sharp = W_s_sharp = W(G,L)": sorted(data.r_sharp) == sorted(weyl_group_gl(desc))
        and sorted(data.w_sharp()) == sorted(data.r_sharp),
        "R_sharp": sorted(cycle_string(x) for x in data.r_sharp),
        "X^L(omega) order": len(data.x_l_omega),
        "chi_gamma": [str(x) for x in c],
        "(w, gamma) acts as": _map_string(r, c),
        "fixed point on T_s": fixed_point_exists(r, c),
        "fixed point on X_nr(L#)": fixed_point_exists_on(sharp, r, c),
        "fixed point on X_nr(L#Z(G))": fixed_point_exists_on(sharp_z, r, c),
        "Stab(s) acts freely on T_s": _acts_freely(data),
        "Stab(s) generated by (w, gamma) and X_nr(L/L#Z(G))": gen_span == set(data.x_g_s),
        "alpha_(w, chi_gamma)(theta[1,0,0])": str(direct(data.datum.theta((1, 0, 0)))),
        "alpha(theta[1,0,0])": str(phi(data.datum.theta((1, 0, 0)))),
        "alpha(theta[0,1,0])": str(phi(data.datum.theta((0, 1, 0)))),
        "orbit size of 0": len(stab_orbit(data, include_unramified=False)),
    }


def _compute_decomposition(desc):
    data = build_stabilizer_data(desc)
    alg = twisted_algebra_structure(desc.kappa.group, desc.kappa)
    return {
        "W_s": weyl_string(desc),
        "X^L(omega) order": len(data.x_l_omega),
        "X^G(I(omega)) gammas": sorted(list(a[:-1]) for _, a in data.stab_omega_pairs()),
        "Stab(omega)": _pairs(data),
        "R_sharp = W_s_sharp": sorted(data.w_sharp()) == sorted(data.r_sharp),
        "outer group": group_string(data.outer_invariants()),
        "no translations": all(all(x == 0 for x in cm) for _, cm in data.generator_maps.values()),
        "kappa trivial": is_coboundary(desc.kappa),
        "irrep dimension": alg.irrep_dimension,
        "irrep count": alg.irrep_count,
    }


def _compute_cocycles(desc):
    data = build_stabilizer_data(desc)
    g = data.char_group
    alg = twisted_algebra_structure(desc.kappa.group, desc.kappa)
    rep = structure_report(desc, data)
    unram = _unramified(data)
    omega = data.stab_omega_pairs()
    prod = {g.add(a, b) for _, a in omega for b in data.x_l_s}
    return {
        "W_s": weyl_string(desc),
        "X^L(omega) order": len(data.x_l_omega),
        "n": desc.n,
        "X^L(s)": group_string(subquotient_invariants(g, data.x_l_s, [g.zero])),
        "X^L(s) = X_nr(L/L#Z(G))": set(data.x_l_s) == set(unram),
        "W_s_sharp = R_sharp": [data.w_sharp_order, len(data.r_sharp)],
        "outer group": rep.outer_group,
        "Stab(sigma)": _pairs(data),
        "X^G(s) = Stab(sigma) X^L(s)": prod == set(data.x_g_s),
        "|X^G(s)|": len(data.x_g_s),
        "kappa trivial": is_coboundary(desc.kappa),
        "irrep dimension": alg.irrep_dimension,
        "irrep count": alg.irrep_count,
        "report cocycle_trivial": rep.cocycle_trivial,
        "report flags non-removable matrix factor": any("not removable" in n for n in rep.notes),
        "residual group (intermediate)": rep.residual_group["intermediate"]["group"],
    }


# -- Green search ---------------------------------------------------------------------------------

def _is_prime_power(q) -> bool:
    if q < 2:
        return False
    p = next(p for p in range(2, q + 1) if q % p == 0)
    while q % p == 0:
        q //= p
    return q == 1


def _check_green_args(q, d, m):
    if not _is_prime_power(q):
        raise ValueError(f"q = {q} is not a prime power")
    if d < 1 or m < 1:
        raise ValueError("d and m must be positive")
    # compare exponents first so that huge inputs never build huge integers
    if d * m * math.log2(q) > 41 or q ** (d * m) > GREEN_LIMIT:
        raise RangeExceeded(f"q^(dm) = {q}^{d * m} exceeds 2^40")
    return q ** (d * m) - 1


def green_search(q: int, d: int, m: int, literal: bool = False) -> list:
    """Residues k mod q^(dm) - 1 that are regular (m distinct elements in
    the orbit under multiplication by q^d), satisfy kq = (k + N) q^(dj) for
    some j with N = (q^(dm) - 1)/(q - 1), and have kq outside the orbit of k.
    With ``literal`` only j = 0 is allowed in the twist condition."""
    _check_green_args(q, d, m)
    return list(_k.green_scan(q, d, m, not literal))


def green_table(q: int, d: int, m: int) -> list:
    """Per-residue verdicts of each condition; meant for small moduli."""
    modulus = _check_green_args(q, d, m)
    return [green_table_row(k, q, d, m) for k in range(modulus)]


# stated solution sets, keyed by (q, d, m)
GREEN_CLAIMS = {(3, 3, 2): [182, 618]}


def green_report(q: int, d: int, m: int) -> dict:
    modulus = _check_green_args(q, d, m)
    t0 = time.perf_counter()
    found = green_search(q, d, m)
    literal = green_search(q, d, m, literal=True)
    elapsed = time.perf_counter() - t0
    qd = pow(q, d, modulus) if modulus > 1 else 0
    orbits = sorted({tuple(sorted({k * pow(qd, j, modulus) % modulus for j in range(m)})) for k in found})
    out = {
        "q": q, "d": d, "m": m, "modulus": modulus, "norm_exponent": modulus // (q - 1),
        "solutions": found, "literal_solutions": literal,
        "orbits": [list(o) for o in orbits], "seconds": round(elapsed, 6),
    }
    claim = GREEN_CLAIMS.get((q, d, m))
    if claim is not None:
        out["claimed"] = claim
        out["claimed_but_rejected"] = sorted(set(claim) - set(found))
        out["found_but_not_claimed"] = sorted(set(found) - set(claim))
        out["rejections"] = {str(k): _green_rejection(k, q, d, m) for k in out["claimed_but_rejected"]}
    return out


def _green_rejection(k, q, d, m):
    row = green_table_row(k, q, d, m)
    failed = [c for c in ("regular", "twist", "kq_outside_orbit") if not row[c]]
    return {"failed": failed, "orbit": row["orbit"], "kq": row["kq"]}


def green_table_row(k, q, d, m) -> dict:
    modulus = _check_green_args(q, d, m)
    norm = modulus // (q - 1)
    qd = pow(q, d, modulus)
    orbit = [k * pow(qd, j, modulus) % modulus for j in range(m)]
    kq = k * q % modulus
    target = (k + norm) % modulus
    twist = kq in [target * pow(qd, j, modulus) % modulus for j in range(m)]
    return {"k": k, "orbit": orbit, "kq": kq, "regular": len(set(orbit)) == m, "twist": twist,
            "twist_literal": kq == target, "kq_outside_orbit": kq not in orbit,
            "selected": len(set(orbit)) == m and twist and kq not in orbit}


def _compute_green(_desc):
    found = green_search(3, 3, 2)
    qd = 27
    closed = all(k * qd % 728 in found for k in found)
    return {
        "modulus": 3 ** 6 - 1,
        "norm exponent": (3 ** 6 - 1) // 2,
        "solutions": found,
        "literal solutions": green_search(3, 3, 2, literal=True),
        "solutions closed under k -> kq^d": closed,
        "182 q^d mod 728": 182 * qd % 728,
        "182 q mod 728": 182 * 3 % 728,
    }


# -- entries -------------------------------------------------------------------------------------

@dataclass
class CatalogEntry:
    name: str
    title: str
    descriptor: object          # zero-argument builder, or None
    compute: object             # descriptor -> {label: value}
    expected: dict
    derived: frozenset = frozenset()   # labels whose expected value was computed, not stated
    claims: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)


@dataclass
class CheckResult:
    label: str
    expected: object
    actual: object
    source: str

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"label": self.label, "expected": _jsonable(self.expected),
                "actual": _jsonable(self.actual), "source": self.source, "ok": self.ok}


@dataclass
class EntryResult:
    name: str
    title: str
    status: str                 # pass | fail | claim-discrepancy | note
    checks: list
    claims: list
    notes: list
    seconds: float

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def diff(self) -> list:
        lines = [f"{c.label}: expected {c.expected!r}, got {c.actual!r}" for c in self.checks if not c.ok]
        lines += [f"{c.label}: claimed {c.expected!r}, recomputed {c.actual!r}" for c in self.claims if not c.ok]
        return lines

    def to_json(self) -> dict:
        return {"name": self.name, "title": self.title, "status": self.status,
                "checks": [c.to_json() for c in self.checks],
                "claims": [c.to_json() for c in self.claims],
                "notes": self.notes, "seconds": round(self.seconds, 6)}

    def to_text(self) -> str:
        lines = [f"[{self.status}] {self.name}: {self.title}"]
        for c in self.checks:
            mark = "ok  " if c.ok else "FAIL"
            lines.append(f"  {mark} {c.label} = {c.actual!r}"
                         + ("" if c.ok else f" (expected {c.expected!r})"))
        for c in self.claims:
            mark = "ok  " if c.ok else "DIFF"
            lines.append(f"  {mark} claim {c.label}: stated {c.expected!r}, recomputed {c.actual!r}")
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


ENTRIES = {
    "weyl": CatalogEntry(
        name="weyl",
        title="Weyl group in G# bigger than in G",
        descriptor=weyl_descriptor,
        compute=_compute_weyl,
        expected={
            "T_s rank": 6,
            "W_s": "S_2 x S_2 x S_2",
            "X^L(omega) order": 1,
            "X^G(I(omega)) gammas": [[0], [1], [2]],
            "R_sharp": ["()", "(1 3 5)(2 4 6)", "(1 5 3)(2 6 4)"],
            "outer group": "Z/3",
            "Stab(omega) generated by ((135)(246), zeta)": True,
            "Stab(s) = Stab(omega) W_s X_nr(G/Z(G))": True,
            "|W_s_sharp| = |W_s| |R_sharp|": [24, 24],
            "|Stab(s)|": 288,
            "copies": 1,
        },
        derived=frozenset({"|Stab(s)|", "|W_s_sharp| = |W_s| |R_sharp|"}),
        notes=["a single inertial class for G# lies under s, so W_t# = W_s# = W_s x| Z/3; "
               "the descriptor carries no data to recompute this, it is recorded only"],
    ),
    "torus": CatalogEntry(
        name="torus",
        title="Torus for s in G# smaller than expected",
        descriptor=torus_descriptor,
        compute=_compute_torus,
        expected={
            "T_s rank": 2,
            "X^L(omega)": [[0, 0], [2, 4]],
            "X^L(s) = <eta> X_nr(L/L#Z(G))": True,
            "chi_eta": _pt(Fraction(-1, 4), Fraction(1, 4)),
            "X^L(s) != X^L(omega) X_nr(L/L#Z(G))": True,
            "T_s_sharp lattice": [[1, -1]],
            "T_t_sharp lattice": [[2, -2]],
            "T_t_sharp finite part": "Z/2",
            "T_t lattice": [[2, -2], [0, 8]],
            "T_t finite part": "Z/2 x Z/8",
            "orbit of 0 under eta": sorted([_pt(Fraction(-k, 4), Fraction(k, 4)) for k in range(4)]),
        },
        derived=frozenset({"T_s_sharp lattice", "T_t lattice", "T_t finite part", "X^L(omega)"}),
        notes=["coordinates of X^L(omega): (eta exponent, exponent of the order-8 unramified "
               "generator); (2, 4) is eta^2 chi_0^2"],
    ),
    "free": CatalogEntry(
        name="free",
        title="W_s# acts on torus without fixed points",
        descriptor=free_descriptor,
        compute=_compute_free,
        expected={
            "W_s": "1",
            "R_sharp = W_s_sharp = W(G,L)": True,
            "R_sharp": ["()", "(1 2)"],
            "X^L(omega) order": 1,
            "chi_gamma": _pt(Fraction(1, 2), 0, 0),
            "(w, gamma) acts as": ["t2 + 1/2", "t1", "t3"],
            "fixed point on T_s": False,
            "fixed point on X_nr(L#)": False,
            "fixed point on X_nr(L#Z(G))": False,
            "Stab(s) acts freely on T_s": True,
            "Stab(s) generated by (w, gamma) and X_nr(L/L#Z(G))": True,
            "alpha_(w, chi_gamma)(theta[1,0,0])": "-1 * theta[0,1,0] * T[()]",
            "alpha(theta[1,0,0])": "1 * theta[0,1,0] * T[()]",
            "alpha(theta[0,1,0])": "-1 * theta[1,0,0] * T[()]",
            "orbit size of 0": 4,
        },
        derived=frozenset({"alpha(theta[1,0,0])", "alpha(theta[0,1,0])", "orbit size of 0",
                           "Stab(s) generated by (w, gamma) and X_nr(L/L#Z(G))"}),
        notes=["alpha_(w, chi_gamma) plugs chi_gamma into the automorphism formula directly; "
               "alpha is the transport f -> f o (map)^-1 along the affine map, which makes "
               "the assignment a group action",
               "the stated two-element Stab(omega) = {1, (w, gamma)} is not checked: (w, gamma) "
               "translates by chi_gamma != 0, so here Stab(omega) is read as the subgroup "
               "generated together with X_nr(L/L#Z(G))"],
    ),
    "decomposition": CatalogEntry(
        name="decomposition",
        title="Decomposition into 4 irreducibles upon restriction to G#",
        descriptor=decomposition_descriptor,
        compute=_compute_decomposition,
        expected={
            "W_s": "1",
            "X^L(omega) order": 1,
            "X^G(I(omega)) gammas": [[0, 0], [0, 1], [1, 0], [1, 1]],
            "Stab(omega)": [["()", [0, 0]], ["(2 3)(4 5)", [1, 1]],
                            ["(2 4)(3 5)", [0, 1]], ["(2 5)(3 4)", [1, 0]]],
            "R_sharp = W_s_sharp": True,
            "outer group": "Z/2 x Z/2",
            "no translations": True,
            "kappa trivial": True,
            "irrep dimension": 1,
            "irrep count": 4,
        },
    ),
    "cocycles": CatalogEntry(
        name="cocycles",
        title="non-trivial 2-cocycles",
        descriptor=cocycles_descriptor,
        compute=_compute_cocycles,
        expected={
            "W_s": "1",
            "X^L(omega) order": 1,
            "n": 10,
            "X^L(s)": "Z/10",
            "X^L(s) = X_nr(L/L#Z(G))": True,
            "W_s_sharp = R_sharp": [4, 4],
            "outer group": "Z/2 x Z/2",
            "Stab(sigma)": [["()", [0, 0]], ["(2 3)(4 5)", [1, 1]],
                            ["(2 4)(3 5)", [0, 1]], ["(2 5)(3 4)", [1, 0]]],
            "X^G(s) = Stab(sigma) X^L(s)": True,
            "|X^G(s)|": 40,
            "kappa trivial": False,
            "irrep dimension": 2,
            "irrep count": 1,
            "report cocycle_trivial": False,
            "report flags non-removable matrix factor": True,
            "residual group (intermediate)": "Z/10",
        },
        derived=frozenset({"|X^G(s)|"}),
        notes=["the residual group modulo the unramified n-torsion as well is trivial; "
               "the Z/10 translation group is the intermediate one"],
    ),
    "green": CatalogEntry(
        name="green",
        title="Types conjugate in G but not in G^1 G#",
        descriptor=None,
        compute=_compute_green,
        expected={
            "modulus": 728,
            "norm exponent": 364,
            "solutions": [],
            "literal solutions": [],
            "solutions closed under k -> kq^d": True,
            "182 q mod 728": 546,
        },
        derived=frozenset({"solutions", "literal solutions", "solutions closed under k -> kq^d",
                           "182 q mod 728"}),
        claims={"solutions": [182, 618], "182 q^d mod 728": 618},
        notes=["182 q = 546 = 182 q^d mod 728, so kq lies in the Frobenius orbit of k = 182 "
               "and the non-fixity condition fails; no residue passes all three conditions"],
    ),
    "type-blind": CatalogEntry(
        name="type-blind",
        title="Type does not see all G#-subrepresentations",
        descriptor=None, compute=None, expected={},
        notes=["GL_2(F) supercuspidal with X_nr(G, omega) = {1, chi_-}: the two eigenspaces of "
               "the normalized intertwiner are G^1-subrepresentations conjugate by an element "
               "outside G^1 Z(G); a type sees only one of them",
               "no combinatorial shadow in a descriptor; recorded as a note"],
    ),
    "g1-conjugacy": CatalogEntry(
        name="g1-conjugacy",
        title="Types conjugate in G^1 G# but not in G^1",
        descriptor=None, compute=None, expected={},
        notes=["two-block Levi GL_m(D)^2 whose second factor is twisted by conjugation with "
               "the uniformizer of D; the conjugating element lies in G# outside G^1",
               "no combinatorial shadow in a descriptor; recorded as a note"],
    ),
}


def entry_names() -> list:
    return list(ENTRIES)


def get_entry(name: str) -> CatalogEntry:
    try:
        return ENTRIES[name]
    except KeyError:
        raise UnknownEntry(f"unknown catalog entry {name!r}; known: {', '.join(ENTRIES)}") from None


def builtin_descriptor(name: str) -> InertialDescriptor:
    entry = get_entry(name)
    if entry.descriptor is None:
        raise UnknownEntry(f"catalog entry {name!r} has no descriptor")
    return entry.descriptor()


def run_entry(name: str) -> EntryResult:
    entry = get_entry(name)
    t0 = time.perf_counter()
    if entry.compute is None:
        return EntryResult(entry.name, entry.title, "note", [], [], list(entry.notes), 0.0)
    desc = entry.descriptor() if entry.descriptor is not None else None
    actual = entry.compute(desc)
    checks = [CheckResult(label, exp, actual.get(label, "<missing>"),
                          "derived" if label in entry.derived else "stated")
              for label, exp in entry.expected.items()]
    claims = [CheckResult(label, exp, actual.get(label, "<missing>"), "claim")
              for label, exp in entry.claims.items()]
    if not all(c.ok for c in checks):
        status = "fail"
    elif not all(c.ok for c in claims):
        status = "claim-discrepancy"
    else:
        status = "pass"
    return EntryResult(entry.name, entry.title, status, checks, claims, list(entry.notes),
                       time.perf_counter() - t0)


def run_all() -> list:
    return [run_entry(name) for name in ENTRIES]


__all__ = [
    "CatalogEntry", "CheckResult", "ENTRIES", "EntryResult", "GREEN_CLAIMS",
    "builtin_descriptor", "entry_names", "get_entry", "green_report", "green_search",
    "green_table", "run_all", "run_entry",
]
