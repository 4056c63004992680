"""Finite-group and torus data attached to an inertial-class descriptor.

Coordinates: every Levi factor GL_{m_i}(D) contributes e_i consecutive
coordinates of the torus T_s; a coordinate records the value of an
unramified character on a reduced-norm-valuation-one element, raised to
the power t_i (so T_s already divides out the t_i-torsion stabilizer).
Torsion points are tuples of QmodZ.

The character group considered is A = Gamma x Z/n, where Z/n is the
diagonal unramified n-torsion (n = d * sum m_i e_i) acting on T_s by the
translation nu = (t_i / n). Every stabilizing element a of A acts on T_s by
an affine map t -> r_a . t + c_a with r_a order-preserving on blocks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .coeffring import QmodZ
from .errors import BlockMismatch, InconsistentDescriptor
from .finstruct import (
    BlockPermutation,
    FinAbGroup,
    TwoCocycle,
    blocks_from_sizes,
    cycle_string,
    group_string,
    int_matrix,
    integer_kernel,
    is_coboundary,
    perm_act,
    perm_compose,
    perm_inverse,
    snf,
    snf_diagonal,
)
from .hecke.algebra import RootDatumGL
from .hecke.automorphism import HeckeAutomorphism


@dataclass(frozen=True)
class Block:
    m: int
    e: int
    t: int = 1
    q_param: int = 0

    @property
    def key(self):
        return (self.m, self.e, self.t, self.q_param)


@dataclass(frozen=True)
class GammaAction:
    """Declared action of one element of Gamma; ``w is None`` marks an
    element that does not stabilize the inertial class."""

    gamma: tuple
    w: tuple | None
    chi: tuple | None


@dataclass
class InertialDescriptor:
    d: int
    blocks: list
    gamma_group: FinAbGroup
    gamma_actions: list = field(default_factory=list)
    v_mu_dim: int = 1
    x_l_omega_vmu_order: int = 1
    kappa: TwoCocycle | None = None
    notes: str = ""

    def __post_init__(self):
        self.blocks = [b if isinstance(b, Block) else Block(*b) for b in self.blocks]
        if self.d < 1:
            raise InconsistentDescriptor("d must be positive")
        if not self.blocks:
            raise InconsistentDescriptor("at least one block is required")
        for i, b in enumerate(self.blocks):
            if b.m < 1 or b.e < 1 or b.t < 1:
                raise InconsistentDescriptor(f"block {i + 1}: m, e, t must be positive")
        if self.v_mu_dim < 1 or self.x_l_omega_vmu_order < 1:
            raise InconsistentDescriptor("v_mu_dim and x_l_omega_vmu_order must be positive")

    @property
    def positions(self):
        return blocks_from_sizes([b.e for b in self.blocks])

    @property
    def rank(self) -> int:
        return sum(b.e for b in self.blocks)

    @property
    def n(self) -> int:
        return self.d * sum(b.m * b.e for b in self.blocks)

    def coord_blocks(self):
        return [i for i, b in enumerate(self.blocks) for _ in range(b.e)]

    def datum(self) -> RootDatumGL:
        return RootDatumGL([(b.e, b.q_param) for b in self.blocks])

    def unramified_point(self) -> tuple:
        n = self.n
        return tuple(QmodZ(Fraction(self.blocks[i].t, n)) for i in self.coord_blocks())


# -- affine maps on the torus ---------------------------------------------------------

def _affine_compose(f, g):
    """f o g for maps (r, c): t -> r.t + c."""
    rf, cf = f
    rg, cg = g
    return perm_compose(rf, rg), tuple(a + b for a, b in zip(perm_act(rf, cg), cf))


def _affine_apply(f, t):
    r, c = f
    return tuple(a + b for a, b in zip(perm_act(r, t), c))


def _fmt_point(c):
    return "(" + ", ".join(str(x) for x in c) + ")"


@dataclass
class StabilizerData:
    desc: InertialDescriptor
    datum: RootDatumGL
    char_group: FinAbGroup          # A = Gamma x Z/n
    maps: dict                      # stabilizing a -> (r_a, c_a)
    generator_maps: dict            # declared stabilizing gamma -> (r, c)
    x_l_s: list
    x_g_s: list
    r_sharp: list                   # distinct r_a, as permutation tuples
    x_l_omega: list
    x_l_omega_vmu: list

    @property
    def w_s_order(self) -> int:
        return self.datum.weyl_order

    @property
    def stab_order(self) -> int:
        return len(self.x_g_s) * self.w_s_order

    @property
    def w_sharp_order(self) -> int:
        return self.w_s_order * len(self.r_sharp)

    def stab_s(self):
        """Yield every pair (w, a) of Stab(s)."""
        for a in self.x_g_s:
            r = self.maps[a][0]
            for v in self.datum.weyl_elements():
                yield perm_compose(v, r), a

    def stab_omega_pairs(self):
        """Pairs (r_a, a) with c_a = 0, one order-preserving r_a per a."""
        zero = tuple(QmodZ(0) for _ in range(self.desc.rank))
        return [(self.maps[a][0], a) for a in self.x_g_s if self.maps[a][1] == zero]

    def stab_omega(self):
        zero = tuple(QmodZ(0) for _ in range(self.desc.rank))
        for a in self.x_g_s:
            r, c = self.maps[a]
            if c == zero:
                for v in self.datum.weyl_elements():
                    yield perm_compose(v, r), a

    def w_sharp(self):
        for r in self.r_sharp:
            for v in self.datum.weyl_elements():
                yield perm_compose(v, r)

    def outer_invariants(self) -> list:
        return subquotient_invariants(self.char_group, self.x_g_s, self.x_l_s)

    def automorphism(self, a) -> HeckeAutomorphism:
        """Transport of functions along t -> r_a.t + c_a, i.e. f -> f o (map)^-1.
        On theta_x this is zeta(-x . r_a^-1 c_a) theta_{r_a x}, so a -> automorphism(a)
        is a homomorphism."""
        r, c = self.maps[a]
        return HeckeAutomorphism(self.datum, r, perm_act(perm_inverse(r), c))

    def gamma_part(self, a):
        return a[:-1]


def _normalize_declared(desc, act, positions, blocks):
    """Validate one declared action and return (r, chi) with r order-preserving."""
    r = desc.rank
    name = f"gamma {list(act.gamma)}"
    try:
        bp = BlockPermutation(act.w, positions)
    except BlockMismatch as exc:
        raise BlockMismatch(f"{name}: {exc}") from None
    except ValueError as exc:
        raise InconsistentDescriptor(f"{name}: {exc}") from None
    for i, j in enumerate(bp.block_map):
        if blocks[i].key != blocks[j].key:
            bi, bj = blocks[i], blocks[j]
            raise BlockMismatch(
                f"{name}: w moves block {i + 1} (m={bi.m}, e={bi.e}, t={bi.t}, q={bi.q_param}) "
                f"onto block {j + 1} (m={bj.m}, e={bj.e}, t={bj.t}, q={bj.q_param})")
    if len(act.chi) != r:
        raise InconsistentDescriptor(f"{name}: chi needs {r} coordinates")
    chi = tuple(QmodZ(c) for c in act.chi)
    for i, (s, e) in enumerate(positions):
        if len(set(chi[s:s + e])) > 1:
            raise InconsistentDescriptor(f"{name}: chi is not constant on block {i + 1}")
    _, rep = bp.split()
    return rep.mapping, chi


def build_stabilizer_data(desc: InertialDescriptor) -> StabilizerData:
    gamma = desc.gamma_group
    positions = desc.positions
    blocks = desc.blocks
    r = desc.rank
    n = desc.n
    ident = tuple(range(r))
    zero_pt = tuple(QmodZ(0) for _ in range(r))

    declared = {}
    bottom = []
    for act in desc.gamma_actions:
        g = gamma.elem(act.gamma)
        if g in declared or g in bottom:
            raise InconsistentDescriptor(f"gamma {list(g)} is declared twice")
        if act.w is None:
            bottom.append(g)
        else:
            declared[g] = _normalize_declared(desc, act, positions, blocks)
    if gamma.zero in declared and declared[gamma.zero] != (ident, zero_pt):
        raise InconsistentDescriptor("the identity of Gamma must act trivially")
    if gamma.zero in bottom:
        raise InconsistentDescriptor("the identity of Gamma always stabilizes")

    # closure of the declared elements inside Gamma, with path-consistency
    maps = {gamma.zero: (ident, zero_pt)}
    origin = {gamma.zero: "identity"}
    queue = [gamma.zero]
    gens = list(declared.items())
    for h in queue:
        for g, gm in gens:
            k = gamma.add(h, g)
            km = _affine_compose(gm, maps[h])
            how = f"{origin[h]} * {list(g)}" if h != gamma.zero else f"{list(g)}"
            if k in maps:
                if maps[k] != km:
                    raise InconsistentDescriptor(
                        f"relation fails for gamma {list(k)}: {how} acts by "
                        f"w={cycle_string(km[0])}, chi={_fmt_point(km[1])} but "
                        f"{origin[k]} acts by w={cycle_string(maps[k][0])}, chi={_fmt_point(maps[k][1])}")
            else:
                maps[k] = km
                origin[k] = how
                queue.append(k)
    for g, gm in declared.items():
        if maps[g] != gm:
            raise InconsistentDescriptor(
                f"declared action of gamma {list(g)} disagrees with the product {origin[g]}")
    for g in bottom:
        if g in maps:
            raise InconsistentDescriptor(
                f"gamma {list(g)} is declared non-stabilizing but equals {origin[g]}")

    nu = desc.unramified_point()
    char_group = FinAbGroup(gamma.moduli + (n,))
    full = {}
    for g, (rg, cg) in maps.items():
        for k in range(n):
            full[g + (k,)] = (rg, tuple(a + b * k for a, b in zip(cg, nu)))
    x_g_s = sorted(full)
    x_l_s = [a for a in x_g_s if full[a][0] == ident]
    r_sharp = sorted({full[a][0] for a in x_g_s})
    x_l_omega = [a for a in x_l_s if full[a][1] == zero_pt]

    order = desc.x_l_omega_vmu_order
    if len(x_l_omega) % order:
        raise InconsistentDescriptor(
            f"|X^L(omega)| = {len(x_l_omega)} is not divisible by x_l_omega_vmu_order = {order}")
    subs = subgroups_of_order(char_group, x_l_omega, order)
    if len(subs) != 1:
        raise InconsistentDescriptor(
            f"X^L(omega) has {len(subs)} subgroups of order {order}; cannot pick X^L(omega, V_mu)")

    data = StabilizerData(
        desc=desc, datum=desc.datum(), char_group=char_group, maps=full,
        generator_maps=declared, x_l_s=x_l_s, x_g_s=x_g_s, r_sharp=list(r_sharp),
        x_l_omega=x_l_omega, x_l_omega_vmu=sorted(subs[0]))
    if data.stab_order != len(data.x_l_s) * data.w_sharp_order:
        raise InconsistentDescriptor("exactness |Stab(s)| = |X^L(s)| |W_s^sharp| fails")
    return data


# -- subgroup helpers -----------------------------------------------------------------

def subgroups_of_order(group: FinAbGroup, elements, order) -> list:
    """All subgroups of the given order inside the subgroup ``elements``."""
    elements = list(elements)
    if order == 1:
        return [frozenset([group.zero])]
    if order == len(elements):
        return [frozenset(elements)]
    found = []
    seen = set()
    # a subgroup of a group of rank k is generated by at most k elements
    for k in range(0, group.rank + 1):
        for combo in itertools.combinations(elements, k):
            sub = frozenset(group.span(combo))
            if len(sub) == order and sub not in seen:
                seen.add(sub)
                found.append(sub)
    return found


def subquotient_invariants(group: FinAbGroup, big, small) -> list:
    """Invariant factors of <big>/<small> (both given as element lists)."""
    small = set(small)
    big = list(big)
    index = {}
    reps = []
    for g in big:
        if g in index:
            continue
        coset = frozenset(group.add(g, s) for s in small)
        rep = min(coset)
        for x in coset:
            index[x] = rep
        reps.append(rep)
    q_order = len(reps)
    if q_order == 1:
        return []

    def killed(m):
        return sum(1 for g in reps if index[group.mul(g, m)] == index[group.zero])

    factors = []
    for p in _primes(q_order):
        counts = [1]
        k = 1
        while True:
            c = killed(p ** k)
            if c == counts[-1]:
                break
            counts.append(c)
            k += 1
        # number of cyclic p-factors of order >= p^j is log_p(counts[j]/counts[j-1])
        ge = [round(math.log(counts[j] // counts[j - 1], p)) for j in range(1, len(counts))]
        for j in range(len(ge)):
            exact = ge[j] - (ge[j + 1] if j + 1 < len(ge) else 0)
            factors += [p ** (j + 1)] * exact
    # combine prime powers into invariant factors
    by_p = {}
    for f in factors:
        p = _primes(f)[0]
        by_p.setdefault(p, []).append(f)
    width = max(len(v) for v in by_p.values())
    out = [1] * width
    for p, fs in by_p.items():
        fs.sort(reverse=True)
        for i, f in enumerate(fs):
            out[width - 1 - i] *= f
    return out


def _primes(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def unramified_subgroups(desc: InertialDescriptor):
    """Images in T_s of X_nr(G), X_nr(L/L^sharp) (both the diagonal subtorus,
    given by its cocharacter t) and of the n-torsion X_nr(L/L^sharp Z(G)),
    given as (generator point, order in T_s, abstract order n)."""
    t = tuple(desc.blocks[i].t for i in desc.coord_blocks())
    nu = desc.unramified_point()
    order_in_ts = math.lcm(*(x.order for x in nu)) if nu else 1
    return t, t, (nu, order_in_ts, desc.n)


# -- quotient tori ----------------------------------------------------------------------

@dataclass
class TorusQuotient:
    ambient_rank: int
    quotient_kind: str
    character_lattice: list         # basis rows in Z^r
    finite_quotient_generators: list
    finite_invariants: list

    @property
    def rank(self) -> int:
        return len(self.character_lattice)

    def is_saturated(self) -> bool:
        if not self.character_lattice:
            return True
        return all(x == 1 for x in snf_diagonal(int_matrix(self.character_lattice, self.ambient_rank)))

    def to_json(self) -> dict:
        return {
            "kind": self.quotient_kind,
            "rank": self.rank,
            "lattice": [list(b) for b in self.character_lattice],
            "finite_generators": [[str(x) for x in g] for g in self.finite_quotient_generators],
            "finite_part": group_string(self.finite_invariants),
        }


def _lattice_basis(rows, ncols):
    """Basis of the row span of an integer matrix."""
    if not rows:
        return []
    u, d, v = snf(int_matrix(rows, ncols))
    out = []
    for i in range(min(d.shape)):
        if d[i, i]:
            out.append(tuple(int(d[i, i] * x) for x in v[i]))
    return out


def _annihilated_sublattice(basis, points, ncols):
    """{u in span(basis) : u . c in Z for every c in points}, plus the
    coefficient matrix expressing it in ``basis``."""
    s = len(basis)
    if not points or s == 0:
        return list(basis), [tuple(int(i == j) for j in range(s)) for i in range(s)]
    pairings = [[sum((Fraction(b[k]) * QmodZ(c[k]).value for k in range(ncols)), Fraction(0))
                 for c in points] for b in basis]
    den = 1
    for row in pairings:
        for x in row:
            den = math.lcm(den, x.denominator)
    k = len(points)
    # unknowns (a_1..a_s, y_1..y_k): sum_i a_i N_ij + den * y_j = 0
    mat = [[int(pairings[i][j] * den) for i in range(s)] + [den * int(jj == j) for jj in range(k)]
           for j in range(k)]
    kern = integer_kernel(int_matrix(mat, s + k))
    coeffs = _lattice_basis([vec[:s] for vec in kern], s)
    sub = [tuple(sum(c[i] * basis[i][col] for i in range(s)) for col in range(ncols)) for c in coeffs]
    return sub, coeffs


def quotient_torus(desc: InertialDescriptor, kind: str = "T_s", generators=None) -> TorusQuotient:
    """Character lattice of a quotient of T_s.

    kind: "T_s"; "T_s_sharp" (divide by the diagonal subtorus);
    "T_s_mod_ZG" (divide T_s by the unramified n-torsion);
    "custom" (divide T_s_sharp by the supplied torsion points);
    "custom_full" (divide T_s by the supplied torsion points).
    """
    r = desc.rank
    full = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    if kind == "T_s":
        return TorusQuotient(r, kind, full, [], [])
    t = [desc.blocks[i].t for i in desc.coord_blocks()]
    sharp = integer_kernel(int_matrix([t], r))
    if kind == "T_s_sharp":
        return TorusQuotient(r, kind, _lattice_basis(sharp, r), [], [])
    if kind == "T_s_mod_ZG":
        base, pts = full, [desc.unramified_point()]
    elif kind == "custom":
        base, pts = _lattice_basis(sharp, r), [tuple(QmodZ(x) for x in g) for g in (generators or [])]
    elif kind == "custom_full":
        base, pts = full, [tuple(QmodZ(x) for x in g) for g in (generators or [])]
    else:
        raise ValueError(f"unknown quotient kind {kind!r}")
    sub, coeffs = _annihilated_sublattice(base, pts, r)
    finite = [x for x in snf_diagonal(int_matrix(coeffs, len(base))) if x != 1] if coeffs else []
    return TorusQuotient(r, kind, sub, pts, finite)


# -- fixed points and orbits ---------------------------------------------------------------

@lru_cache(maxsize=4096)
def _invariant_characters(w) -> tuple:
    r = len(w)
    # u o w = u  <=>  u[w[k]] - u[k] = 0 for all k
    rows = [[(1 if j == w[k] else 0) - (1 if j == k else 0) for j in range(r)] for k in range(r)]
    return tuple(integer_kernel(int_matrix(rows, r)))


def fixed_point_exists(w, c) -> bool:
    """Whether t -> w.t + c has a fixed point on the torus (Q/Z)^r."""
    if isinstance(w, BlockPermutation):
        w = w.mapping
    w = tuple(w)
    vals = [QmodZ(x).value for x in c]
    for u in _invariant_characters(w):
        if sum((a * b for a, b in zip(u, vals)), Fraction(0)).denominator != 1:
            return False
    return True


def fixed_point_exists_on(tq: TorusQuotient, w, c) -> bool:
    """Fixed-point test for t -> w.t + c on the quotient torus with character
    lattice ``tq.character_lattice`` (which w must preserve)."""
    if isinstance(w, BlockPermutation):
        w = w.mapping
    w = tuple(w)
    basis = tq.character_lattice
    r = tq.ambient_rank
    if not basis:
        return True
    # u = sum a_i b_i with u o w = u, solved in the a-coordinates
    rows = [[basis[i][w[k]] - basis[i][k] for i in range(len(basis))] for k in range(r)]
    vals = [QmodZ(x).value for x in c]
    for a in integer_kernel(int_matrix(rows, len(basis))):
        u = [sum(a[i] * basis[i][k] for i in range(len(basis))) for k in range(r)]
        if sum((x * y for x, y in zip(u, vals)), Fraction(0)).denominator != 1:
            return False
    return True


def stab_orbit(data_or_desc, basepoint=None, include_unramified=True, include_weyl=True) -> set:
    """Orbit of a torsion point under the affine maps of the Stab(s) generators."""
    data = data_or_desc if isinstance(data_or_desc, StabilizerData) else build_stabilizer_data(data_or_desc)
    desc = data.desc
    r = desc.rank
    ident = tuple(range(r))
    zero_pt = tuple(QmodZ(0) for _ in range(r))
    start = zero_pt if basepoint is None else tuple(QmodZ(x) for x in basepoint)
    moves = list(data.generator_maps.values())
    if include_unramified:
        moves.append((ident, desc.unramified_point()))
    if include_weyl:
        moves += [(data.datum.reflection(j), zero_pt) for j in data.datum.simple]
    seen = {start}
    queue = [start]
    for p in queue:
        for f in moves:
            q = _affine_apply(f, p)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


# -- brute-force cross-check ------------------------------------------------------------------

def weyl_group_gl(desc: InertialDescriptor) -> list:
    """W(G, L): all permutations of the coordinates preserving the m-values."""
    ms = [desc.blocks[i].m for i in desc.coord_blocks()]
    r = len(ms)
    out = []
    for p in itertools.permutations(range(r)):
        if all(ms[k] == ms[p[k]] for k in range(r)):
            out.append(p)
    return out


def exactness_report(data: StabilizerData) -> dict:
    """Independent enumeration over W(G,L) x A of the stabilizer and the
    derived groups; returns named boolean checks."""
    desc = data.desc
    datum = data.datum
    positions = desc.positions
    ident = tuple(range(desc.rank))

    def in_ws(p):
        return datum.in_weyl(p)

    stab = []
    for a in data.char_group.elements():
        m = data.maps.get(a)
        if m is None:
            continue
        rinv = perm_inverse(m[0])
        for w in weyl_group_gl(desc):
            if in_ws(perm_compose(w, rinv)):
                stab.append((w, a))
    x_l = {a for w, a in stab if w == ident}
    x_g = {a for _, a in stab}
    w_sharp = {w for w, _ in stab}
    ws = datum.weyl_order
    r_set = set(data.r_sharp)

    # r_sharp ~ X^G/X^L via a -> order-preserving representative
    proj = {}
    well_defined = True
    for w, a in stab:
        rep = BlockPermutation(w, positions).split()[1].mapping
        if proj.setdefault(a, rep) != rep:
            well_defined = False
    kernel = {a for a, rep in proj.items() if rep == ident}
    fibres_equal = len({sum(1 for v in proj.values() if v == rep) for rep in r_set}) == 1

    splitting = True
    for w in w_sharp:
        facts = [(v, rr) for rr in r_set for v in [perm_compose(w, perm_inverse(rr))] if in_ws(v)]
        if len(facts) != 1:
            splitting = False
            break

    x_l_sorted = sorted(x_l)
    return {
        "stab_matches_build": len(stab) == data.stab_order,
        "x_l_matches_build": x_l_sorted == sorted(data.x_l_s),
        "x_g_matches_build": sorted(x_g) == sorted(data.x_g_s),
        "w_sharp_matches_build": w_sharp == set(data.w_sharp()),
        "stab_eq_xl_times_wsharp": len(stab) == len(x_l) * len(w_sharp),
        "xg_eq_stab_over_ws": len(x_g) * ws == len(stab),
        "r_sharp_is_xg_mod_xl": well_defined and kernel == x_l and set(proj.values()) == r_set
        and fibres_equal and len(x_g) == len(x_l) * len(r_set),
        "w_s_normal_in_w_sharp": all(
            in_ws(perm_compose(perm_compose(w, v), perm_inverse(w)))
            for w in w_sharp for v in datum.weyl_elements()),
        "unique_splitting": splitting,
    }


# -- reports ---------------------------------------------------------------------------------

def weyl_string(desc: InertialDescriptor) -> str:
    parts = [f"S_{b.e}" for b in desc.blocks if b.e > 1]
    return " x ".join(parts) if parts else "1"


def _generating_set(group: FinAbGroup, elements, base):
    """Greedy generators of <elements> modulo <base>."""
    chosen = []
    span = set(group.span(list(base)))
    gens = list(base)
    for g in sorted(elements):
        if g not in span:
            chosen.append(g)
            gens.append(g)
            span = set(group.span(gens))
    return chosen


def _group_entry(data, big, small):
    inv = subquotient_invariants(data.char_group, big, small)
    gens = _generating_set(data.char_group, big, small)
    return {
        "group": group_string(inv),
        "order": math.prod(inv) if inv else 1,
        "generators": [
            {"gamma": list(a[:-1]), "unramified": a[-1],
             "w": cycle_string(data.maps[a][0]), "chi": [str(x) for x in data.maps[a][1]]}
            for a in gens],
    }


@dataclass
class StructureReport:
    copies: int
    torus: dict
    weyl: str
    q_params: list
    matrix_dim: int
    residual_group: dict
    outer_group: str
    cocycle_trivial: bool | None
    notes: list

    FIELDS = ("copies", "torus", "weyl", "q_params", "matrix_dim", "residual_group",
              "outer_group", "cocycle_trivial", "notes")

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}

    @classmethod
    def from_json(cls, doc: dict) -> "StructureReport":
        missing = [k for k in cls.FIELDS if k not in doc]
        if missing:
            raise ValueError(f"report is missing {missing}")
        return cls(**{k: doc[k] for k in cls.FIELDS})

    def to_text(self) -> str:
        lines = [
            f"copies:          {self.copies}",
            f"torus:           {self.torus['derived']['kind']} rank {self.torus['derived']['rank']}"
            f" (intermediate {self.torus['intermediate']['kind']} rank {self.torus['intermediate']['rank']})",
            f"weyl:            {self.weyl}",
            f"q_params:        {self.q_params}",
            f"matrix_dim:      {self.matrix_dim}",
            f"residual_group:  {self.residual_group['derived']['group']}"
            f" (intermediate {self.residual_group['intermediate']['group']})",
            f"outer_group:     {self.outer_group}",
            f"cocycle_trivial: {self.cocycle_trivial}",
        ]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


def structure_report(desc: InertialDescriptor, data: StabilizerData | None = None) -> StructureReport:
    data = build_stabilizer_data(desc) if data is None else data
    unram = [a for a in data.x_l_s if all(x == 0 for x in a[:-1])]
    derived_small = data.char_group.span(list(data.x_l_omega_vmu) + unram)
    residual = {
        "derived": _group_entry(data, data.x_l_s, derived_small),
        "intermediate": _group_entry(data, data.x_l_s, data.x_l_omega_vmu),
    }
    outer = group_string(data.outer_invariants())
    cocycle_trivial = None if desc.kappa is None else is_coboundary(desc.kappa)
    notes = []
    if data.r_sharp == [tuple(range(desc.rank))]:
        notes.append("no outer part: the algebra is the plain affine Hecke algebra of W_s")
    else:
        notes.append(f"W_s <= W_t_sharp <= W_s x| {outer}; only these bounds are determined")
    if cocycle_trivial is False:
        notes.append("cocycle class is nontrivial: the matrix factor is not removable")
    elif cocycle_trivial is True and desc.v_mu_dim > 1:
        notes.append("cocycle class is trivial: the matrix factor splits off")
    return StructureReport(
        copies=desc.x_l_omega_vmu_order,
        torus={"derived": quotient_torus(desc, "T_s_sharp").to_json(),
               "intermediate": quotient_torus(desc, "T_s").to_json()},
        weyl=weyl_string(desc),
        q_params=[b.q_param for b in desc.blocks],
        matrix_dim=desc.v_mu_dim,
        residual_group=residual,
        outer_group=outer,
        cocycle_trivial=cocycle_trivial,
        notes=notes,
    )


# -- random descriptors ------------------------------------------------------------------------

def _affine_order(r, c):
    f = (tuple(range(len(r))), tuple(QmodZ(0) for _ in c))
    step = (r, c)
    for k in range(1, 10_000):
        f = _affine_compose(step, f)
        if f[0] == tuple(range(len(r))) and all(x == 0 for x in f[1]):
            return k
    raise RuntimeError("affine map of unexpectedly large order")


def random_descriptor(rng, max_rank=5) -> InertialDescriptor:
    """Random valid descriptor: a few blocks of repeated types, one or two
    stabilizing generators with disjoint block supports, sometimes a
    non-stabilizing generator."""
    while True:
        blocks = []
        total = 0
        while total < max_rank:
            e = int(rng.integers(1, 3))
            if total + e > max_rank:
                break
            b = Block(int(rng.integers(1, 3)), e, int(rng.integers(1, 3)), int(rng.integers(0, 2)))
            copies = int(rng.integers(1, 4))
            for _ in range(copies):
                if total + e <= max_rank:
                    blocks.append(b)
                    total += e
            if rng.random() < 0.4:
                break
        if blocks:
            break
    rng.shuffle(blocks)
    positions = blocks_from_sizes([b.e for b in blocks])
    r = total
    free = list(range(len(blocks)))
    moduli, actions = [], []
    n_gens = int(rng.integers(1, 3))
    for _ in range(n_gens):
        # pick a set of same-type blocks among the unused ones and cycle them
        types = {}
        for i in free:
            types.setdefault(blocks[i].key, []).append(i)
        key = list(types)[int(rng.integers(len(types)))] if types else None
        if key is None:
            break
        cand = types[key]
        size = int(rng.integers(1, len(cand) + 1))
        chosen = [cand[k] for k in rng.permutation(len(cand))[:size]]
        for i in chosen:
            free.remove(i)
        w = list(range(r))
        for a, b in zip(chosen, chosen[1:] + chosen[:1]):
            sa, e = positions[a]
            sb, _ = positions[b]
            perm = rng.permutation(e)
            for k in range(e):
                w[sa + k] = sb + int(perm[k])
        den = int(rng.choice([1, 2, 3, 4]))
        chi = [Fraction(0)] * r
        for i in chosen:
            val = Fraction(int(rng.integers(0, den)), den)
            s, e = positions[i]
            for k in range(e):
                chi[s + k] = val
        bp = BlockPermutation(w, positions)
        rep = bp.split()[1].mapping
        # order >= 2 so that a trivially acting generator stays a nonzero element
        order = max(2, _affine_order(rep, tuple(QmodZ(x) for x in chi)) * int(rng.integers(1, 3)))
        moduli.append(order)
        actions.append((tuple(w), tuple(chi)))
    bottom = rng.random() < 0.3
    if bottom:
        moduli.append(int(rng.integers(2, 4)))
    gamma = FinAbGroup(moduli)
    acts = []
    for i, (w, chi) in enumerate(actions):
        g = tuple(int(i == j) for j in range(len(moduli)))
        acts.append(GammaAction(g, w, chi))
    if bottom:
        acts.append(GammaAction(tuple(int(j == len(moduli) - 1) for j in range(len(moduli))), None, None))
    return InertialDescriptor(d=int(rng.integers(1, 3)), blocks=blocks, gamma_group=gamma,
                              gamma_actions=acts)


def all_blocks_order_preserving(data: StabilizerData) -> bool:
    positions = data.desc.positions
    return all(BlockPermutation(r, positions).is_order_preserving() for r in data.r_sharp)


__all__ = [
    "Block", "GammaAction", "InertialDescriptor", "StabilizerData", "StructureReport",
    "TorusQuotient", "build_stabilizer_data", "exactness_report", "fixed_point_exists",
    "fixed_point_exists_on",
    "quotient_torus", "random_descriptor", "stab_orbit", "structure_report",
    "subquotient_invariants", "unramified_subgroups", "weyl_string",
]
