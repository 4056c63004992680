"""Finite abelian groups, block permutations, Smith normal form and 2-cocycles."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coeffring import QmodZ
from .errors import BlockMismatch, InvalidCocycle


# -- integer matrices -----------------------------------------------------------

def int_matrix(rows, ncols=None) -> np.ndarray:
    """Object-dtype integer matrix (Python ints, no overflow)."""
    rows = [list(r) for r in rows]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=object)
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = int(x)
    return out


def identity(n) -> np.ndarray:
    return int_matrix([[int(i == j) for j in range(n)] for i in range(n)], n)


def int_det(m) -> int:
    """Exact determinant by fraction-free elimination (Bareiss)."""
    a = [list(map(int, r)) for r in np.asarray(m).tolist()]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class _SNF:
    # Works on a copy of M, recording row ops (U) and column ops (V) as
    # inverses so that M = U @ D @ V at every step; also records R = V^{-1}.
    def __init__(self, m):
        self.d = [list(map(int, r)) for r in m]
        self.rows = len(self.d)
        self.cols = len(self.d[0]) if self.rows else 0
        self.u = [[int(i == j) for j in range(self.rows)] for i in range(self.rows)]
        self.v = [[int(i == j) for j in range(self.cols)] for i in range(self.cols)]
        self.r = [[int(i == j) for j in range(self.cols)] for i in range(self.cols)]

    def swap_rows(self, i, j):
        d, u = self.d, self.u
        d[i], d[j] = d[j], d[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    def add_row(self, i, j, c):
        # row_i += c * row_j
        d = self.d
        d[i] = [a + c * b for a, b in zip(d[i], d[j])]
        for row in self.u:
            row[j] -= c * row[i]

    def neg_row(self, i):
        self.d[i] = [-a for a in self.d[i]]
        for row in self.u:
            row[i] = -row[i]

    def swap_cols(self, i, j):
        for row in self.d:
            row[i], row[j] = row[j], row[i]
        self.v[i], self.v[j] = self.v[j], self.v[i]
        for row in self.r:
            row[i], row[j] = row[j], row[i]

    def add_col(self, i, j, c):
        # col_i += c * col_j
        for row in self.d:
            row[i] += c * row[j]
        self.v[j] = [a - c * b for a, b in zip(self.v[j], self.v[i])]
        for row in self.r:
            row[i] += c * row[j]

    def run(self):
        d = self.d
        for t in range(min(self.rows, self.cols)):
            nz = [(abs(d[i][j]), i, j) for i in range(t, self.rows)
                  for j in range(t, self.cols) if d[i][j]]
            if not nz:
                break
            while True:
                # bring the smallest entry of row t / column t (or of the
                # whole block on the first pass) to the pivot
                _, i, j = min(nz)
                if i != t:
                    self.swap_rows(i, t)
                if j != t:
                    self.swap_cols(j, t)
                p = d[t][t]
                for i in range(t + 1, self.rows):
                    if d[i][t]:
                        self.add_row(i, t, -(d[i][t] // p))
                for j in range(t + 1, self.cols):
                    if d[t][j]:
                        self.add_col(j, t, -(d[t][j] // p))
                nz = [(abs(d[i][t]), i, t) for i in range(t + 1, self.rows) if d[i][t]]
                nz += [(abs(d[t][j]), t, j) for j in range(t + 1, self.cols) if d[t][j]]
                if nz:
                    continue
                bad = next(((i, j) for i in range(t + 1, self.rows)
                            for j in range(t + 1, self.cols) if d[i][j] % p), None)
                if bad is None:
                    break
                self.add_row(t, bad[0], 1)
                nz = [(abs(d[t][j]), t, j) for j in range(t, self.cols) if d[t][j]]
            if d[t][t] < 0:
                self.neg_row(t)
        return self


def snf(m):
    """Smith normal form: returns ``(U, D, V)`` with ``M = U @ D @ V``.

    ``U`` and ``V`` are unimodular and the diagonal of ``D`` is a
    nonnegative divisibility chain.
    """
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    s = _SNF(m.tolist()).run()
    return int_matrix(s.u, rows), int_matrix(s.d, cols), int_matrix(s.v, cols)


def snf_diagonal(m) -> list:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return []
    s = _SNF(m.tolist()).run()
    return [s.d[i][i] for i in range(min(s.rows, s.cols))]


def integer_kernel(m) -> list:
    """A basis of {x in Z^cols : M x = 0}; the kernel is saturated by construction."""
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    if rows == 0:
        return [tuple(int(i == j) for j in range(cols)) for i in range(cols)]
    s = _SNF(m.tolist()).run()
    rank = sum(1 for i in range(min(rows, cols)) if s.d[i][i])
    return [tuple(s.r[i][k] for i in range(cols)) for k in range(rank, cols)]


def abelian_invariants(relations, ncols) -> list:
    """Invariant factors (> 1) of Z^ncols / (row span of ``relations``), with
    zeros for free factors."""
    if not relations:
        return [0] * ncols
    diag = snf_diagonal(int_matrix(relations, ncols))
    diag += [0] * (ncols - len(diag))
    return [x for x in diag if x != 1]


# -- finite abelian groups --------------------------------------------------------

def group_string(factors) -> str:
    factors = [f for f in factors if f != 1]
    if not factors:
        return "1"
    return " x ".join("Z" if f == 0 else f"Z/{f}" for f in factors)


class FinAbGroup:
    """Product of cyclic groups Z/moduli[0] x Z/moduli[1] x ...

    Elements are tuples of residues. The presentation need not be in
    invariant-factor form; :attr:`invariant_factors` gives the canonical one.
    """

    def __init__(self, moduli=()):
        moduli = tuple(int(d) for d in moduli)
        if any(d < 1 for d in moduli):
            raise ValueError("cyclic factors must have order >= 1")
        self.moduli = moduli
        self.rank = len(moduli)
        self.order = math.prod(moduli)
        self._elements = None
        self._index = None

    @classmethod
    def from_invariant_factors(cls, factors):
        factors = list(factors)
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError(f"invariant factors must divide each other: {factors}")
        if any(f < 2 for f in factors):
            raise ValueError("invariant factors must be >= 2")
        return cls(factors)

    @property
    def invariant_factors(self) -> list:
        if not self.moduli:
            return []
        return [d for d in snf_diagonal(np.diag(np.array(self.moduli, dtype=object))) if d != 1]

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.moduli == other.moduli

    def __hash__(self):
        return hash(self.moduli)

    def __repr__(self):
        return f"FinAbGroup({list(self.moduli)})"

    def __str__(self):
        return group_string(self.invariant_factors)

    def elem(self, coords) -> tuple:
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise ValueError(f"element {coords} needs {self.rank} coordinates")
        return tuple(int(c) % d for c, d in zip(coords, self.moduli))

    @property
    def zero(self) -> tuple:
        return (0,) * self.rank

    def generators(self) -> list:
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def add(self, g, h) -> tuple:
        return tuple((a + b) % d for a, b, d in zip(g, h, self.moduli))

    def neg(self, g) -> tuple:
        return tuple((-a) % d for a, d in zip(g, self.moduli))

    def sub(self, g, h) -> tuple:
        return tuple((a - b) % d for a, b, d in zip(g, h, self.moduli))

    def mul(self, g, n: int) -> tuple:
        return tuple((a * n) % d for a, d in zip(g, self.moduli))

    def element_order(self, g) -> int:
        out = 1
        for a, d in zip(g, self.moduli):
            out = math.lcm(out, d // math.gcd(a, d))
        return out

    def elements(self) -> list:
        if self._elements is None:
            self._elements = list(itertools.product(*(range(d) for d in self.moduli)))
            self._index = {g: i for i, g in enumerate(self._elements)}
        return self._elements

    def index(self, g) -> int:
        self.elements()
        return self._index[g]

    def span(self, gens) -> list:
        """Elements of the subgroup generated by ``gens`` (BFS order from zero)."""
        seen = {self.zero}
        order = [self.zero]
        for g in order:
            for h in gens:
                x = self.add(g, h)
                if x not in seen:
                    seen.add(x)
                    order.append(x)
        return order

    def quotient_invariants(self, gens) -> list:
        """Invariant factors of this group modulo the subgroup spanned by ``gens``."""
        rels = [[d if i == j else 0 for j in range(self.rank)] for i, d in enumerate(self.moduli)]
        rels += [list(g) for g in gens]
        return [f for f in abelian_invariants(rels, self.rank) if f != 1]


def dual_group(group: FinAbGroup):
    """Return ``(dual, pairing)``; ``pairing(g, chi)`` is the coordinatewise
    pairing sum(g_i chi_i / d_i) in Q/Z, which is perfect."""
    dual = FinAbGroup(group.moduli)

    def pairing(g, chi):
        return QmodZ(sum(Fraction(a * b, d) for a, b, d in zip(g, chi, group.moduli)))

    return dual, pairing


def is_perfect_pairing(group, dual, pairing) -> bool:
    zero = QmodZ(0)
    for g in group.elements():
        if g != group.zero and all(pairing(g, c) == zero for c in dual.elements()):
            return False
    for c in dual.elements():
        if c != dual.zero and all(pairing(g, c) == zero for g in group.elements()):
            return False
    return group.order == dual.order


# -- block permutations -------------------------------------------------------------

def blocks_from_sizes(sizes) -> tuple:
    out, start = [], 0
    for e in sizes:
        out.append((start, e))
        start += e
    return tuple(out)


def perm_compose(w, v) -> tuple:
    """(w o v)[k] = w[v[k]]."""
    return tuple(w[k] for k in v)


def perm_inverse(w) -> tuple:
    out = [0] * len(w)
    for k, wk in enumerate(w):
        out[wk] = k
    return tuple(out)


def perm_act(w, x) -> tuple:
    """Coordinate action on vectors: (w.x)[w[k]] = x[k]."""
    out = [None] * len(w)
    for k, wk in enumerate(w):
        out[wk] = x[k]
    return tuple(out)


def perm_from_cycles(cycles, r) -> tuple:
    """Build a permutation of range(r) from 1-based cycles, e.g. [[1,3,5],[2,4,6]]."""
    w = list(range(r))
    seen = set()
    for cyc in cycles:
        cyc = [int(c) - 1 for c in cyc]
        for c in cyc:
            if not 0 <= c < r:
                raise ValueError(f"cycle entry {c + 1} outside 1..{r}")
            if c in seen:
                raise ValueError(f"entry {c + 1} appears in two cycles")
            seen.add(c)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            w[a] = b
    return tuple(w)


def perm_to_cycles(w) -> list:
    seen, out = set(), []
    for k in range(len(w)):
        if k in seen or w[k] == k:
            continue
        cyc, j = [], k
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = w[j]
        out.append(cyc)
    return out


def cycle_string(w) -> str:
    cycles = perm_to_cycles(w)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


class BlockPermutation:
    """A permutation of coordinates that maps every block onto a block."""

    __slots__ = ("mapping", "blocks", "_block_map")

    def __init__(self, mapping, blocks):
        mapping = tuple(int(k) for k in mapping)
        blocks = tuple(tuple(b) for b in blocks)
        r = sum(e for _, e in blocks)
        if sorted(mapping) != list(range(r)):
            raise ValueError(f"{mapping} is not a permutation of {r} coordinates")
        starts = {frozenset(range(s, s + e)): i for i, (s, e) in enumerate(blocks)}
        bmap = []
        for i, (s, e) in enumerate(blocks):
            img = frozenset(mapping[s:s + e])
            if img not in starts:
                raise BlockMismatch(
                    f"permutation {cycle_string(mapping)} splits block {i + 1}")
            bmap.append(starts[img])
        self.mapping = mapping
        self.blocks = blocks
        self._block_map = tuple(bmap)

    @classmethod
    def identity(cls, blocks):
        r = sum(e for _, e in blocks)
        return cls(range(r), blocks)

    @classmethod
    def from_cycles(cls, cycles, blocks):
        r = sum(e for _, e in blocks)
        return cls(perm_from_cycles(cycles, r), blocks)

    @property
    def block_map(self) -> tuple:
        """block_map[i] = index of the block that block i is sent to."""
        return self._block_map

    def __mul__(self, other):
        return BlockPermutation(perm_compose(self.mapping, other.mapping), self.blocks)

    def inverse(self):
        return BlockPermutation(perm_inverse(self.mapping), self.blocks)

    def act(self, x) -> tuple:
        return perm_act(self.mapping, x)

    def is_identity(self) -> bool:
        return all(k == wk for k, wk in enumerate(self.mapping))

    def within_blocks(self) -> bool:
        return all(i == j for i, j in enumerate(self._block_map))

    def is_order_preserving(self) -> bool:
        return all(
            all(self.mapping[k] < self.mapping[k + 1] for k in range(s, s + e - 1))
            for s, e in self.blocks)

    def split(self):
        """Factor as ``v * rep`` with ``v`` inside blocks and ``rep`` order-preserving."""
        rep = [0] * len(self.mapping)
        for i, (s, e) in enumerate(self.blocks):
            t = self.blocks[self._block_map[i]][0]
            for k in range(e):
                rep[s + k] = t + k
        rep = BlockPermutation(rep, self.blocks)
        return self * rep.inverse(), rep

    def __eq__(self, other):
        return isinstance(other, BlockPermutation) and self.mapping == other.mapping

    def __hash__(self):
        return hash(self.mapping)

    def __repr__(self):
        return f"BlockPermutation({cycle_string(self.mapping)})"

    def __str__(self):
        return cycle_string(self.mapping)


# -- 2-cocycles ---------------------------------------------------------------------

class TwoCocycle:
    """Normalized Q/Z-valued 2-cocycle on a finite abelian group, stored as a
    full table. The cocycle identity is checked once, at construction."""

    def __init__(self, group: FinAbGroup, table=None, validate=True):
        self.group = group
        elems = group.elements()
        n = len(elems)
        vals = {}
        for (g, h), v in (table or {}).items():
            vals[(group.elem(g), group.elem(h))] = QmodZ(v)
        den = 1
        for v in vals.values():
            den = math.lcm(den, v.order)
        self.den = den
        arr = np.zeros((n, n), dtype=np.int64)
        for (g, h), v in vals.items():
            arr[group.index(g), group.index(h)] = int(v.value * den)
        self.array = arr
        if validate:
            self._validate()

    def _mul_table(self):
        g = self.group
        elems = g.elements()
        return np.array([[g.index(g.add(a, b)) for b in elems] for a in elems], dtype=np.int64)

    def _validate(self):
        g = self.group
        elems = g.elements()
        k = self.array
        z = g.index(g.zero)
        bad = np.nonzero(k[z, :] % self.den)[0]
        if bad.size:
            raise InvalidCocycle(f"not normalized: kappa(0, {elems[bad[0]]}) != 0")
        bad = np.nonzero(k[:, z] % self.den)[0]
        if bad.size:
            raise InvalidCocycle(f"not normalized: kappa({elems[bad[0]]}, 0) != 0")
        p = self._mul_table()
        # kappa(g,h) + kappa(gh,k) - kappa(h,k) - kappa(g,hk), indices [g,h,k]
        lhs = k[:, :, None] + k[p][:, :, :]
        rhs = k[None, :, :] + k[np.arange(len(elems))[:, None, None], p[None, :, :]]
        fail = np.argwhere((lhs - rhs) % self.den)
        if fail.size:
            a, b, c = (elems[i] for i in fail[0])
            raise InvalidCocycle(
                f"cocycle identity fails on the triple g={a}, h={b}, k={c}")

    def __call__(self, g, h) -> QmodZ:
        gi, hi = self.group.index(self.group.elem(g)), self.group.index(self.group.elem(h))
        return QmodZ(Fraction(int(self.array[gi, hi]), self.den))

    def table(self) -> dict:
        elems = self.group.elements()
        return {(a, b): self(a, b) for a in elems for b in elems if self.array[self.group.index(a), self.group.index(b)]}

    def commutator_form(self) -> dict:
        """beta(g, h) = kappa(g, h) - kappa(h, g), as a full table."""
        elems = self.group.elements()
        diff = (self.array - self.array.T) % self.den
        return {(a, b): QmodZ(Fraction(int(diff[i, j]), self.den))
                for i, a in enumerate(elems) for j, b in enumerate(elems)}

    def is_coboundary(self) -> bool:
        return not np.any((self.array - self.array.T) % self.den)

    @classmethod
    def trivial(cls, group):
        return cls(group, {}, validate=False)

    @classmethod
    def from_bilinear(cls, group, coeffs, cochain=None):
        """kappa(g,h) = sum_{i<j} a_ij g_i h_j / gcd(d_i, d_j) + (df)(g,h).

        ``coeffs`` maps index pairs ``(i, j)`` with ``i < j`` to integers;
        ``cochain`` maps elements to Q/Z with f(0) = 0.
        """
        mod = group.moduli
        f = {group.elem(k): QmodZ(v) for k, v in (cochain or {}).items()}
        zero = QmodZ(0)
        if f.get(group.zero, zero) != zero:
            raise ValueError("the 1-cochain must vanish at the identity")
        table = {}
        for g in group.elements():
            for h in group.elements():
                v = Fraction(0)
                for (i, j), a in coeffs.items():
                    if i >= j:
                        raise ValueError("bilinear coefficients need i < j")
                    v += Fraction(a * g[i] * h[j], math.gcd(mod[i], mod[j]))
                val = QmodZ(v) + f.get(g, zero) + f.get(h, zero) - f.get(group.add(g, h), zero)
                if val != zero:
                    table[(g, h)] = val
        return cls(group, table)

    @classmethod
    def random(cls, group, rng, cochain_den=12):
        """Random bilinear class plus a random coboundary, drawn from ``rng``
        (a ``numpy.random.Generator``)."""
        coeffs = {}
        for i in range(group.rank):
            for j in range(i + 1, group.rank):
                g = math.gcd(group.moduli[i], group.moduli[j])
                coeffs[(i, j)] = int(rng.integers(0, g)) if g > 1 else 0
        cochain = {g: Fraction(int(rng.integers(0, cochain_den)), cochain_den)
                   for g in group.elements() if g != group.zero}
        return cls.from_bilinear(group, coeffs, cochain)


@dataclass(frozen=True)
class TwistedGroupAlgebra:
    group: FinAbGroup
    cocycle: TwoCocycle
    regular_subgroup: tuple
    irrep_dimension: int
    irrep_count: int

    @property
    def is_commutative(self) -> bool:
        return self.irrep_dimension == 1


def twisted_algebra_structure(group: FinAbGroup, kappa: TwoCocycle) -> TwistedGroupAlgebra:
    """Centre and irreducible-representation data of C[group, kappa]."""
    if kappa.group != group:
        raise InvalidCocycle("cocycle lives on a different group")
    diff = (kappa.array - kappa.array.T) % kappa.den
    elems = group.elements()
    regular = tuple(g for i, g in enumerate(elems) if not diff[i].any())
    ratio, rem = divmod(group.order, len(regular))
    delta = math.isqrt(ratio)
    if rem or delta * delta != ratio:
        raise InvalidCocycle(f"|G|/|C| = {group.order}/{len(regular)} is not a square")
    return TwistedGroupAlgebra(group, kappa, regular, delta, len(regular))


def commutator_form(kappa: TwoCocycle) -> dict:
    return kappa.commutator_form()


def is_coboundary(kappa: TwoCocycle) -> bool:
    return kappa.is_coboundary()


def abelian_groups_up_to(max_order: int) -> list:
    """One FinAbGroup per isomorphism class of order <= max_order (invariant-factor form)."""
    out = []

    def chains(n, smallest):
        # divisibility chains d_1 | d_2 | ... with product n, d_1 >= 2, built from the top
        if n == 1:
            yield []
            return
        for d in range(2, n + 1):
            if n % d == 0 and (smallest is None or smallest % d == 0):
                for rest in chains(n // d, d):
                    yield rest + [d]

    for n in range(1, max_order + 1):
        for ch in chains(n, None):
            out.append(FinAbGroup(ch))
    return out
