"""Crossed products, invariants, matrix amplification and the comparison
(End(C[R]) (x) B)^R  ~=  B x| R  checked on samples."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..coeffring import Cyclotomic, QmodZ, Scalar
from ..errors import ActionMismatch, CheckFailed
from ..finstruct import FinAbGroup, TwoCocycle
from .algebra import HeckeElement
from .automorphism import HeckeAutomorphism, check_closed


# -- group actions ----------------------------------------------------------------

class GroupAction:
    """A finite abelian group acting on some algebra through ``act(g, b)``."""

    def __init__(self, group: FinAbGroup, act, name="action"):
        self.group = group
        self._act = act
        self.name = name

    def __call__(self, g, b):
        return self._act(self.group.elem(g), b)


class HeckeGroupAction(GroupAction):
    """Action through a table {group element: HeckeAutomorphism}; must be a
    genuine homomorphism, which is checked exactly on construction."""

    def __init__(self, group: FinAbGroup, autos: dict, name="hecke action"):
        autos = {group.elem(g): a for g, a in autos.items()}
        if set(autos) != set(group.elements()):
            raise ActionMismatch("every group element needs an automorphism")
        for g in group.elements():
            for h in group.elements():
                if autos[g] * autos[h] != autos[group.add(g, h)]:
                    raise ActionMismatch(f"alpha_{g} o alpha_{h} != alpha_{group.add(g, h)}")
        self.autos = autos
        super().__init__(group, lambda g, b: autos[g](b), name)


# -- crossed products ----------------------------------------------------------------

class CrossedProduct:
    """The algebra B x| G for a group action on B; ``zero`` is B's zero."""

    def __init__(self, action: GroupAction, one, zero):
        self.action = action
        self.group = action.group
        self.one_b = one
        self.zero_b = zero

    def element(self, terms) -> "CrossedProductElement":
        return CrossedProductElement(self, terms)

    def embed(self, b, g=None):
        return CrossedProductElement(self, {self.group.zero if g is None else g: b})

    def one(self):
        return self.embed(self.one_b)

    def group_element(self, g):
        return self.embed(self.one_b, self.group.elem(g))


def _is_zero(b):
    z = getattr(b, "is_zero", None)
    return z() if callable(z) else b == 0


class CrossedProductElement:
    """Finite sum of b_g x| g."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: CrossedProduct, terms):
        clean = {}
        for g, b in terms.items():
            if not _is_zero(b):
                clean[algebra.group.elem(g)] = b
        self.algebra = algebra
        self.terms = clean

    def _check(self, other):
        if not isinstance(other, CrossedProductElement) or other.algebra is not self.algebra:
            raise ActionMismatch("crossed-product elements use different algebras or actions")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for g, b in other.terms.items():
            out[g] = out[g] + b if g in out else b
        return CrossedProductElement(self.algebra, out)

    def __neg__(self):
        return CrossedProductElement(self.algebra, {g: -b for g, b in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, CrossedProductElement):
            return CrossedProductElement(self.algebra, {g: b * other for g, b in self.terms.items()})
        self._check(other)
        grp = self.algebra.group
        act = self.algebra.action
        out = {}
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                c = a * act(g, b)
                k = grp.add(g, h)
                out[k] = out[k] + c if k in out else c
        return CrossedProductElement(self.algebra, out)

    def map_coefficients(self, fn):
        return CrossedProductElement(self.algebra, {g: fn(b) for g, b in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, CrossedProductElement):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(b == other.terms[g] for g, b in self.terms.items())

    def __repr__(self):
        return " + ".join(f"[{b}] x| {g}" for g, b in sorted(self.terms.items())) or "0"


def crossed_product_mul(a: CrossedProductElement, b: CrossedProductElement):
    return a * b


def _scale(b, factor):
    if hasattr(b, "scale"):
        return b.scale(factor)
    return b * factor


def invariant_projection(f, group):
    """Average of f over a finite set of HeckeAutomorphisms closed under
    composition. Crossed-product elements are averaged coefficientwise."""
    group = list(group)
    if not group:
        raise ValueError("empty group")
    check_closed(group)
    n = Fraction(1, len(group))
    if isinstance(f, CrossedProductElement):
        return f.map_coefficients(lambda b: invariant_projection(b, group))
    total = None
    for a in group:
        img = a(f)
        total = img if total is None else total + img
    return total.scale(n)


# -- finite-dimensional algebras by structure constants ---------------------------------

class StructureConstantAlgebra:
    """Algebra on basis e_0..e_{n-1} with e_i e_j = sum_k c[i][j][k] e_k over
    Q(zeta_N) (coefficients are Cyclotomic values or rationals)."""

    def __init__(self, constants, one):
        self.dim = len(constants)
        self.constants = [[[Cyclotomic.rational(0) + c for c in cell] for cell in row] for row in constants]
        self._one = tuple(one)

    @classmethod
    def matrix_algebra(cls, m):
        idx = [(i, j) for i in range(m) for j in range(m)]
        pos = {p: k for k, p in enumerate(idx)}
        consts = []
        for a, b in idx:
            row = []
            for c, d in idx:
                cell = [0] * (m * m)
                if b == c:
                    cell[pos[(a, d)]] = 1
                row.append(cell)
            consts.append(row)
        one = [int(a == b) for a, b in idx]
        return cls(consts, one)

    def element(self, coords):
        return SCElement(self, coords)

    def one(self):
        return SCElement(self, self._one)

    def zero(self):
        return SCElement(self, [0] * self.dim)

    def random(self, rng, lo=-3, hi=3):
        return SCElement(self, [int(x) for x in rng.integers(lo, hi + 1, self.dim)])


class SCElement:
    __slots__ = ("alg", "coords")

    def __init__(self, alg, coords):
        self.alg = alg
        self.coords = tuple(Cyclotomic.rational(0) + c for c in coords)

    def __add__(self, other):
        return SCElement(self.alg, [a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return SCElement(self.alg, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SCElement):
            return SCElement(self.alg, [a * other for a in self.coords])
        out = [Cyclotomic.rational(0)] * self.alg.dim
        c = self.alg.constants
        for i, a in enumerate(self.coords):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coords):
                if b.is_zero():
                    continue
                ab = a * b
                for k, ck in enumerate(c[i][j]):
                    if not ck.is_zero():
                        out[k] = out[k] + ab * ck
        return SCElement(self.alg, out)

    def scale(self, factor):
        return SCElement(self.alg, [a * Fraction(factor) for a in self.coords])

    def is_zero(self):
        return all(a.is_zero() for a in self.coords)

    def __eq__(self, other):
        return isinstance(other, SCElement) and all(a == b for a, b in zip(self.coords, other.coords))

    def __repr__(self):
        return "SC(" + ", ".join(map(str, self.coords)) + ")"


def conjugation_action(alg: StructureConstantAlgebra, m, group: FinAbGroup, diag_exponents):
    """Z/n acting on M_m by conjugation with diag(zeta^{k a_0}, ..., zeta^{k a_{m-1}}),
    zeta = exp(2 pi i / n); ``diag_exponents`` are the a_i as QmodZ values."""
    exps = [QmodZ(a) for a in diag_exponents]

    def act(g, b):
        k = g[0]
        out = []
        for a in range(m):
            for c in range(m):
                z = Cyclotomic.root_of_unity((exps[a] - exps[c]) * k)
                out.append(b.coords[a * m + c] * z)
        return SCElement(alg, out)

    return GroupAction(group, act, name="conjugation")


# -- comparison (End(C[R]) (x) B)^R = B x| R ---------------------------------------------

def _matmul(x, y, zero):
    n = len(x)
    out = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            a = x[i][k]
            if _is_zero(a):
                continue
            for j in range(n):
                b = y[k][j]
                if not _is_zero(b):
                    out[i][j] = out[i][j] + a * b
    return out


def _mat_eq(x, y):
    return all(a == b for rx, ry in zip(x, y) for a, b in zip(rx, ry))


def folklore_iso_check(sample, action: GroupAction, one, zero, n_samples=10, rng=None) -> bool:
    """Check that b x| r  ->  sum_t E_{t, t r} (x) alpha_t(b) is an algebra
    isomorphism onto the R-invariant matrices, on random samples.

    ``sample(rng)`` draws an element of B. Raises ``CheckFailed`` with the
    offending pair on the first failure; returns True otherwise.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    grp = action.group
    elems = grp.elements()
    n = len(elems)
    idx = {g: i for i, g in enumerate(elems)}
    cp = CrossedProduct(action, one, zero)

    def phi(x):
        mat = [[zero for _ in range(n)] for _ in range(n)]
        for r, b in x.terms.items():
            for t in elems:
                i, j = idx[t], idx[grp.add(t, r)]
                mat[i][j] = mat[i][j] + action(t, b)
        return mat

    def psi(mat):
        e = idx[grp.zero]
        return cp.element({r: mat[e][idx[r]] for r in elems})

    def act_mat(g, mat):
        # (g . X)[t][u] = alpha_g(X[g^-1 t][g^-1 u])
        out = [[zero for _ in range(n)] for _ in range(n)]
        for t in elems:
            for u in elems:
                out[idx[t]][idx[u]] = action(g, mat[idx[grp.sub(t, g)]][idx[grp.sub(u, g)]])
        return out

    def random_cp():
        return cp.element({r: sample(rng) for r in elems})

    def average(mat):
        total = None
        for g in elems:
            m = act_mat(g, mat)
            total = m if total is None else [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(total, m)]
        return [[_scale(a, Fraction(1, n)) for a in row] for row in total]

    for _ in range(n_samples):
        x, y = random_cp(), random_cp()
        px, py = phi(x), phi(y)
        if not _mat_eq(phi(x * y), _matmul(px, py, zero)):
            raise CheckFailed("map is not multiplicative", (x, y))
        for g in elems:
            if not _mat_eq(act_mat(g, px), px):
                raise CheckFailed(f"image is not invariant under {g}", (x, y))
        if not psi(px) == x:
            raise CheckFailed("left inverse fails", (x, y))
        big = [[sample(rng) for _ in range(n)] for _ in range(n)]
        inv = average(big)
        if not _mat_eq(phi(psi(inv)), inv):
            raise CheckFailed("map is not onto the invariants", (x, y))
        inv2 = average([[sample(rng) for _ in range(n)] for _ in range(n)])
        if not psi(inv) * psi(inv2) == psi(_matmul(inv, inv2, zero)):
            raise CheckFailed("inverse map is not multiplicative", (x, y))
    return True


# -- matrices over the Hecke algebra ------------------------------------------------------

def _cyclo_matmul(a, b):
    m = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(m)), Cyclotomic.rational(0)) for j in range(m)]
            for i in range(m)]


def _cyclo_inverse(a):
    m = len(a)
    aug = [[Cyclotomic.rational(0) + x for x in row] + [Cyclotomic.rational(int(i == j)) for j in range(m)]
           for i, row in enumerate(a)]
    for col in range(m):
        piv = next((r for r in range(col, m) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(m):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[m:] for row in aug]


class MatrixAmplified:
    """m x m matrices over a Hecke algebra, optionally with a projective
    action gamma -> Ad(J(gamma)) o alpha_gamma."""

    def __init__(self, datum, m, entries=None):
        self.datum = datum
        self.dim = m
        z = datum.zero()
        if entries is None:
            entries = [[z for _ in range(m)] for _ in range(m)]
        self.entries = [list(row) for row in entries]

    @classmethod
    def scalar(cls, datum, m, h):
        z = datum.zero()
        return cls(datum, m, [[h if i == j else z for j in range(m)] for i in range(m)])

    @classmethod
    def from_cyclotomic(cls, datum, mat):
        m = len(mat)
        return cls(datum, m, [[datum.one() * Scalar.const(Cyclotomic.rational(0) + c) for c in row] for row in mat])

    def __add__(self, other):
        return MatrixAmplified(self.datum, self.dim,
                               [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __mul__(self, other):
        return MatrixAmplified(self.datum, self.dim, _matmul(self.entries, other.entries, self.datum.zero()))

    def __eq__(self, other):
        return isinstance(other, MatrixAmplified) and _mat_eq(self.entries, other.entries)

    def map_entries(self, fn):
        return MatrixAmplified(self.datum, self.dim, [[fn(a) for a in row] for row in self.entries])


class ProjectiveMatrixAction:
    """gamma -> J(gamma) with J(g) J(h) = zeta(kappa(g, h)) J(g + h), verified exactly."""

    def __init__(self, group: FinAbGroup, kappa: TwoCocycle, matrices: dict, hecke_autos: dict):
        self.group = group
        self.kappa = kappa
        self.J = {group.elem(g): [[Cyclotomic.rational(0) + c for c in row] for row in mat]
                  for g, mat in matrices.items()}
        self.autos = {group.elem(g): a for g, a in hecke_autos.items()}
        for g in group.elements():
            for h in group.elements():
                lhs = _cyclo_matmul(self.J[g], self.J[h])
                z = Cyclotomic.root_of_unity(kappa(g, h))
                rhs = [[z * c for c in row] for row in self.J[group.add(g, h)]]
                if not all(a == b for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb)):
                    raise CheckFailed(f"J({g}) J({h}) != zeta(kappa) J({group.add(g, h)})", (g, h))
        self._inv = {g: _cyclo_inverse(m) for g, m in self.J.items()}

    def __call__(self, g, x: MatrixAmplified) -> MatrixAmplified:
        g = self.group.elem(g)
        a = self.autos[g]
        inner = x.map_entries(a)
        j = MatrixAmplified.from_cyclotomic(x.datum, self.J[g])
        jinv = MatrixAmplified.from_cyclotomic(x.datum, self._inv[g])
        return j * inner * jinv


def standard_folklore_check(kind: str, order: int, n_samples=5, seed=0, window=2) -> bool:
    """Run the comparison for B in {"scalars", "m2", "hecke"} and R = Z/order.

    scalars: trivial action. m2: conjugation by diag(1, zeta_order).
    hecke: GL_2 window |x_i| <= window, R acting by translation (1/order, 1/order).
    """
    from .algebra import RootDatumGL

    rng = np.random.default_rng(seed)
    grp = FinAbGroup([order])
    if kind == "scalars":
        action = GroupAction(grp, lambda g, b: b, name="trivial")
        return folklore_iso_check(
            lambda r: Cyclotomic.rational(int(r.integers(-5, 6))), action,
            Cyclotomic.rational(1), Cyclotomic.rational(0), n_samples, rng)
    if kind == "m2":
        alg = StructureConstantAlgebra.matrix_algebra(2)
        action = conjugation_action(alg, 2, grp, [0, Fraction(1, order)])
        return folklore_iso_check(alg.random, action, alg.one(), alg.zero(), n_samples, rng)
    if kind == "hecke":
        datum = RootDatumGL([(2, 0)])
        step = HeckeAutomorphism(datum, None, [Fraction(1, order)] * 2)
        autos, cur = {}, HeckeAutomorphism(datum)
        for k in range(order):
            autos[(k,)] = cur
            cur = step * cur
        action = HeckeGroupAction(grp, autos)
        return folklore_iso_check(
            lambda r: datum.random_element(r, n_terms=2, coord=window), action,
            datum.one(), datum.zero(), n_samples, rng)
    raise ValueError(f"unknown algebra {kind!r}")
