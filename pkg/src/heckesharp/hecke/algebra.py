"""Affine Hecke algebras of products of GL blocks in the Bernstein basis.

An element is a finite sum  sum c * theta_x * T_w  with x in Z^r and w in
W = S_{e_1} x ... x S_{e_k} acting on coordinates block by block. Products
are brought back to this normal order by pushing T_s to the right through
theta_y one simple reflection at a time:

    T_s theta_y = theta_{s y} T_s + (q - 1) * (theta_y - theta_{s y}) / (1 - theta_{-alpha})

with the quotient expanded as a geometric chain of monomials.
"""

from __future__ import annotations

import itertools
import threading
from fractions import Fraction

from .. import kernels as _k
from ..coeffring import Cyclotomic, Scalar
from ..errors import NotDominant
from ..finstruct import blocks_from_sizes, cycle_string, perm_compose, perm_inverse


def _vec_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


class RootDatumGL:
    """Root datum of GL_{e_1} x ... x GL_{e_k} with one q-parameter per block.

    ``blocks`` is a sequence of ``(e_i, q_index)``. Coordinates are numbered
    consecutively block by block; positive roots are x_a - x_b with a < b in
    the same block.
    """

    def __init__(self, blocks):
        blocks = tuple((int(e), int(qi)) for e, qi in blocks)
        if any(e < 1 for e, _ in blocks):
            raise ValueError("block sizes must be positive")
        if any(qi < 0 for _, qi in blocks):
            raise ValueError("q indices must be nonnegative")
        self.blocks = blocks
        self.positions = blocks_from_sizes([e for e, _ in blocks])
        self.rank = sum(e for e, _ in blocks)
        self.q_params = tuple(sorted({qi for _, qi in blocks}))
        self.block_of = tuple(i for i, (s, e) in enumerate(self.positions) for _ in range(e))
        self.param_of = tuple(blocks[b][1] for b in self.block_of)
        # simple reflections are indexed by their left coordinate j (swaps j, j+1)
        self.simple = tuple(j for j in range(self.rank - 1) if self.block_of[j] == self.block_of[j + 1])
        self.positive_roots = tuple(
            (a, b) for s, e in self.positions for a in range(s, s + e) for b in range(a + 1, s + e))
        self._identity = tuple(range(self.rank))
        self._words = {}
        self._lock = threading.Lock()
        self._weyl = None
        self._qm1 = {qi: Scalar.q(qi) - 1 for qi in self.q_params}
        self._q = {qi: Scalar.q(qi) for qi in self.q_params}

    @classmethod
    def from_sizes(cls, sizes, q_index=0):
        return cls([(e, q_index) for e in sizes])

    def __eq__(self, other):
        return isinstance(other, RootDatumGL) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"RootDatumGL({list(self.blocks)})"

    # -- Weyl group --
    @property
    def identity(self):
        return self._identity

    def reflection(self, j):
        w = list(range(self.rank))
        w[j], w[j + 1] = j + 1, j
        return tuple(w)

    def weyl_elements(self) -> list:
        if self._weyl is None:
            per_block = [list(itertools.permutations(range(s, s + e))) for s, e in self.positions]
            out = []
            for combo in itertools.product(*per_block):
                out.append(tuple(k for part in combo for k in part))
            self._weyl = out
        return self._weyl

    @property
    def weyl_order(self) -> int:
        n = 1
        for e, _ in self.blocks:
            for k in range(2, e + 1):
                n *= k
        return n

    def in_weyl(self, w) -> bool:
        return len(w) == self.rank and all(self.block_of[k] == self.block_of[w[k]] for k in range(self.rank))

    def length(self, w) -> int:
        return sum(1 for a, b in self.positive_roots if w[a] > w[b])

    def reduced_word(self, w) -> tuple:
        """Simple reflections (j, ...) with T_w = T_{s_j1} T_{s_j2} ..."""
        w = tuple(w)
        word = self._words.get(w)
        if word is not None:
            return word
        out = []
        cur = w
        while True:
            inv = perm_inverse(cur)
            j = next((j for j in self.simple if inv[j] > inv[j + 1]), None)
            if j is None:
                break
            out.append(j)
            cur = perm_compose(self.reflection(j), cur)
        word = tuple(out)
        with self._lock:
            self._words[w] = word
        return word

    # -- lattice --
    def act(self, w, x) -> tuple:
        out = [0] * self.rank
        for k, wk in enumerate(w):
            out[wk] = x[k]
        return tuple(out)

    def is_dominant(self, x) -> bool:
        return all(x[a] >= x[b] for a, b in self.positive_roots)

    def im_length(self, x, w=None) -> dict:
        """Length of x * w in the extended affine Weyl group, split by q-parameter."""
        w = self._identity if w is None else tuple(w)
        inv = perm_inverse(w)
        out = {qi: 0 for qi in self.q_params}
        for a, b in self.positive_roots:
            pairing = x[a] - x[b]
            if inv[a] < inv[b]:
                out[self.param_of[a]] += abs(pairing)
            else:
                out[self.param_of[a]] += abs(pairing - 1)
        return out

    def q_of(self, x, w=None) -> Scalar:
        exps = [0] * (max(self.q_params) + 1)
        for qi, n in self.im_length(x, w).items():
            exps[qi] = 2 * n
        return Scalar.monomial(exps)

    # -- constructors --
    def element(self, terms=None) -> "HeckeElement":
        return HeckeElement(self, terms)

    def zero(self):
        return HeckeElement(self)

    def one(self):
        return self.theta((0,) * self.rank)

    def theta(self, x, coeff=1):
        x = tuple(int(a) for a in x)
        if len(x) != self.rank:
            raise ValueError(f"lattice vector {x} should have {self.rank} coordinates")
        return HeckeElement(self, {(x, self._identity): coeff})

    def t_w(self, w, coeff=1):
        w = tuple(w)
        if not self.in_weyl(w):
            raise ValueError(f"{cycle_string(w)} is not in the Weyl group of {self.blocks}")
        return HeckeElement(self, {((0,) * self.rank, w): coeff})

    def t_s(self, j):
        if j not in self.simple:
            raise ValueError(f"{j} does not index a simple reflection")
        return self.t_w(self.reflection(j))

    def im_element(self, x):
        """Iwahori-Matsumoto element [x] = q(x)^(1/2) theta_x for dominant x."""
        x = tuple(x)
        if not self.is_dominant(x):
            raise NotDominant(f"{list(x)} is not dominant")
        exps = [0] * (max(self.q_params) + 1)
        for qi, n in self.im_length(x).items():
            exps[qi] = n
        return self.theta(x, Scalar.monomial(exps))

    def orbit_sum(self, x):
        """Sum of theta over the distinct points of the W-orbit of x."""
        pts = {self.act(w, x) for w in self.weyl_elements()}
        return HeckeElement(self, {(p, self._identity): 1 for p in pts})

    def q(self, qi) -> Scalar:
        return self._q[qi]

    def random_element(self, rng, n_terms=3, coord=2, with_T=True, params=True):
        """Random element with small integer or v-monomial coefficients."""
        terms = {}
        weyl = self.weyl_elements() if with_T else [self._identity]
        for _ in range(n_terms):
            x = tuple(int(a) for a in rng.integers(-coord, coord + 1, self.rank))
            w = weyl[int(rng.integers(len(weyl)))]
            c = Scalar.const(int(rng.integers(1, 4)) * (1 if rng.random() < 0.5 else -1))
            if params and rng.random() < 0.4:
                qi = self.q_params[int(rng.integers(len(self.q_params)))]
                c = c * Scalar.v(qi, int(rng.integers(-2, 3)))
            terms[(x, w)] = terms[(x, w)] + c if (x, w) in terms else c
        return HeckeElement(self, terms)

    # -- multiplication core --
    def _left_mul_ts(self, j, terms):
        qi = self.param_of[j]
        qm1 = self._qm1[qi]
        q = self._q[qi]
        out = {}

        def add(key, c):
            prev = out.get(key)
            out[key] = c if prev is None else prev + c

        for (y, v), c in terms.items():
            sy = list(y)
            sy[j], sy[j + 1] = y[j + 1], y[j]
            sy = tuple(sy)
            sv = list(v)
            a = sv.index(j)
            b = sv.index(j + 1)
            sv[a], sv[b] = j + 1, j
            sv = tuple(sv)
            if a < b:
                add((sy, sv), c)
            else:
                add((sy, v), c * qm1)
                add((sy, sv), c * q)
            n = y[j] - y[j + 1]
            if n > 0:
                cq = c * qm1
                for z in _k.bernstein_chain(y, j, n):
                    add((z, v), cq)
            elif n < 0:
                cq = -(c * qm1)
                for z in _k.bernstein_chain(sy, j, -n):
                    add((z, v), cq)
        return {k: c for k, c in out.items() if c}

    def _left_mul_tw(self, w, terms):
        for j in reversed(self.reduced_word(w)):
            terms = self._left_mul_ts(j, terms)
        return terms

    def mul(self, a, b):
        if a.datum != self or b.datum != self:
            raise ValueError("elements belong to different Hecke algebras")
        cache = {}
        out = {}
        for (x, w), c in a.terms.items():
            tb = cache.get(w)
            if tb is None:
                tb = self._left_mul_tw(w, b.terms)
                cache[w] = tb
            for (y, v), d in tb.items():
                key = (_vec_add(x, y), v)
                prev = out.get(key)
                cd = c * d
                out[key] = cd if prev is None else prev + cd
        return HeckeElement(self, out)


_COEFF_TYPES = (Scalar, Cyclotomic, int, Fraction)


class HeckeElement:
    """Immutable finite sum of c * theta_x * T_w."""

    __slots__ = ("datum", "terms")

    def __init__(self, datum: RootDatumGL, terms=None):
        clean = {}
        for (x, w), c in (terms or {}).items():
            c = Scalar.const(c)
            if c:
                clean[(tuple(x), tuple(w))] = c
        object.__setattr__(self, "datum", datum)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("HeckeElement is immutable")

    def _check(self, other):
        if not isinstance(other, HeckeElement):
            raise TypeError(f"cannot combine HeckeElement with {type(other).__name__}")
        if other.datum != self.datum:
            raise ValueError("elements belong to different Hecke algebras")

    def __add__(self, other):
        if isinstance(other, _COEFF_TYPES):
            other = self.datum.one() * other
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return HeckeElement(self.datum, out)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElement(self.datum, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, _COEFF_TYPES):
            other = self.datum.one() * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _COEFF_TYPES):
            s = Scalar.const(other)
            return HeckeElement(self.datum, {k: c * s for k, c in self.terms.items()})
        if isinstance(other, HeckeElement):
            return self.datum.mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _COEFF_TYPES):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        out = self.datum.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, factor):
        return HeckeElement(self.datum, {k: c.scale(factor) for k, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, _COEFF_TYPES):
            other = self.datum.one() * other
        if not isinstance(other, HeckeElement):
            return NotImplemented
        if other.datum != self.datum or self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[k] for k, c in self.terms.items())

    def __hash__(self):
        raise TypeError("HeckeElement is not hashable")

    def theta_part(self):
        """Split into {w: {x: c}}; used to re-expand and inspect."""
        out = {}
        for (x, w), c in self.terms.items():
            out.setdefault(w, {})[x] = c
        return out

    def is_theta_only(self) -> bool:
        e = self.datum.identity
        return all(w == e for _, w in self.terms)

    def support(self):
        return sorted(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for x, w in sorted(self.terms):
            c = str(self.terms[(x, w)])
            if " " in c:
                c = f"({c})"
            parts.append(f"{c} * theta[{','.join(map(str, x))}] * T[{cycle_string(w)}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"HeckeElement({self})"


def is_central(f: HeckeElement) -> bool:
    """Centre membership: theta-only and W-invariant.

    The structural answer is cross-checked against commutation with every
    T_s and every theta_{e_i}; a disagreement raises ``RuntimeError``.
    """
    d = f.datum
    structural = f.is_theta_only() and all(
        f.terms.get((d.act(d.reflection(j), x), d.identity)) == c
        for (x, _), c in f.terms.items() for j in d.simple)
    gens = [d.t_s(j) for j in d.simple]
    gens += [d.theta(tuple(int(i == k) for i in range(d.rank))) for k in range(d.rank)]
    commutes = all(g * f == f * g for g in gens)
    if structural != commutes:
        raise RuntimeError(f"centre test disagrees with commutation for {f}")
    return structural


def hecke_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    return a.datum.mul(a, b)


def im_length(datum: RootDatumGL, x, w=None) -> dict:
    return datum.im_length(x, w)
