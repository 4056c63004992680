"""Independent reference computations used to cross-check the library.

None of these share code with the package: they work numerically (complex
evaluation), through sympy, or by exhaustive enumeration.
"""

from __future__ import annotations

import cmath
import itertools
from fractions import Fraction

import numpy as np
import sympy


# -- numeric evaluation of coefficients ---------------------------------------------------

def eval_cyclotomic(c) -> complex:
    z = cmath.exp(2j * cmath.pi / c.conductor)
    return sum(float(a) * z ** k for k, a in enumerate(c.coeffs))


def eval_scalar(s, vs) -> complex:
    """Value of a Scalar at v_i = vs[i]."""
    total = 0j
    for exps, c in s.items():
        mono = 1.0
        for i, e in enumerate(exps):
            mono *= vs[i] ** e
        total += mono * eval_cyclotomic(c)
    return total


def root_of_unity(x) -> complex:
    return cmath.exp(2j * cmath.pi * float(Fraction(x)))


# -- Smith normal form through sympy -----------------------------------------------------------

def snf_diagonal_oracle(rows) -> list:
    from sympy.matrices.normalforms import smith_normal_form

    m = sympy.Matrix(rows)
    if m.rows == 0 or m.cols == 0:
        return []
    d = smith_normal_form(m, domain=sympy.ZZ)
    return [abs(int(d[i, i])) for i in range(min(d.shape))]


# -- affine Hecke algebra acting on Laurent polynomials ----------------------------------------

def bubble_word(w) -> list:
    """A reduced word for w (as a tuple k -> w[k]) with w = s_{j_1} ... s_{j_l}."""
    w = list(w)
    word = []
    while True:
        j = next((j for j in range(len(w) - 1) if w[j] > w[j + 1]), None)
        if j is None:
            break
        # w = (w s_j) s_j and w s_j swaps the entries j, j + 1
        w[j], w[j + 1] = w[j + 1], w[j]
        word.append(j)
    return word[::-1]


class PolynomialRep:
    """H acting on C[X_1^+-1, ..., X_r^+-1] with the q_i specialised to v_i**2:
    theta_x is multiplication by X^x and

        T_s f = q s(f) + (q - 1) (f - s(f)) / (1 - X_{j+1} / X_j).
    """

    def __init__(self, datum, vs):
        self.datum = datum
        self.vs = [sympy.Rational(v) for v in vs]
        self.X = sympy.symbols(f"X0:{datum.rank}")

    def mono(self, x):
        out = sympy.Integer(1)
        for s, a in zip(self.X, x):
            out *= s ** a
        return out

    def scalar(self, c):
        total = sympy.Integer(0)
        for exps, cyc in c.items():
            if cyc.conductor != 1:
                raise ValueError("the polynomial oracle handles rational coefficients only")
            mono = sympy.Integer(1)
            for i, e in enumerate(exps):
                mono *= self.vs[i] ** e
            total += mono * sympy.Rational(cyc.coeffs[0])
        return total

    def reflect(self, f, j):
        a, b = self.X[j], self.X[j + 1]
        return f.subs({a: b, b: a}, simultaneous=True)

    def t_s(self, j, f):
        q = self.vs[self.datum.param_of[j]] ** 2
        sf = self.reflect(f, j)
        frac = sympy.cancel((f - sf) * self.X[j] / (self.X[j] - self.X[j + 1]))
        return sympy.expand(q * sf + (q - 1) * frac)

    def t_w(self, w, f):
        for j in reversed(bubble_word(w)):
            f = self.t_s(j, f)
        return f

    def act(self, h, f):
        total = sympy.Integer(0)
        for (x, w), c in h.terms.items():
            total += self.scalar(c) * self.mono(x) * self.t_w(w, f)
        return sympy.expand(total)

    def same_action(self, a, b, tests) -> bool:
        return all(sympy.expand(self.act(a, f) - self.act(b, f)) == 0 for f in tests)


# -- fixed points of affine maps on the torus -------------------------------------------------

def image_of_one_minus_w(w, modulus):
    """Boolean array over (Z/modulus)^r marking the image of t -> t - w.t,
    where (w.t)[w[k]] = t[k]."""
    r = len(w)
    grid = np.array(list(itertools.product(range(modulus), repeat=r)), dtype=np.int64).reshape(-1, r)
    wt = np.empty_like(grid)
    for k in range(r):
        wt[:, w[k]] = grid[:, k]
    img = (grid - wt) % modulus
    codes = np.zeros(len(grid), dtype=np.int64)
    for k in range(r):
        codes = codes * modulus + img[:, k]
    mark = np.zeros(modulus ** r, dtype=bool)
    mark[codes] = True
    return mark


def encode(point, modulus) -> int:
    code = 0
    for x in point:
        f = Fraction(x) * modulus
        assert f.denominator == 1
        code = code * modulus + int(f) % modulus
    return code


def fixed_point_brute(w, c, modulus) -> bool:
    """Search every t with modulus * t = 0 for w.t + c = t."""
    r = len(w)
    cs = [Fraction(x) for x in c]
    for t in itertools.product(range(modulus), repeat=r):
        wt = [0] * r
        for k in range(r):
            wt[w[k]] = t[k]
        if all((Fraction(wt[k], modulus) + cs[k] - Fraction(t[k], modulus)).denominator == 1
               for k in range(r)):
            return True
    return False


# -- twisted group algebras -------------------------------------------------------------------

def twisted_centre_dimension(group, kappa) -> int:
    """Dimension of the centre of C[group, kappa], from its regular representation."""
    elems = group.elements()
    n = len(elems)
    idx = {g: i for i, g in enumerate(elems)}
    left = np.zeros((n, n, n), dtype=complex)    # left[g] is the matrix of e_g * (.)
    right = np.zeros((n, n, n), dtype=complex)   # right[g] is the matrix of (.) * e_g
    for g in elems:
        for h in elems:
            gh = group.add(g, h)
            left[idx[g]][idx[gh], idx[h]] = root_of_unity(kappa(g, h).value)
            right[idx[g]][idx[group.add(h, g)], idx[h]] = root_of_unity(kappa(h, g).value)
    # z is central iff e_g z = z e_g for every g
    system = np.vstack([left[i] - right[i] for i in range(n)])
    rank = np.linalg.matrix_rank(system, tol=1e-8)
    return n - rank


def twisted_is_commutative(group, kappa) -> bool:
    elems = group.elements()
    return all(kappa(g, h) == kappa(h, g) for g in elems for h in elems)


# -- finite-field character search -------------------------------------------------------------

def green_brute(q, d, m):
    """Literal enumeration of the regular / twisted-Frobenius / non-fixed residues."""
    big = q ** (d * m) - 1
    norm = big // (q - 1)
    out = []
    for k in range(big):
        orbit = {k * q ** (d * j) % big for j in range(m)}
        if len(orbit) != m:
            continue
        kq = k * q % big
        twisted = {(k + norm) * q ** (d * j) % big for j in range(m)}
        if kq in twisted and kq not in orbit:
            out.append(k)
    return out
