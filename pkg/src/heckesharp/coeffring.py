"""Exact coefficient arithmetic.

Everything here is immutable and exact:

* :class:`QmodZ` -- a rational number modulo 1, standing for the root of
  unity ``exp(2*pi*i*value)``.
* :class:`Cyclotomic` -- an element of Q(zeta_N) in the power basis
  ``1, zeta, ..., zeta**(phi(N)-1)``.
* :class:`Scalar` -- a Laurent polynomial in half-parameters ``v_i`` (with
  ``q_i = v_i**2``) over Q(zeta_N). This is the coefficient ring of the Hecke
  algebras.
* :class:`TorusLaurent` -- a finite sum of lattice monomials ``theta_x`` with
  Scalar coefficients, i.e. a regular function on the torus.

Rationals are :class:`fractions.Fraction` (exported as ``Rat``).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from . import kernels as _k

Rat = Fraction


class NotDivisible(ArithmeticError):
    pass


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, QmodZ):
        return value.value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


class QmodZ:
    """A rational number reduced into [0, 1)."""

    __slots__ = ("value",)

    def __init__(self, value=0):
        f = as_fraction(value)
        object.__setattr__(self, "value", f - (f.numerator // f.denominator))

    def __setattr__(self, name, value):
        raise AttributeError("QmodZ is immutable")

    @property
    def order(self) -> int:
        return self.value.denominator

    def __add__(self, other):
        return QmodZ(self.value + as_fraction(other))

    __radd__ = __add__

    def __sub__(self, other):
        return QmodZ(self.value - as_fraction(other))

    def __rsub__(self, other):
        return QmodZ(as_fraction(other) - self.value)

    def __neg__(self):
        return QmodZ(-self.value)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return QmodZ(self.value * n)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, QmodZ):
            return self.value == other.value
        try:
            return self.value == QmodZ(other).value
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(("QmodZ", self.value))

    def __lt__(self, other):
        return self.value < QmodZ(other).value

    def __repr__(self):
        return f"QmodZ({str(self.value)!r})"

    def __str__(self):
        return str(self.value)


# -- cyclotomic tables ------------------------------------------------------

def _poly_divexact(num, den):
    # integer polynomials, coefficient lists low degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic_polynomial(d))
    return tuple(num)


class _CycloTable:
    __slots__ = ("n", "phi", "red", "powers")

    def __init__(self, n):
        poly = cyclotomic_polynomial(n)
        phi = len(poly) - 1
        self.n = n
        self.phi = phi
        # zeta**k in the power basis for k < max(2*phi - 1, n)
        top = max(2 * phi - 1, n)
        vecs = []
        cur = [0] * phi
        cur[0] = 1
        for _ in range(top):
            vecs.append(tuple(cur))
            # multiply by zeta: shift and reduce zeta**phi = -sum poly[i] zeta**i
            carry = cur[-1]
            cur = [0] + cur[:-1]
            if carry:
                for i in range(phi):
                    cur[i] -= carry * poly[i]
        self.red = tuple(vecs[: 2 * phi - 1])
        self.powers = tuple(vecs[:n])


@lru_cache(maxsize=None)
def cyclo_table(n: int) -> _CycloTable:
    if n < 1:
        raise ValueError("conductor must be positive")
    return _CycloTable(n)


@lru_cache(maxsize=None)
def _lift_images(n: int, m: int) -> tuple:
    # image of zeta_n**i in Q(zeta_m), m a multiple of n
    step = m // n
    t = cyclo_table(m)
    return tuple(t.powers[(i * step) % m] for i in range(cyclo_table(n).phi))


def _lift_vec(vec, n, m):
    if n == m:
        return vec
    imgs = _lift_images(n, m)
    acc = [0] * cyclo_table(m).phi
    for c, img in zip(vec, imgs):
        if c:
            for i, x in enumerate(img):
                if x:
                    acc[i] += c * x
    return tuple(acc)


def _normalize(n, den, terms):
    if not terms:
        return 1, {}
    g = den
    for vec in terms.values():
        for x in vec:
            if x:
                g = gcd(g, x)
                if g == 1:
                    break
        if g == 1:
            break
    if den < 0:
        g = -g
    if g != 1:
        terms = {e: tuple(x // g for x in v) for e, v in terms.items()}
        den //= g
    return den, terms


# -- Cyclotomic ---------------------------------------------------------------

class Cyclotomic:
    """Exact element of the N-th cyclotomic field."""

    __slots__ = ("conductor", "nums", "den")

    def __init__(self, conductor: int, coeffs=None):
        t = cyclo_table(conductor)
        if coeffs is None:
            coeffs = [0] * t.phi
        coeffs = [as_fraction(c) for c in coeffs]
        if len(coeffs) != t.phi:
            raise ValueError(f"expected {t.phi} coordinates for conductor {conductor}")
        den = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        nums = tuple(int(c * den) for c in coeffs)
        self._set(conductor, nums, den)

    def _set(self, n, nums, den):
        g = den
        for x in nums:
            g = gcd(g, x)
        if g > 1:
            nums = tuple(x // g for x in nums)
            den //= g
        if not any(nums):
            den = 1
        object.__setattr__(self, "conductor", n)
        object.__setattr__(self, "nums", nums)
        object.__setattr__(self, "den", den)

    @classmethod
    def _raw(cls, n, nums, den):
        obj = object.__new__(cls)
        obj._set(n, tuple(nums), den)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    @classmethod
    def rational(cls, value, conductor: int = 1):
        f = as_fraction(value)
        phi = cyclo_table(conductor).phi
        return cls._raw(conductor, (f.numerator,) + (0,) * (phi - 1), f.denominator)

    @classmethod
    def root_of_unity(cls, exponent, conductor: int | None = None):
        """Embed a QmodZ value a/b as zeta_b**a inside Q(zeta_N), b | N."""
        e = QmodZ(exponent).value
        b = e.denominator
        n = b if conductor is None else conductor
        if n % b:
            raise ValueError(f"order {b} does not divide conductor {n}")
        k = (e.numerator * (n // b)) % n
        return cls._raw(n, cyclo_table(n).powers[k], 1)

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(x, self.den) for x in self.nums)

    def lift(self, m: int) -> "Cyclotomic":
        if m % self.conductor:
            raise ValueError("target conductor must be a multiple")
        return Cyclotomic._raw(m, _lift_vec(self.nums, self.conductor, m), self.den)

    def _unify(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        if other.conductor == self.conductor:
            return self, other
        m = lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._unify(other)
        den = lcm(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        return Cyclotomic._raw(a.conductor, [fa * x + fb * y for x, y in zip(a.nums, b.nums)], den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.conductor, [-x for x in self.nums], self.den)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -as_fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._unify(other)
        t = cyclo_table(a.conductor)
        prod = _k.mul_terms({(): a.nums}, {(): b.nums}, t.phi, t.red)
        nums = prod.get((), (0,) * t.phi)
        return Cyclotomic._raw(a.conductor, nums, a.den * b.den)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.nums)

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse, by solving the multiplication-matrix system."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.conductor
        t = cyclo_table(n)
        phi = t.phi
        # column j = self * zeta**j
        cols = []
        for j in range(phi):
            basis = [0] * phi
            basis[j] = 1
            cols.append((self * Cyclotomic._raw(n, basis, 1)).coeffs)
        mat = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        sol = _solve(mat, phi)
        return Cyclotomic(n, sol)

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        f = as_fraction(other)
        return self * Cyclotomic.rational(1 / f)

    def __eq__(self, other):
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._unify(other)
        return a.den == b.den and a.nums == b.nums

    def __hash__(self):
        raise TypeError("Cyclotomic values are compared after conductor unification; not hashable")

    def __repr__(self):
        return f"Cyclotomic({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        return _format_cyclo(self.conductor, self.nums, self.den)


def _solve(aug, n):
    # Gauss-Jordan over Fractions on an n x (n+1) augmented matrix
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _format_cyclo(n, nums, den):
    parts = []
    for i, x in enumerate(nums):
        if not x:
            continue
        c = Fraction(x, den)
        if i == 0:
            parts.append(str(c))
        else:
            z = f"z{n}" if i == 1 else f"z{n}^{i}"
            if c == 1:
                parts.append(z)
            elif c == -1:
                parts.append("-" + z)
            else:
                parts.append(f"{c}*{z}")
    if not parts:
        return "0"
    return _join_signed(parts)


def _join_signed(parts):
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# -- Scalar -------------------------------------------------------------------

def _trim(exps):
    exps = tuple(exps)
    i = len(exps)
    while i and exps[i - 1] == 0:
        i -= 1
    return exps[:i]


class Scalar:
    """Laurent polynomial in v_0, v_1, ... over a cyclotomic field.

    Stored as ``(conductor, den, terms)`` where ``terms`` maps exponent
    tuples (no trailing zeros) to integer coordinate vectors; the value of a
    term is ``vector / den`` in the power basis of Q(zeta_conductor).
    Zero is the empty term map.
    """

    __slots__ = ("conductor", "den", "terms")

    def __init__(self, conductor=1, den=1, terms=None):
        den, terms = _normalize(conductor, den, dict(terms or {}))
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # constructors
    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls(1, 1, {(): (1,)})

    @classmethod
    def const(cls, value):
        if isinstance(value, Scalar):
            return value
        if isinstance(value, Cyclotomic):
            return cls(value.conductor, value.den, {(): value.nums} if not value.is_zero() else {})
        f = as_fraction(value)
        return cls(1, f.denominator, {(): (f.numerator,)} if f else {})

    @classmethod
    def monomial(cls, exps, coeff=1):
        c = cls.const(coeff)
        e = _trim(exps)
        return cls(c.conductor, c.den, {_k.add_exponents(e, k): v for k, v in c.terms.items()})

    @classmethod
    def v(cls, i: int, power: int = 1):
        """The half-parameter v_i = q_i**(1/2), raised to ``power``."""
        return cls.monomial((0,) * i + (power,))

    @classmethod
    def q(cls, i: int, power: int = 1):
        return cls.v(i, 2 * power)

    @classmethod
    def root_of_unity(cls, exponent):
        return cls.const(Cyclotomic.root_of_unity(exponent))

    # arithmetic
    def _unify(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.const(other)
        if self.conductor == other.conductor:
            return self, other
        m = lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def lift(self, m):
        if m == self.conductor:
            return self
        n = self.conductor
        return Scalar(m, self.den, {e: _lift_vec(v, n, m) for e, v in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, (Scalar, Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._unify(other)
        if not b.terms:
            return a
        if not a.terms:
            return b
        den = lcm(a.den, b.den)
        return Scalar(a.conductor, den, _k.add_terms(a.terms, den // a.den, b.terms, den // b.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.conductor, -self.den, self.terms) if self.terms else self

    def __sub__(self, other):
        if not isinstance(other, (Scalar, Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._unify(other)
        if not b.terms:
            return a
        den = lcm(a.den, b.den)
        return Scalar(a.conductor, den, _k.add_terms(a.terms, den // a.den, b.terms, -(den // b.den)))

    def __rsub__(self, other):
        return Scalar.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, (Scalar, Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._unify(other)
        if not a.terms or not b.terms:
            return Scalar()
        t = cyclo_table(a.conductor)
        return Scalar(a.conductor, a.den * b.den, _k.mul_terms(a.terms, b.terms, t.phi, t.red))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self.terms) != 1:
                raise NotDivisible("only monomials are invertible")
            return self.invert_monomial() ** (-n)
        out = Scalar.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def invert_monomial(self):
        ((e, vec),) = self.terms.items()
        c = Cyclotomic._raw(self.conductor, vec, self.den).inverse()
        return Scalar.monomial(tuple(-x for x in e), c)

    def scale(self, factor):
        """Multiply by a rational number."""
        f = as_fraction(factor)
        if not f:
            return Scalar()
        return Scalar(self.conductor, self.den * f.denominator,
                      {e: tuple(x * f.numerator for x in v) for e, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / as_fraction(other))
        return NotImplemented

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, exps) -> Cyclotomic:
        vec = self.terms.get(_trim(exps))
        if vec is None:
            return Cyclotomic(self.conductor)
        return Cyclotomic._raw(self.conductor, vec, self.den)

    def items(self):
        """Yield ``(exponents, Cyclotomic)`` in sorted exponent order."""
        for e in sorted(self.terms):
            yield e, Cyclotomic._raw(self.conductor, self.terms[e], self.den)

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def __eq__(self, other):
        if not isinstance(other, (Scalar, Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._unify(other)
        return a.den == b.den and a.terms == b.terms

    def __hash__(self):
        raise TypeError("Scalar is not hashable")

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            coeff = _format_cyclo(self.conductor, self.terms[e], self.den)
            mono = "*".join(
                f"v{i}" if p == 1 else f"v{i}^{p}" for i, p in enumerate(e) if p
            )
            if not mono:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(mono)
            elif coeff == "-1":
                parts.append("-" + mono)
            elif " " in coeff:
                parts.append(f"({coeff})*{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        return _join_signed(parts)


# -- TorusLaurent ---------------------------------------------------------------

class TorusLaurent:
    """Finite sum of monomials theta_x (x in Z^r) with Scalar coefficients."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        clean = {}
        for x, c in (terms or {}).items():
            x = tuple(x)
            if len(x) != rank:
                raise ValueError(f"lattice vector {x} has wrong rank")
            c = Scalar.const(c)
            if c:
                clean[x] = c
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TorusLaurent is immutable")

    @classmethod
    def theta(cls, x, coeff=1):
        return cls(len(x), {tuple(x): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for x, c in other.terms.items():
            out[x] = out[x] + c if x in out else c
        return TorusLaurent(self.rank, out)

    def __neg__(self):
        return TorusLaurent(self.rank, {x: -c for x, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Scalar, Cyclotomic, int, Fraction)):
            s = Scalar.const(other)
            return TorusLaurent(self.rank, {x: c * s for x, c in self.terms.items()})
        out = {}
        for x, c in self.terms.items():
            for y, d in other.terms.items():
                z = tuple(a + b for a, b in zip(x, y))
                out[z] = out[z] + c * d if z in out else c * d
        return TorusLaurent(self.rank, out)

    __rmul__ = __mul__

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TorusLaurent):
            return NotImplemented
        return self.rank == other.rank and self.terms.keys() == other.terms.keys() and all(
            c == other.terms[x] for x, c in self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "TorusLaurent(0)"
        return " + ".join(f"({c})*theta{list(x)}" for x, c in sorted(self.terms.items()))


def _string_key(x, alpha, i0):
    t = x[i0] // alpha[i0]
    return tuple(a - t * b for a, b in zip(x, alpha)), t


def laurent_divide_geometric(numer: TorusLaurent, alpha) -> TorusLaurent:
    """Exact quotient ``numer / (1 - theta_{-alpha})``.

    A numerator ``theta_x - theta_{x - n*alpha}`` is handled by the closed
    geometric sum; anything else by splitting into alpha-strings and summing
    tails. Raises :class:`NotDivisible` on a nonzero remainder.
    """
    alpha = tuple(alpha)
    if not any(alpha):
        raise ValueError("alpha must be nonzero")
    if numer.is_zero():
        return TorusLaurent(numer.rank)
    i0 = next(i for i, a in enumerate(alpha) if a)
    if len(numer.terms) == 2:
        (x, c), (y, d) = numer.terms.items()
        if c == -d:
            diff = [a - b for a, b in zip(x, y)]
            if diff[i0] % alpha[i0] == 0:
                n = diff[i0] // alpha[i0]
                if all(dv == n * av for dv, av in zip(diff, alpha)):
                    if n < 0:
                        x, y, c, n = y, x, d, -n
                    # c*(theta_x - theta_{x - n alpha}) / (1 - theta_{-alpha})
                    pts = [tuple(a - k * b for a, b in zip(x, alpha)) for k in range(n)]
                    return TorusLaurent(numer.rank, {p: c for p in pts})
    strings = {}
    for x, c in numer.terms.items():
        key, t = _string_key(x, alpha, i0)
        strings.setdefault(key, {})[t] = c
    out = {}
    for key, coeffs in strings.items():
        lo, hi = min(coeffs), max(coeffs)
        tail = Scalar()
        for t in range(hi, lo - 1, -1):
            if t in coeffs:
                tail = tail + coeffs[t]
            if tail:
                out[tuple(a + t * b for a, b in zip(key, alpha))] = tail
        if tail:
            raise NotDivisible(f"nonzero remainder along the string through {key}")
    return TorusLaurent(numer.rank, out)
