"""Automorphisms of the Bernstein-basis Hecke algebra given by a block
permutation together with a torsion translation:

    alpha(theta_x T_v) = zeta(-chi . x) * theta_{w x} * T_{w v w^-1}
"""

from __future__ import annotations

from fractions import Fraction

from ..coeffring import QmodZ, Scalar
from ..errors import InvalidAutomorphism, NotAGroupAction
from ..finstruct import BlockPermutation, cycle_string, perm_compose, perm_inverse
from .algebra import HeckeElement, RootDatumGL


class HeckeAutomorphism:
    __slots__ = ("datum", "w", "chi", "_winv", "_cache")

    def __init__(self, datum: RootDatumGL, w=None, chi=None):
        r = datum.rank
        if w is None:
            w = tuple(range(r))
        if isinstance(w, BlockPermutation):
            w = w.mapping
        w = tuple(w)
        chi = tuple(QmodZ(c) for c in (chi if chi is not None else [0] * r))
        if len(w) != r or sorted(w) != list(range(r)):
            raise InvalidAutomorphism(f"{w} is not a permutation of {r} coordinates")
        if len(chi) != r:
            raise InvalidAutomorphism(f"translation needs {r} coordinates")
        for i, (s, e) in enumerate(datum.positions):
            img = [w[k] for k in range(s, s + e)]
            j = datum.block_of[img[0]]
            ts, te = datum.positions[j]
            if sorted(img) != list(range(ts, ts + te)):
                raise InvalidAutomorphism(f"{cycle_string(w)} does not map block {i + 1} onto a block")
            if any(a > b for a, b in zip(img, img[1:])):
                raise InvalidAutomorphism(
                    f"{cycle_string(w)} sends a positive root of block {i + 1} to a negative root")
            if datum.blocks[i][1] != datum.blocks[j][1]:
                raise InvalidAutomorphism(
                    f"{cycle_string(w)} sends block {i + 1} (q{datum.blocks[i][1]}) "
                    f"to block {j + 1} (q{datum.blocks[j][1]}): parameters differ")
            if len(set(chi[s:s + e])) > 1:
                raise InvalidAutomorphism(f"translation is not constant on block {i + 1}")
        object.__setattr__(self, "datum", datum)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "chi", chi)
        object.__setattr__(self, "_winv", perm_inverse(w))
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("HeckeAutomorphism is immutable")

    def pairing(self, x) -> QmodZ:
        return QmodZ(sum((c.value * a for c, a in zip(self.chi, x)), Fraction(0)))

    def __call__(self, f: HeckeElement) -> HeckeElement:
        if f.datum != self.datum:
            raise InvalidAutomorphism("element lives in a different Hecke algebra")
        d = self.datum
        out = {}
        for (x, v), c in f.terms.items():
            wv = self._cache.get(v)
            if wv is None:
                wv = perm_compose(perm_compose(self.w, v), self._winv)
                self._cache[v] = wv
            zeta = -self.pairing(x)
            coeff = c if zeta == 0 else c * Scalar.root_of_unity(zeta)
            out[(d.act(self.w, x), wv)] = coeff
        return HeckeElement(d, out)

    def compose(self, other: "HeckeAutomorphism") -> "HeckeAutomorphism":
        """self o other."""
        w = perm_compose(self.w, other.w)
        chi = tuple(other.chi[j] + self.chi[other.w[j]] for j in range(self.datum.rank))
        return HeckeAutomorphism(self.datum, w, chi)

    __mul__ = compose

    def inverse(self) -> "HeckeAutomorphism":
        winv = self._winv
        chi = tuple(-self.chi[self.w[j]] for j in range(self.datum.rank))
        return HeckeAutomorphism(self.datum, winv, chi)

    def is_identity(self) -> bool:
        return all(k == wk for k, wk in enumerate(self.w)) and all(c == 0 for c in self.chi)

    def __eq__(self, other):
        return isinstance(other, HeckeAutomorphism) and self.datum == other.datum and \
            self.w == other.w and self.chi == other.chi

    def __hash__(self):
        return hash((self.w, self.chi))

    def __repr__(self):
        return f"HeckeAutomorphism(w={cycle_string(self.w)}, chi=[{', '.join(map(str, self.chi))}])"


def apply_automorphism(phi: HeckeAutomorphism, f: HeckeElement) -> HeckeElement:
    return phi(f)


def translation_defect(composite: HeckeAutomorphism, declared: HeckeAutomorphism):
    """Translation difference composite - declared, or None when the
    permutations differ. A zero vector means the two agree exactly."""
    if composite.w != declared.w:
        return None
    return tuple(a - b for a, b in zip(composite.chi, declared.chi))


def check_closed(autos) -> None:
    """Raise NotAGroupAction unless the list is closed under composition."""
    autos = list(autos)
    have = set(autos)
    for a in autos:
        for b in autos:
            c = a * b
            if c not in have:
                near = next((x for x in autos if x.w == c.w), None)
                if near is not None:
                    diff = translation_defect(c, near)
                    raise NotAGroupAction(
                        f"{a!r} o {b!r} differs from {near!r} by the translation "
                        f"[{', '.join(map(str, diff))}]")
                raise NotAGroupAction(f"{a!r} o {b!r} = {c!r} is not in the set")
