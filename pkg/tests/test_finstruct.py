from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckesharp.errors import BlockMismatch, InvalidCocycle
from heckesharp.finstruct import (
    BlockPermutation,
    FinAbGroup,
    TwoCocycle,
    abelian_groups_up_to,
    blocks_from_sizes,
    commutator_form,
    dual_group,
    int_det,
    integer_kernel,
    is_coboundary,
    is_perfect_pairing,
    perm_from_cycles,
    perm_to_cycles,
    snf,
    snf_diagonal,
    twisted_algebra_structure,
)
from oracles import snf_diagonal_oracle, twisted_centre_dimension, twisted_is_commutative

K4 = FinAbGroup([2, 2])


def _check_snf(m):
    m = np.array(m, dtype=object)
    u, d, v = snf(m)
    assert (u.dot(d).dot(v) == m).all()
    assert abs(int_det(u)) == 1 and abs(int_det(v)) == 1
    diag = [d[i, i] for i in range(min(d.shape))]
    off = [d[i, j] for i in range(d.shape[0]) for j in range(d.shape[1]) if i != j]
    assert not any(off)
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    return diag


# -- Smith normal form -----------------------------------------------------------------

def test_snf_identity():
    u, d, v = snf(np.eye(3, dtype=int))
    for x in (u, d, v):
        assert (x == np.eye(3, dtype=int)).all()


def test_snf_coprime_diagonal():
    assert _check_snf([[2, 0], [0, 3]]) == [1, 6]


def test_snf_zero():
    assert _check_snf([[0, 0, 0], [0, 0, 0]]) == [0, 0]


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_snf_properties(rows, cols, data):
    m = data.draw(st.lists(st.lists(st.integers(-9, 9), min_size=cols, max_size=cols),
                           min_size=rows, max_size=rows))
    diag = _check_snf(m)
    assert diag == snf_diagonal_oracle(m)


def test_integer_kernel_is_saturated():
    kern = integer_kernel(np.array([[2, 4, 6]], dtype=object))
    assert len(kern) == 2
    assert snf_diagonal(np.array(kern, dtype=object)) == [1, 1]
    for k in kern:
        assert 2 * k[0] + 4 * k[1] + 6 * k[2] == 0


# -- finite abelian groups -------------------------------------------------------------

def test_group_basics():
    g = FinAbGroup([4, 6])
    assert g.order == 24
    assert g.invariant_factors == [2, 12]
    assert str(g) == "Z/2 x Z/12"
    assert g.add((3, 5), (1, 1)) == (0, 0)
    assert g.element_order((2, 3)) == 2
    assert len(g.span([(1, 0)])) == 4
    assert FinAbGroup([]).order == 1 and str(FinAbGroup([])) == "1"
    assert g.quotient_invariants([(1, 0)]) == [6]


def test_from_invariant_factors_checks_divisibility():
    with pytest.raises(ValueError):
        FinAbGroup.from_invariant_factors([4, 6])
    assert FinAbGroup.from_invariant_factors([2, 4]).order == 8


def test_abelian_groups_up_to_16():
    groups = abelian_groups_up_to(16)
    # numbers of abelian groups of order 1..16
    counts = [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]
    assert len(groups) == sum(counts)
    for n in range(1, 17):
        assert sum(1 for g in groups if g.order == n) == counts[n - 1]


# -- duality ------------------------------------------------------------------------------

@pytest.mark.parametrize("moduli", [[2, 2], [10], [2, 4]])
def test_dual_group(moduli):
    g = FinAbGroup(moduli)
    dual, pairing = dual_group(g)
    assert dual.invariant_factors == g.invariant_factors
    assert is_perfect_pairing(g, dual, pairing)


def test_dual_pairing_on_klein_four():
    _, pairing = dual_group(K4)
    assert pairing((1, 0), (1, 0)) == Fraction(1, 2)
    assert pairing((1, 0), (0, 1)) == 0


def test_dual_pairing_perfect_by_brute_force():
    g = FinAbGroup([2, 4])
    dual, pairing = dual_group(g)
    table = {(a, b): pairing(a, b) for a in g.elements() for b in dual.elements()}
    assert len(table) == 64
    rows = {a: tuple(table[(a, b)] for b in dual.elements()) for a in g.elements()}
    assert len(set(rows.values())) == 8


# -- permutations -----------------------------------------------------------------------

def test_cycles_round_trip():
    w = perm_from_cycles([[1, 3, 5], [2, 4, 6]], 6)
    assert w == (2, 3, 4, 5, 0, 1)
    assert perm_to_cycles(w) == [[1, 3, 5], [2, 4, 6]]


def test_block_permutation_split():
    pos = blocks_from_sizes([2, 2, 2])
    bp = BlockPermutation(perm_from_cycles([[1, 4, 5, 2, 3, 6]], 6), pos)
    inner, rep = bp.split()
    assert rep.is_order_preserving()
    assert inner.within_blocks()
    assert bp.block_map == (1, 2, 0)
    with pytest.raises(BlockMismatch):
        BlockPermutation(perm_from_cycles([[1, 3]], 3), blocks_from_sizes([2, 1]))


# -- cocycles -------------------------------------------------------------------------------

def test_trivial_cocycle():
    k = TwoCocycle.trivial(K4)
    assert all(v == 0 for v in commutator_form(k).values())
    assert is_coboundary(k)
    alg = twisted_algebra_structure(K4, k)
    assert set(alg.regular_subgroup) == set(K4.elements())
    assert (alg.irrep_dimension, alg.irrep_count) == (1, 4)


def test_nonsplit_cocycle_on_klein_four():
    k = TwoCocycle(K4, {((1, 0), (0, 1)): Fraction(1, 2), ((1, 0), (1, 1)): Fraction(1, 2),
                        ((1, 1), (0, 1)): Fraction(1, 2), ((1, 1), (1, 1)): Fraction(1, 2)})
    beta = commutator_form(k)
    assert beta[((1, 0), (0, 1))] == Fraction(1, 2)
    assert not is_coboundary(k)
    alg = twisted_algebra_structure(K4, k)
    assert alg.regular_subgroup == ((0, 0),)
    assert (alg.irrep_dimension, alg.irrep_count) == (2, 1)
    assert not alg.is_commutative


def test_bilinear_cocycle_matches_stated_table():
    k = TwoCocycle.from_bilinear(K4, {(0, 1): 1})
    assert k((1, 0), (0, 1)) == Fraction(1, 2)
    assert k((0, 1), (1, 0)) == 0
    assert commutator_form(k)[((1, 0), (0, 1))] == Fraction(1, 2)


@pytest.mark.parametrize("n", [2, 5, 10])
def test_cyclic_groups_have_only_coboundaries(n):
    g = FinAbGroup([n])
    rng = np.random.default_rng(n)
    for _ in range(5):
        k = TwoCocycle.random(g, rng)
        assert all(v == 0 for v in commutator_form(k).values())
        assert is_coboundary(k)


def test_trivial_group():
    g = FinAbGroup([])
    alg = twisted_algebra_structure(g, TwoCocycle.trivial(g))
    assert (alg.irrep_dimension, alg.irrep_count) == (1, 1)


def test_invalid_cocycle_names_triple():
    with pytest.raises(InvalidCocycle, match="triple"):
        TwoCocycle(K4, {((1, 0), (0, 1)): Fraction(1, 2)} | {((1, 0), (1, 0)): Fraction(1, 4)})
    with pytest.raises(InvalidCocycle, match="normalized"):
        TwoCocycle(K4, {((0, 0), (1, 0)): Fraction(1, 2)})


def test_cocycle_must_live_on_the_group():
    with pytest.raises(InvalidCocycle):
        twisted_algebra_structure(FinAbGroup([4]), TwoCocycle.trivial(K4))


small_groups = st.sampled_from(abelian_groups_up_to(16))


@given(small_groups, st.integers(0, 2 ** 32 - 1))
def test_commutator_form_is_bilinear(group, seed):
    k = TwoCocycle.random(group, np.random.default_rng(seed))
    beta = commutator_form(k)
    els = group.elements()
    for g in els:
        for g2 in els:
            for h in els:
                assert beta[(group.add(g, g2), h)] == beta[(g, h)] + beta[(g2, h)]
        assert beta[(g, g)] == 0


@given(small_groups, st.integers(0, 2 ** 32 - 1))
def test_dimension_law_against_regular_representation(group, seed):
    k = TwoCocycle.random(group, np.random.default_rng(seed))
    alg = twisted_algebra_structure(group, k)
    assert group.order == alg.irrep_count * alg.irrep_dimension ** 2
    assert twisted_centre_dimension(group, k) == alg.irrep_count
    assert is_coboundary(k) == (alg.irrep_dimension == 1) == twisted_is_commutative(group, k)
