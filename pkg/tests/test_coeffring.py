from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckesharp.coeffring import (
    Cyclotomic,
    NotDivisible,
    QmodZ,
    Scalar,
    TorusLaurent,
    cyclotomic_polynomial,
    laurent_divide_geometric,
)
from oracles import eval_cyclotomic, eval_scalar, root_of_unity

VS = (1.3, 0.7, 1.9)


# -- QmodZ ----------------------------------------------------------------------------

def test_qmodz_reduces_into_unit_interval():
    assert QmodZ(Fraction(5, 4)).value == Fraction(1, 4)
    assert QmodZ(Fraction(-1, 4)).value == Fraction(3, 4)
    assert QmodZ("3/2") == QmodZ("1/2")
    assert QmodZ(Fraction(1, 3)) + Fraction(2, 3) == 0
    assert QmodZ(Fraction(3, 8)).order == 8


def test_qmodz_is_immutable():
    x = QmodZ(Fraction(1, 2))
    with pytest.raises(AttributeError):
        x.value = 0


# -- Cyclotomic -------------------------------------------------------------------------

def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_fourth_root_of_unity_squares_to_minus_one():
    i = Cyclotomic.root_of_unity(Fraction(1, 4))
    assert i * i == Cyclotomic.rational(-1, 4)


def test_root_of_unity_needs_dividing_conductor():
    with pytest.raises(ValueError):
        Cyclotomic.root_of_unity(Fraction(1, 3), 4)


def test_cyclotomic_inverse():
    z = Cyclotomic.root_of_unity(Fraction(1, 5)) + Cyclotomic.rational(2, 5)
    assert z * z.inverse() == Cyclotomic.rational(1, 5)
    with pytest.raises(ZeroDivisionError):
        Cyclotomic(5).inverse()


@given(st.integers(1, 24), st.data())
def test_root_of_unity_embedding_is_a_homomorphism(n, data):
    a = Fraction(data.draw(st.integers(0, n - 1)), n)
    b = Fraction(data.draw(st.integers(0, n - 1)), n)
    za = Cyclotomic.root_of_unity(a, n)
    zb = Cyclotomic.root_of_unity(b, n)
    assert za * zb == Cyclotomic.root_of_unity(QmodZ(a + b), n)
    assert abs(eval_cyclotomic(za) - root_of_unity(a)) < 1e-9


def test_embedding_homomorphism_exhaustive_up_to_24():
    for n in range(1, 25):
        roots = [Cyclotomic.root_of_unity(Fraction(k, n), n) for k in range(n)]
        for a in range(n):
            for b in range(n):
                assert roots[a] * roots[b] == roots[(a + b) % n]


# -- Scalar ----------------------------------------------------------------------------

def test_cancellation():
    assert (Scalar.q(0) - 1) + 1 == Scalar.q(0)


def test_half_parameter_squares_to_q():
    assert Scalar.v(0) * Scalar.v(0) == Scalar.q(0)
    assert Scalar.v(1, 3) * Scalar.v(1, -1) == Scalar.q(1)


def test_root_of_unity_cancels_parameters():
    z = Scalar.root_of_unity(Fraction(1, 4))
    assert (z * Scalar.q(0)) * (z * Scalar.q(0, -1)) == -1


def test_zero_is_empty():
    s = Scalar.q(0) - Scalar.q(0)
    assert s.is_zero() and not s and s == Scalar.zero()
    assert str(s) == "0"


def test_scalars_are_immutable_and_unhashable():
    s = Scalar.v(0)
    with pytest.raises(AttributeError):
        s.terms = {}
    with pytest.raises(TypeError):
        hash(s)


def test_monomial_inverse():
    s = Scalar.monomial((1, -2), Cyclotomic.root_of_unity(Fraction(1, 3)))
    assert s * s ** -1 == 1
    with pytest.raises(NotDivisible):
        (Scalar.v(0) + 1) ** -1


def test_conductors_unify_by_lcm():
    a = Scalar.root_of_unity(Fraction(1, 4))
    b = Scalar.root_of_unity(Fraction(1, 6))
    c = a * b
    assert c.conductor == 12
    assert c == Scalar.root_of_unity(Fraction(5, 12))


scalars = st.builds(
    lambda terms: sum((Scalar.monomial(e, Cyclotomic.root_of_unity(Fraction(k, 12)) * Fraction(n, 3))
                       for e, k, n in terms), Scalar.zero()),
    st.lists(st.tuples(st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
                       st.integers(0, 11), st.integers(-4, 4)), max_size=4))


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0 and a * 1 == a and a + 0 == a


@given(scalars, scalars)
def test_arithmetic_matches_numeric_evaluation(a, b):
    for lhs, want in ((a + b, eval_scalar(a, VS) + eval_scalar(b, VS)),
                      (a * b, eval_scalar(a, VS) * eval_scalar(b, VS)),
                      (a - b, eval_scalar(a, VS) - eval_scalar(b, VS))):
        assert abs(eval_scalar(lhs, VS) - want) < 1e-8 * (1 + abs(want))


# -- TorusLaurent and geometric division -------------------------------------------------------

def th(*x):
    return TorusLaurent.theta(x)


def test_divide_single_step():
    assert laurent_divide_geometric(th(1, 0) - th(0, 1), (1, -1)) == th(1, 0)


def test_divide_zero():
    assert laurent_divide_geometric(TorusLaurent(2), (1, -1)).is_zero()


def test_divide_two_steps():
    got = laurent_divide_geometric(th(2, 0) - th(0, 2), (1, -1))
    assert got == th(2, 0) + th(1, 1)
    assert got * (th(0, 0) - th(-1, 1)) == th(2, 0) - th(0, 2)


def test_divide_negative_string():
    # theta_x - theta_{s x} with x - s x = -2 alpha
    got = laurent_divide_geometric(th(0, 2) - th(2, 0), (1, -1))
    assert got == -(th(2, 0) + th(1, 1))


def test_divide_rejects_remainder():
    with pytest.raises(NotDivisible):
        laurent_divide_geometric(th(1, 0), (1, -1))
    with pytest.raises(ValueError):
        laurent_divide_geometric(th(1, 0), (0, 0))


laurents = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
    st.integers(-5, 5).filter(bool), max_size=8)
alphas = st.sampled_from([(1, -1, 0), (0, 1, -1), (1, 0, -1), (2, -1, 0)])


@given(laurents, alphas)
def test_divide_inverts_multiplication(terms, alpha):
    f = TorusLaurent(3, terms)
    denom = th(0, 0, 0) - TorusLaurent.theta(tuple(-a for a in alpha))
    assert laurent_divide_geometric(f * denom, alpha) == f
