from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from exactquant.scalars import (Laurent, QPoly, RationalFunction, TruncationError, hbar_reflect, poly_gcd,
                                render_scalar)
from strategies import fractions, laurents

H = Laurent.hbar(1)


def test_hbar_powers():
    assert H * Laurent.hbar(-1) == Laurent.const(1)
    assert (H ** 3).terms() == {3: 1}
    assert Laurent.hbar(-1).inverse() == H


def test_geometric_inverse_truncates():
    a = Laurent({0: 1, 1: -1})
    b = a.inverse(order=5)
    assert b.order == 5
    assert b.terms() == {k: 1 for k in range(5)}
    assert a * b == Laurent.const(1, order=5)


def test_inverse_of_non_monomial_needs_order():
    with pytest.raises(Exception):
        Laurent({0: 1, 1: 1}).inverse()


def test_truncated_coefficient_access():
    x = Laurent({0: 1, 2: 5}, order=3)
    assert x.coeff(2) == 5
    with pytest.raises(TruncationError):
        x.coeff(3)


def test_truncation_propagates_through_product():
    x = Laurent({0: 1}, order=3)
    assert (x * H).order == 4
    assert (x + Laurent.const(1)).order == 3


def test_render():
    assert render_scalar(Laurent({-1: Fraction(1, 2), 2: 3})) == "1/2*hbar^-1 + 3*hbar^2"
    assert render_scalar(Fraction(-2, 3)) == "-2/3"


def test_reflect_and_euler():
    x = Laurent({-1: 2, 0: 1, 3: 1})
    assert x.reflect() == Laurent({-1: -2, 0: 1, 3: -1})
    assert x.euler() == Laurent({-1: -2, 3: 3})
    assert hbar_reflect(Fraction(3)) == 3


@given(laurents, laurents, laurents)
def test_laurent_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == Laurent()


@given(laurents, laurents)
def test_euler_is_a_derivation(a, b):
    assert (a * b).euler() == a.euler() * b + a * b.euler()


@given(laurents, laurents)
def test_reflect_is_an_involutive_homomorphism(a, b):
    assert (a * b).reflect() == a.reflect() * b.reflect()
    assert a.reflect().reflect() == a


def test_qpoly_division_and_gcd():
    x = QPoly.x()
    p = (x - 1) * (x + 2) * (x + 2)
    q = (x + 2) * (x - 3)
    assert poly_gcd(p, q) == (x + 2).monic()
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


@given(st.lists(fractions, max_size=4), st.lists(fractions, min_size=1, max_size=4).filter(any))
def test_qpoly_divmod_identity(a, b):
    a, b = QPoly(a), QPoly(b)
    quo, rem = divmod(a, b)
    assert quo * b + rem == a
    assert not rem or rem.degree < b.degree


def test_rational_function_reduces():
    x = QPoly.x()
    r = RationalFunction((x + 1) * x, x * x)
    assert r == RationalFunction(x + 1, x)
    assert r(Fraction(2)) == Fraction(3, 2)
    assert r.reflect()(Fraction(2)) == Fraction(1, 2)


def test_rational_function_from_laurent():
    r = RationalFunction.from_laurent(Laurent({-1: 1, 1: 1}))
    assert r(Fraction(2)) == Fraction(5, 2)
    with pytest.raises(Exception):
        RationalFunction.from_laurent(Laurent({0: 1}, order=2))


@given(st.lists(fractions, max_size=3), st.lists(fractions, min_size=1, max_size=3).filter(any),
       st.lists(fractions, max_size=3), st.lists(fractions, min_size=1, max_size=3).filter(any))
def test_rational_function_field(a, b, c, d):
    r = RationalFunction(QPoly(a), QPoly(b))
    s = RationalFunction(QPoly(c), QPoly(d))
    assert (r + s) - s == r
    if s:
        assert (r * s) / s == r
