from fractions import Fraction

import pytest
from hypothesis import given

from exactquant.graded import GradedAlgebra, derivation, embed, morphism
from exactquant.scalars import Laurent
from strategies import elements, homogeneous

ALG = GradedAlgebra([("x", 0), ("y", 0), ("e", -1), ("f", 1), ("g", 2)])


def test_odd_generators_square_to_zero():
    e, f = ALG["e"], ALG["f"]
    assert not (e * e)
    assert e * f == -(f * e)


def test_koszul_sign_of_reordering():
    e, f, x = ALG["e"], ALG["f"], ALG["x"]
    assert (f * x * e) == -(e * f * x)
    assert (ALG["g"] * e) == e * ALG["g"]


def test_render_is_canonical():
    x, e = ALG["x"], ALG["e"]
    a = e * x * Fraction(3, 2) + x * x - ALG.one()
    assert a.render() == (x * x - ALG.one() + x * e * Fraction(3, 2)).render()
    assert ALG.zero().render() == "0"


def test_laurent_coefficients():
    x = ALG["x"]
    a = x * Laurent.hbar(-1) + x * Laurent.hbar(1)
    assert (a * Laurent.hbar(1)) == x + x * Laurent.hbar(2)


def test_left_and_right_derivatives_of_odd_product():
    e, f = ALG["e"], ALG["f"]
    ef = e * f
    assert ef.derivative("e", "left") == f
    assert ef.derivative("e", "right") == -f
    assert ef.derivative("f", "right") == e


@given(homogeneous(ALG), homogeneous(ALG))
def test_graded_commutativity(a, b):
    s = -1 if (a.degree * b.degree) % 2 else 1
    assert a * b == b * a * s


@given(elements(ALG), elements(ALG), elements(ALG))
def test_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(homogeneous(ALG), homogeneous(ALG))
def test_left_derivative_leibniz(a, b):
    for name in ("x", "e", "f"):
        p = ALG.parity_of(name)
        s = -1 if (p * a.degree) % 2 else 1
        assert (a * b).derivative(name) == a.derivative(name) * b + a * b.derivative(name) * s


@given(homogeneous(ALG), homogeneous(ALG))
def test_odd_derivation_is_graded_leibniz(a, b):
    D = derivation(ALG, {"x": ALG["e"] * ALG["y"], "f": ALG["x"] * ALG["y"], "g": ALG["f"] * ALG["x"]}, -1)
    s = -1 if a.degree % 2 else 1
    assert D(a * b) == D(a) * b + a * D(b) * s


def test_derivation_rejects_wrong_degree():
    with pytest.raises(Exception):
        derivation(ALG, {"x": ALG["x"]}, 1)


def test_morphism_and_embedding():
    small = GradedAlgebra([("x", 0), ("e", -1)])
    a = small["x"] * small["e"]
    assert embed(a, ALG) == ALG["x"] * ALG["e"]
    phi = morphism(small, ALG, {"x": ALG["y"] + ALG.one(), "e": ALG["e"]})
    assert phi(a) == (ALG["y"] + ALG.one()) * ALG["e"]
