import random
from fractions import Fraction

import pytest

from exactquant.dcrit import build_crit, shifted_cotangent_triple, standard_bivector, strict_poisson_with_derivation
from exactquant.laws import random_rees_element, rees_laws
from exactquant.polyvectors import PolyvectorDGLA
from exactquant.rees import (DivisibilityError, components, expand_formal_derivation, hbar_scaling, in_hbar_rees,
                             in_rees, in_tilde_F, is_star_fixed, parity_fixed, star_involution, strict_triple_check)
from exactquant.scalars import Laurent

H = Laurent.hbar(1)


@pytest.fixture(scope="module")
def setup():
    model = build_crit(1, {(2,): Fraction(1, 2)}, ["t"])
    pol = PolyvectorDGLA(model.cdga, -1)
    return model, pol, standard_bivector(model, pol)


def test_hbar_scaling_of_basic_elements(setup):
    model, pol, pi = setup
    f = pol.function(model.f)
    assert hbar_scaling(pol, pi) == pi * H
    assert hbar_scaling(pol, f) == f * Laurent.hbar(-1)
    assert hbar_scaling(pol, pi + f) == pi * H + f * Laurent.hbar(-1)


def test_star_on_basic_elements(setup):
    model, pol, pi = setup
    f = pol.function(model.f)
    assert star_involution(pol, pi * H) == pi * H
    assert star_involution(pol, pi * H * H) == -(pi * H * H)
    assert star_involution(pol, f * Laurent.hbar(-1)) == f * Laurent.hbar(-1)


def test_components_and_membership(setup):
    _, pol, pi = setup
    x = pi * H * H + pol.xi("t")
    assert set(components(pol, x)) == {(1, 2), (0, 0)}
    assert in_rees(pol, x)
    assert not in_rees(pol, pi)


def test_filtration_examples(setup):
    _, pol, pi = setup
    x = pi * H * H
    assert in_tilde_F(pol, x, 2) and in_hbar_rees(pol, x)
    assert in_tilde_F(pol, pi * H, 1)
    v = pol.xi("t")
    # the weight-0 vector itself is in F~^1 but not F~^2, and not divisible by hbar in the Rees module
    assert in_tilde_F(pol, v, 1) and not in_tilde_F(pol, v, 2)
    assert not in_hbar_rees(pol, v)
    # multiplying by hbar moves it one step: hbar v lies in F~^2 cap hbar L~
    assert in_tilde_F(pol, v * H, 2) and in_hbar_rees(pol, v * H)


def test_star_fixed_iff_parity(setup):
    _, pol, _ = setup
    rng = random.Random(3)
    for _ in range(100):
        x = random_rees_element(pol, rng)
        assert is_star_fixed(pol, x) == parity_fixed(pol, x)


def test_rees_laws_pass():
    pol = PolyvectorDGLA(build_crit(2, {(1, 1): 1}).cdga, -1)
    for c in rees_laws(pol, random.Random(1), samples=60, filtration_samples=60):
        assert c.passed, (c.name, c.residual_text())


def test_strict_triple_checks():
    for m in (1, 2, 3):
        for n in (-1, 0, 1, 2):
            pol, pi, D0, D1, c, defects = shifted_cotangent_triple(m, n)
            assert not any(defects), (m, n)
            assert c == -1
            third = strict_triple_check(pol, pi, D0, pol.alg.zero())[2]
            assert third == pi


def test_expansion_of_crit_triple():
    model = build_crit(1, {(2,): Fraction(1, 2)}, ["t"])
    t = strict_poisson_with_derivation(model)
    exp = expand_formal_derivation(t.pol, t.pi, t.D)
    assert exp.passed
    assert exp.arities == {0: (-1, -1), 1: (0, 0)}


def test_expansion_of_zero_is_the_euler_operator_alone():
    model = build_crit(1, 0)
    pol = PolyvectorDGLA(model.cdga, -1)
    exp = expand_formal_derivation(pol, pol.alg.zero(), pol.alg.zero())
    assert exp.passed and not exp.D_h.terms


def test_arity_two_lands_in_hbar_one():
    model = build_crit(1, 0)
    pol = PolyvectorDGLA(model.cdga, -1)
    pi = standard_bivector(model, pol)
    exp = expand_formal_derivation(pol, pi, pi)
    assert exp.arities[2] == (1, 1)
    assert not exp.passed


def test_divisibility_violation_is_reported():
    model = build_crit(1, 0)
    pol = PolyvectorDGLA(model.cdga, -1)
    with pytest.raises(DivisibilityError) as e:
        expand_formal_derivation(pol, pol.alg.zero(), pol.xi("y1") * Laurent.hbar(-1))
    assert (e.value.arity, e.value.order) == (1, -1)
