import random
from fractions import Fraction

import pytest

from exactquant.dcrit import (CRIT_D0_CONSTANT, CRIT_D1_CONSTANT, anti_involution_checks, build_crit,
                              canonical_exact_structure, canonical_quantisation, koszul_cohomology, quad_regression,
                              strict_poisson_with_derivation, twisted_derham_cohomology, twisted_dmodule_action)
from exactquant.sampling import random_potential
from oracles import jacobian_dim_elimination, jacobian_dim_groebner

F = Fraction


def _failed(checks):
    return [(c.name, c.residual_text()) for c in checks if not c.passed]


def test_model_differential():
    model = build_crit(2, {(1, 1): 1, (3, 0): 1})
    y1, y2, e1, e2 = (model.alg.gen(n) for n in ("y1", "y2", "eta1", "eta2"))
    assert model.cdga.delta(e1) == y2 + y1 * y1 * 3
    assert model.cdga.delta(e2) == y1
    assert not model.cdga.delta(y1)
    assert list(build_crit(1, 0, ["t"]).etas) == ["tau"]


def test_quad_regression():
    rep = quad_regression()
    assert _failed(rep.checks) == []
    assert rep.values["ad_phi^3(D)"].render() == "0"


@pytest.mark.parametrize("m,f", [(1, {(2,): F(1, 2)}), (2, {(1, 1): 1}), (3, {(3, 0, 0): 1, (0, 1, 1): F(-2, 3)}),
                                 (2, {})])
def test_exact_structure_and_strict_triple(m, f):
    model = build_crit(m, f)
    assert _failed(canonical_exact_structure(model).checks) == []
    triple = strict_poisson_with_derivation(model)
    assert _failed(triple.checks) == []
    assert (triple.d0_constant, triple.d1_constant) == (CRIT_D0_CONSTANT, CRIT_D1_CONSTANT)


def test_perturbed_triple_fails():
    from exactquant.rees import strict_triple_check
    t = strict_poisson_with_derivation(build_crit(1, {(3,): 1}))
    d = strict_triple_check(t.pol, t.pi, t.d0 * 2, t.d1)
    assert d[1] and not d[0] and not d[2]


@pytest.mark.parametrize("seed", range(4))
def test_quantisation_identities_on_random_potentials(seed):
    rng = random.Random(seed)
    m = 1 + seed % 3
    model = build_crit(m, random_potential(m, rng))
    assert _failed(canonical_quantisation(model).checks) == []


@pytest.mark.parametrize("m", [1, 2, 3])
def test_anti_involution_on_crit_operators(m):
    assert _failed(anti_involution_checks(build_crit(m, 0))) == []


@pytest.mark.parametrize("m,f", [(1, {(3,): 1}), (2, {(2, 1): 1, (0, 2): F(1, 2)}), (1, {})])
def test_twisted_dmodule(m, f):
    rep = twisted_dmodule_action(m, f)
    assert _failed(rep.checks) == []


@pytest.mark.parametrize("m,f,names,expected", [
    (1, {}, ["t"], [1, 0]),
    (1, {(2,): F(1, 2)}, ["t"], [0, 1]),
    (1, {(3,): F(1, 3)}, ["t"], [0, 2]),
    (2, {(2, 0): 1, (0, 2): 1}, ["y1", "y2"], [0, 0, 1]),
])
def test_twisted_de_rham(m, f, names, expected):
    res = twisted_derham_cohomology(m, f, 6, names)
    assert res.dims == expected and res.stabilized


@pytest.mark.parametrize("m,f,names", [
    (1, {(2,): 1}, ["t"]),
    (1, {(3,): 1}, ["t"]),
    (2, {(2, 0): 1, (0, 2): 1}, ["y1", "y2"]),
    (2, {(3, 0): 1, (0, 2): 1}, ["y1", "y2"]),
    (2, {(2, 1): 1, (0, 3): 1}, ["y1", "y2"]),
])
def test_koszul_h0_matches_jacobian_ring(m, f, names):
    mu = jacobian_dim_groebner(f, names)
    assert mu == jacobian_dim_elimination(f, names, 6)
    res = koszul_cohomology(m, f, 6, names)
    assert res.stabilized
    assert res.dims[-1] == mu
    assert twisted_derham_cohomology(m, f, 4, names).dims[-1] == mu


# leading forms of the partials share a factor, so a naive degree truncation finds the Bezout bound 9
DEGENERATE = {(0, 1): F(1), (1, 0): F(3, 2), (2, 0): F(-1), (1, 3): F(-3, 2)}


def test_degenerate_leading_forms_give_global_milnor_number():
    names = ["y1", "y2"]
    mu = jacobian_dim_groebner(DEGENERATE, names)
    assert mu == 5
    assert koszul_cohomology(2, DEGENERATE, 4, names, gap=2).dims == [0, 0, 5]
    tw = twisted_derham_cohomology(2, DEGENERATE, 2, names, gap=2)
    assert tw.dims == [0, 0, 5] and tw.stabilized


@pytest.mark.parametrize("seed", range(3))
def test_koszul_h0_matches_groebner_on_random_potentials(seed):
    rng = random.Random(100 + seed)
    checked = 0
    while checked < 4:
        m = rng.choice([1, 2])
        f = random_potential(m, rng, 4, 4)
        names = [f"y{i}" for i in range(1, m + 1)]
        mu = jacobian_dim_groebner(f, names)
        if mu is None:
            continue
        res = koszul_cohomology(m, f, 6, names)
        assert res.dims == [0] * m + [mu], (f, res.dims, mu)
        checked += 1
