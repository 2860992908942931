import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from exactquant.dgla import sigma
from exactquant.graded import GradedAlgebra, GradedElement
from exactquant.laws import schouten_laws
from exactquant.polyvectors import (CdgaModel, DeRham, PolyvectorDGLA, standard_pair, calibration, mu_contract,
                                    nondegenerate, nu_map)
from exactquant.sampling import random_element


def test_shifted_degrees_and_weights():
    base, pol, dr, omega, pi = standard_pair(1)
    assert pol.degree(pol.gen("y1")) == 0
    assert pol.degree(pol.xi("y1")) == 0
    assert pol.degree(pol.xi("eta1")) == 1 - 0  # xi_eta sits in algebra degree 1, L-degree 1
    assert pol.degree(pi) == 1
    assert set(pol.weight_components(pi)) == {1}
    assert set(pol.weight_components(pol.gen("y1"))) == {-1}


def test_bracket_with_bivector():
    _, pol, _, _, pi = standard_pair(1)
    y = pol.gen("y1")
    assert pol.bracket(y, pi) == -pol.xi("eta1")
    assert pol.bracket(pi, y) == pol.xi("eta1")
    assert not pol.bracket(pi, pi)


def test_vector_bracket_matches_lie_bracket_oracle():
    """n = 0: [[u, v], f] against u(v(f)) - v(u(f)) computed from partial derivatives only."""
    names = ["x1", "x2"]
    base = CdgaModel([(n, 0) for n in names])
    pol = PolyvectorDGLA(base, 0)
    A = GradedAlgebra([(n, 0) for n in names])
    rng = random.Random(5)
    for _ in range(20):
        u = {n: random_element(A, rng, degree=0, max_total=2) for n in names}
        v = {n: random_element(A, rng, degree=0, max_total=2) for n in names}
        f = random_element(A, rng, degree=0, max_total=3)

        def act(w, g):
            out = A.zero()
            for n in names:
                out = out + w[n] * g.derivative(n)
            return out

        expected = act(u, act(v, f)) - act(v, act(u, f))
        U, V = pol.vector({n: pol.function(c) for n, c in u.items()}), pol.vector({n: pol.function(c) for n, c in v.items()})
        got = pol.bracket(pol.bracket(U, V), pol.function(f))
        assert got == pol.function(expected)


def test_calibration_sign_is_fixed_once():
    assert calibration() == -1


@pytest.mark.parametrize("m", [1, 2, 3])
def test_mu_equals_sigma_on_standard_pair(m):
    _, pol, dr, omega, pi = standard_pair(m)
    assert mu_contract(dr, pol, omega, pi) == sigma(pol, pi)


def test_nu_on_generators():
    _, pol, dr, omega, pi = standard_pair(1)
    assert nu_map(dr, pol, omega, pi, pol.xi("y1")) == pol.xi("y1")
    assert nu_map(dr, pol, omega, pi, pol.xi("eta1")) == pol.xi("eta1")
    assert nu_map(dr, pol, omega, pi, pi) == pi * 2


def test_nondegeneracy():
    _, pol, _, _, pi = standard_pair(2)
    assert nondegenerate(pol, pi)
    assert not nondegenerate(pol, pol.gen("y1") * pi)
    assert not nondegenerate(pol, pol.alg.zero())


def test_de_rham_relations():
    y = GradedAlgebra([("y", 0), ("eta", -1)])
    base = CdgaModel([("y", 0), ("eta", -1)], {"eta": y.gen("y") ** 2})
    dr = DeRham(base)
    assert not any(dr.check_relations().values())
    x = dr.function(y.gen("y") * y.gen("eta"))
    assert not dr.d(dr.d(x))
    assert not dr.delta(dr.delta(x))
    assert dr.delta(dr.d(x)) == -dr.d(dr.delta(x))


@pytest.mark.parametrize("n", [-1, 0, 1, 2])
def test_schouten_laws_on_shifted_cotangent(n):
    gens = [("x1", 0), ("x2", 0), ("p1", n), ("p2", n)]
    pol = PolyvectorDGLA(CdgaModel(gens), n)
    for c in schouten_laws(pol, random.Random(n), samples=40):
        assert c.passed, (c.name, c.residual_text())


class _FlippedSecondHalf(PolyvectorDGLA):
    def bracket(self, F, G):
        out = self.alg.zero()
        for name, pg in zip(self.names, self._var_par):
            xn = "xi_" + name
            out = out + F.derivative(xn, "right") * G.derivative(name, "left")
            t = F.derivative(name, "right") * G.derivative(xn, "left")
            out = out + t if (pg * (self.s + 1)) % 2 == 0 else out - t
        return out


def test_law_checkers_catch_a_sign_error():
    base, _, _, _, _ = standard_pair(2)
    bad = _FlippedSecondHalf(base, -1)
    failed = {c.name.split(" (")[0] for c in schouten_laws(bad, random.Random(0), samples=50) if not c.passed}
    assert {"graded antisymmetry", "graded Jacobi"} <= failed
