from fractions import Fraction

import pytest

from exactquant.dcrit import build_crit, standard_bivector, strict_poisson_with_derivation
from exactquant.dgla import (CoconeDGLA, CoconeElement, SeriesDoesNotTerminate, SimplicialForms, TensorForms,
                             Window, WindowOverflow, cocone_defect, conjugate, constant_extension, filtration_level,
                             mc_defect, sigma, simplicial_mc_check, toy_nilpotent_dgla)
from exactquant.graded import GradedAlgebra
from exactquant.laws import toy_path
from exactquant.operators import Operator
from exactquant.polyvectors import PolyvectorDGLA


def test_toy_dgla_mc_and_bracket():
    L = toy_nilpotent_dgla()
    assert L.bracket(L.vec(x=1), L.vec(a=1)) == L.vec(b=1)
    assert L.is_zero(mc_defect(L, L.vec(a=2, b=-1)))
    assert L.degree(L.vec(x=1)) == 0


def test_simplicial_path_is_mc_and_its_perturbation_is_not():
    L, T, X = toy_path()
    ok, defect = simplicial_mc_check(L, 1, X)
    assert ok and T.is_zero(defect)
    L, T, Y = toy_path(xi_scale=Fraction(2))
    ok, defect = simplicial_mc_check(L, 1, Y)
    assert not ok
    assert T.render(defect) == "(3*b)*dt1"


def test_faces_of_the_path_are_its_endpoints():
    L, T, X = toy_path()
    _, start = T.restrict(X, 1)
    _, end = T.restrict(X, 0)
    assert list(start.values()) == [L.vec(a=1)]
    assert list(end.values()) == [L.vec(a=1, b=3)]


def test_constant_extension_on_two_simplex():
    L = toy_nilpotent_dgla()
    T = TensorForms(L, SimplicialForms(2))
    ok, _ = simplicial_mc_check(L, 2, constant_extension(T, L.vec(a=1, b=5)))
    assert ok


def test_simplicial_forms_satisfy_barycentric_relation():
    F = SimplicialForms(2)
    total = F.t(0) + F.t(1) + F.t(2)
    assert total == F.alg.one()
    assert not (F.dt(0) + F.dt(1) + F.dt(2))
    assert F.d(F.t(1) * F.t(2)) == F.dt(1) * F.t(2) + F.t(1) * F.dt(2)


def test_polynomial_degree_window():
    L = toy_nilpotent_dgla()
    F = SimplicialForms(1, max_poly_degree=1)
    T = TensorForms(L, F)
    x = T.tensor(L.vec(x=1), F.t(1))
    y = T.tensor(L.vec(a=1), F.t(1))
    with pytest.raises(WindowOverflow):
        T.bracket(x, y)


def test_filtration_and_sigma_on_polyvectors():
    model = build_crit(1, {(2,): Fraction(1, 2)}, ["t"])
    pol = PolyvectorDGLA(model.cdga, -1)
    pi = standard_bivector(model, pol)
    f = pol.gen("t")
    assert filtration_level(pol, pi) == 2
    assert filtration_level(pol, f) == 0
    assert filtration_level(pol, pol.alg.zero()) is None
    assert sigma(pol, pi + f) == pi - f


def test_cocone_defect_on_crit_triple():
    model = build_crit(2, {(1, 1): 1})
    triple = strict_poisson_with_derivation(model)
    first, second = cocone_defect(triple.pol, CoconeElement(triple.pi, triple.D))
    assert not first and not second
    _, bad = cocone_defect(triple.pol, CoconeElement(triple.pi, triple.d0))
    # without D1 the defect is sigma(pi) + [pi, D0]
    assert bad == triple.pi + triple.pol.bracket(triple.pi, triple.d0)


def test_cocone_bracket_convention():
    model = build_crit(1, 0)
    pol = PolyvectorDGLA(model.cdga, -1)
    C = CoconeDGLA(pol)
    a, b = pol.xi("y1"), pol.gen("eta1")
    x = C.bracket(C.element(a=a), C.element(b=b))
    assert not x.pi
    assert x.dpart == pol.bracket(a, b) * (-1) ** pol.degree(a)


def test_conjugation_detects_non_terminating_series():
    alg = GradedAlgebra([("t", 0)])
    phi = Operator.gen(alg, "t") * Operator.d(alg, "t")
    with pytest.raises(SeriesDoesNotTerminate):
        conjugate(Operator.gen(alg, "t"), phi, max_terms=10)


def test_window_is_unbounded_by_default():
    w = Window()
    assert (w.max_weight, w.max_poly_degree, w.hbar_order) == (None, None, None)


@pytest.mark.parametrize("m,f", [(1, {}), (1, {(3,): 1}), (2, {(2, 0): 1, (0, 2): 1})])
def test_function_multiple_of_standard_term_is_still_mc(m, f):
    # xi_eta is odd, so every term of [pi, pi] and delta pi for pi = g(y) xi_y xi_eta contains xi_eta^2
    from exactquant.dcrit import build_crit
    pol = PolyvectorDGLA(build_crit(m, f).cdga, -1)
    pi = pol.gen("y1") * pol.xi("y1") * pol.xi("eta1")
    assert not mc_defect(pol, pi)


def test_mixed_bivector_has_nonzero_mc_defect():
    # hand expansion: only d/dxi_y1 of the first term meets d/dy1 of the second, twice, halved
    from exactquant.dcrit import build_crit
    pol = PolyvectorDGLA(build_crit(2, {}).cdga, -1)
    x = pol.xi
    pi = x("y1") * x("eta1") + pol.gen("y1") * x("y2") * x("eta2")
    defect = mc_defect(pol, pi)
    target = x("y2") * x("eta1") * x("eta2")
    assert defect == target or defect == target * -1
