from fractions import Fraction

from hypothesis import given, settings, strategies as st

from exactquant.graded import GradedAlgebra
from exactquant.operators import (Operator, anti_involute, apply, compose, exp_series_terminates,
                                  graded_commutator, sesquilinear_star)
from exactquant.sampling import random_operator
from exactquant.scalars import Laurent

ALG = GradedAlgebra([("t", 0), ("tau", -1)])
t, tau = Operator.gen(ALG, "t"), Operator.gen(ALG, "tau")
dt, dtau = Operator.d(ALG, "t"), Operator.d(ALG, "tau")
one = Operator.identity(ALG)


def test_weyl_relation():
    assert dt * t == t * dt + one


def test_clifford_relation():
    assert dtau * tau == one - tau * dtau


def test_graded_commutators():
    assert graded_commutator(dt, t) == one
    assert graded_commutator(dtau, tau) == one
    assert graded_commutator(dtau, dtau) == Operator.zero(ALG)
    assert not graded_commutator(t * dtau, t * dtau)


def test_action_on_elements():
    x = ALG["t"] ** 3 * ALG["tau"]
    assert (dt * dt)(x) == ALG["t"] * ALG["tau"] * 6
    assert dtau(x) == ALG["t"] ** 3


def test_generator_rule_anti_involution():
    assert anti_involute(t) == t
    assert anti_involute(dt) == -dt
    assert anti_involute(tau) == tau
    # odd derivations pick up the sign too, which is what makes delta^t = -delta
    assert anti_involute(dtau) == -dtau
    assert anti_involute(t * dtau) == -(t * dtau)
    assert anti_involute(dt * dt) == dt * dt


def test_sesquilinear_star():
    h = Laurent.hbar(1)
    Delta = (dt * dtau).scale(h)
    assert sesquilinear_star(Delta) == Delta
    assert sesquilinear_star(one.scale(h)) == one.scale(h)


def test_nilpotent_ad_series():
    phi = (dt * dt).scale(Fraction(1, 2))
    X = t * t
    assert exp_series_terminates(phi, X) == 3


def _ops(seed, n):
    import random
    rng = random.Random(seed)
    return [random_operator(ALG, rng, max_total=2, coeffs=[Laurent.const(1), Laurent.hbar(1)]) for _ in range(n)]


@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_anti_homomorphism_and_involution(seed):
    P, Q = _ops(seed, 2)
    s = -1 if (P.parity * Q.parity) % 2 else 1
    assert anti_involute(compose(P, Q)) == compose(anti_involute(Q), anti_involute(P)).scale(s)
    assert anti_involute(anti_involute(P)) == P


@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_commutator_jacobi(seed):
    P, Q, R = _ops(seed, 3)
    gc = graded_commutator
    sPQ = -1 if (P.parity * Q.parity) % 2 else 1
    assert gc(P, gc(Q, R)) == gc(gc(P, Q), R) + gc(Q, gc(P, R)).scale(sPQ)


@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_composition_acts_as_composition(seed):
    import random
    from exactquant.sampling import random_element
    P, Q = _ops(seed, 2)
    x = random_element(ALG, random.Random(seed), max_total=3)
    assert apply(compose(P, Q), x) == apply(P, apply(Q, x))
