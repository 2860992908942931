"""Randomized law checks returning Check records (first counterexample as residual)."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, List, Optional

from .checks import Check
from .dgla import CoconeDGLA, CoconeElement, filtration_level, sigma
from .graded import GradedElement
from .operators import anti_involute, compose, sesquilinear_star, apply
from .polyvectors import PolyvectorDGLA
from .sampling import random_element, random_operator
from .scalars import Laurent


def _law(name: str, samples: int, trial: Callable[[int], Optional[str]]) -> Check:
    for k in range(samples):
        bad = trial(k)
        if bad is not None:
            return Check(f"{name} ({samples} samples)", f"sample {k}: {bad}")
    return Check(f"{name} ({samples} samples)")


def _rand_pol(pol: PolyvectorDGLA, rng: random.Random, degree=None, max_total=3):
    return random_element(pol.alg, rng, degree=degree, max_total=max_total, shift=pol.s)


def schouten_laws(pol: PolyvectorDGLA, rng: random.Random, samples: int = 200, max_total: int = 3) -> List[Check]:
    br = pol.bracket
    L = pol.degree

    def sgn(k):
        return -1 if k % 2 else 1

    def antisym(_):
        a, b = _rand_pol(pol, rng, max_total=max_total), _rand_pol(pol, rng, max_total=max_total)
        r = br(a, b) + br(b, a) * sgn(L(a) * L(b))
        return None if not r else f"a={a}, b={b}, residual={r}"

    def jacobi(_):
        a, b, c = (_rand_pol(pol, rng, max_total=max_total) for _ in range(3))
        r = br(a, br(b, c)) - br(br(a, b), c) - br(b, br(a, c)) * sgn(L(a) * L(b))
        return None if not r else f"a={a}, b={b}, c={c}, residual={r}"

    def leibniz(_):
        x, y, z = (_rand_pol(pol, rng, max_total=2) for _ in range(3))
        r = br(x, y * z) - br(x, y) * z - y * br(x, z) * sgn(L(x) * y.degree)
        return None if not r else f"x={x}, y={y}, z={z}, residual={r}"

    def sigma_der(_):
        a, b = _rand_pol(pol, rng, max_total=max_total), _rand_pol(pol, rng, max_total=max_total)
        r = sigma(pol, br(a, b)) - br(sigma(pol, a), b) - br(a, sigma(pol, b))
        return None if not r else f"a={a}, b={b}"

    def sigma_chain(_):
        a = _rand_pol(pol, rng, max_total=max_total)
        r = sigma(pol, pol.differential(a)) - pol.differential(sigma(pol, a))
        return None if not r else f"a={a}"

    def weights(_):
        a, b = _rand_pol(pol, rng, max_total=max_total), _rand_pol(pol, rng, max_total=max_total)
        for i, x in pol.weight_components(a).items():
            for j, y in pol.weight_components(b).items():
                w = set(pol.weight_components(br(x, y)))
                if w - {i + j}:
                    return f"[W_{i}, W_{j}] has weights {sorted(w)}"
        return None

    def filt(_):
        a, b = _rand_pol(pol, rng, max_total=max_total), _rand_pol(pol, rng, max_total=max_total)
        c = br(a, b)
        pa, pb, pc = filtration_level(pol, a), filtration_level(pol, b), filtration_level(pol, c)
        if pa is None or pb is None or pc is None:
            return None
        return None if pc >= pa + pb - 1 else f"F^{pa} x F^{pb} -> F^{pc}"

    def dsq(_):
        a = _rand_pol(pol, rng, max_total=max_total)
        r = pol.differential(pol.differential(a))
        return None if not r else f"a={a}"

    def dder(_):
        a, b = _rand_pol(pol, rng, max_total=max_total), _rand_pol(pol, rng, max_total=max_total)
        d = pol.differential
        r = d(br(a, b)) - br(d(a), b) - br(a, d(b)) * sgn(L(a))
        return None if not r else f"a={a}, b={b}"

    return [
        _law("graded antisymmetry", samples, antisym),
        _law("graded Jacobi", samples, jacobi),
        _law("biderivation Leibniz", samples, leibniz),
        _law("sigma is a bracket derivation", samples, sigma_der),
        _law("sigma commutes with delta", samples, sigma_chain),
        _law("[W_i, W_j] in W_{i+j}", samples, weights),
        _law("[F^i, F^j] in F^{i+j-1}", samples, filt),
        _law("delta^2 = 0", samples, dsq),
        _law("delta is a bracket derivation", samples, dder),
    ]


def cocone_laws(pol: PolyvectorDGLA, rng: random.Random, samples: int = 200) -> List[Check]:
    C = CoconeDGLA(pol)

    def rand():
        k = rng.randint(-1, 2)
        a = _rand_pol(pol, rng, degree=k, max_total=2) if rng.random() < 0.8 else pol.zero()
        b = _rand_pol(pol, rng, degree=k - 1, max_total=2) if rng.random() < 0.8 else pol.zero()
        if not a and not b:
            a = _rand_pol(pol, rng, degree=k, max_total=2)
        return CoconeElement(a, b)

    def deg(x):
        d = C.degree(x)
        return 0 if d is None else d

    def sgn(k):
        return -1 if k % 2 else 1

    def sub(x, y):
        return C.add(x, C.scale(y, -1))

    def jacobi(_):
        x, y, z = rand(), rand(), rand()
        if C.degree(x) is None or C.degree(y) is None or C.degree(z) is None:
            return None
        lhs = C.bracket(C.bracket(x, y), z)
        rhs = sub(C.bracket(x, C.bracket(y, z)), C.scale(C.bracket(y, C.bracket(x, z)), sgn(deg(x) * deg(y))))
        r = sub(lhs, rhs)
        return None if C.is_zero(r) else C.render(r)

    def antisym(_):
        x, y = rand(), rand()
        r = C.add(C.bracket(x, y), C.scale(C.bracket(y, x), sgn(deg(x) * deg(y))))
        return None if C.is_zero(r) else C.render(r)

    def dsq(_):
        x = rand()
        r = C.differential(C.differential(x))
        return None if C.is_zero(r) else C.render(r)

    def dder(_):
        x, y = rand(), rand()
        d = C.differential
        r = sub(d(C.bracket(x, y)), C.add(C.bracket(d(x), y), C.scale(C.bracket(x, d(y)), sgn(deg(x)))))
        return None if C.is_zero(r) else C.render(r)

    return [
        _law("cocone graded Jacobi", samples, jacobi),
        _law("cocone graded antisymmetry", samples, antisym),
        _law("cocone d^2 = 0", samples, dsq),
        _law("cocone d is a bracket derivation", samples, dder),
    ]


def operator_laws(alg, rng: random.Random, samples: int = 200) -> List[Check]:
    h = [Laurent.const(1), Laurent.hbar(1), Laurent.hbar(-1)]

    def rand():
        return random_operator(alg, rng, max_total=2, coeffs=h)

    def sgn(k):
        return -1 if k % 2 else 1

    def assoc(_):
        P, Q, R = rand(), rand(), rand()
        r = compose(compose(P, Q), R) - compose(P, compose(Q, R))
        return None if not r else f"{P} | {Q} | {R}"

    def action(_):
        P, Q = random_operator(alg, rng, max_total=2), random_operator(alg, rng, max_total=2)
        x = random_element(alg, rng, max_total=3)
        r = apply(compose(P, Q), x) - apply(P, apply(Q, x))
        return None if not r else f"{P} | {Q} | {x}"

    def antihom(_):
        P, Q = rand(), rand()
        r = anti_involute(compose(P, Q)) - compose(anti_involute(Q), anti_involute(P)).scale(sgn(P.parity * Q.parity))
        return None if not r else f"{P} | {Q}"

    def invol(_):
        P = rand()
        r = anti_involute(anti_involute(P)) - P
        s = sesquilinear_star(sesquilinear_star(P)) - P
        return None if not r and not s else f"{P}"

    return [
        _law("composition is associative", samples, assoc),
        _law("apply(PQ) = apply(P) apply(Q)", samples, action),
        _law("t is a graded anti-homomorphism", samples, antihom),
        _law("t and * are involutions", samples, invol),
    ]


# --------------------------------------------------------------------------
# Rees identities


def random_rees_element(pol: PolyvectorDGLA, rng: random.Random, low: int = -2, high: int = 4,
                        max_total: int = 2, max_parts: int = 3) -> GradedElement:
    """Sum of weight-homogeneous pieces times hbar^k, k drawn from [low, high]."""
    from .scalars import Laurent

    out = pol.alg.zero()
    for _ in range(rng.randint(1, max_parts)):
        x = _rand_pol(pol, rng, max_total=max_total)
        for w, c in pol.weight_components(x).items():
            out = out + c * Laurent.hbar(rng.randint(low, high))
    return out


def _star_oracle(pol: PolyvectorDGLA, x: GradedElement) -> GradedElement:
    """hbar -> -hbar followed by (-1)^weight, computed without the component table."""
    y = x.map_coeffs(lambda c: (c if isinstance(c, Laurent) else Laurent.const(c)).reflect())
    out = pol.alg.zero()
    for w, c in pol.weight_components(y).items():
        out = out + (-c if w % 2 else c)
    return out


def rees_laws(pol: PolyvectorDGLA, rng: random.Random, samples: int = 200,
              filtration_samples: int = 100) -> List[Check]:
    from . import rees

    checks = []
    bad = [(j, k) for j in range(-4, 5) for k in range(-4, 5) if rees.star_sign(j, k) != (-1) ** ((j + k) % 2)]
    checks.append(Check("star sign table (-1)^(m+n), |m|,|n| <= 4", f"mismatch at {bad}" if bad else None))

    def table(_):
        x = random_rees_element(pol, rng, -4, 4)
        r = rees.star_involution(pol, x) - _star_oracle(pol, x)
        return None if not r else f"x={x}"

    checks.append(_law("star agrees with hbar -> -hbar and (-1)^weight", samples, table))

    for q in (1, 2, 3):
        xs = [random_rees_element(pol, rng, q - 3, q + 2) for _ in range(filtration_samples)]
        rep = rees.filtration_identity_check(pol, q, xs)
        hits = sum(1 for x in xs if rees.in_tilde_F(pol, x, q) and rees.in_hbar_rees(pol, x))
        res = "; ".join(rep.counterexamples[:3]) if rep.counterexamples else None
        if res is None and hits == 0:
            res = "no sample landed in F~^q cap hbar L~"
        checks.append(Check(f"F~^{q} cap hbar L~ = hbar F~^{q - 1} ({filtration_samples} samples, {hits} in the left side)", res))

    def fixed(_):
        x = random_rees_element(pol, rng)
        sym = x + rees.star_involution(pol, x)
        if rees.is_star_fixed(pol, x) != rees.parity_fixed(pol, x):
            return f"fixed/parity disagree on {x}"
        if not rees.parity_fixed(pol, sym):
            return f"x + x* not parity-fixed for {x}"
        return None

    def invol(_):
        x = random_rees_element(pol, rng)
        h = Laurent.hbar(1)
        st = lambda y: rees.star_involution(pol, y)
        if st(st(x)) != x:
            return f"** != id on {x}"
        if st(x * h) != -(st(x) * h):
            return f"(hbar x)* != -hbar x* on {x}"
        if rees.rees_sigma(st(x)) != st(rees.rees_sigma(x)):
            return f"sigma~ does not commute with * on {x}"
        return None

    def transport(_):
        x = random_rees_element(pol, rng)
        r = rees.rees_sigma(rees.hbar_scaling(pol, x)) - rees.transported_sigma(pol, x)
        return None if not r else f"x={x}"

    def scaling(_):
        x, y = random_rees_element(pol, rng), random_rees_element(pol, rng)
        hs = lambda z: rees.hbar_scaling(pol, z)
        if hs(pol.differential(x)) != pol.differential(hs(x)):
            return f"scaling does not commute with delta on {x}"
        if hs(pol.bracket(x, y)) != pol.bracket(hs(x), hs(y)):
            return f"scaling does not respect the bracket on {x}, {y}"
        if rees.hbar_unscaling(pol, hs(x)) != x:
            return f"unscaling is not inverse on {x}"
        return None

    checks += [
        _law("star-fixed iff weight = hbar order mod 2", samples, fixed),
        _law("star is an involution, (hbar x)* = -hbar x*, commutes with sigma~", samples, invol),
        _law("sigma~ = transport of sigma + hbar d/dhbar", samples, transport),
        _law("hbar scaling is a DGLA map", samples, scaling),
    ]
    return checks


# --------------------------------------------------------------------------
# TDO


def random_tdo(T, rng: random.Random, level: int, exact: bool = False, coeff_degree: int = 2):
    """Random element of V_level (frame length exactly level + 1 when ``exact``)."""
    from .tdo import TdoElement, multi_indices

    alphas = [a for a in multi_indices(T.m, level + 1) if not exact or sum(a) == level + 1]
    terms = {}
    for a in rng.sample(alphas, min(len(alphas), rng.randint(1, 3))):
        terms[a] = random_element(T.A, rng, degree=0, max_total=coeff_degree)
    out = TdoElement(T, terms)
    if not out.terms:
        out = TdoElement(T, {alphas[-1]: T.A.one()})
    return out


def tdo_laws(rng: random.Random, samples: int = 200, m_values=(1, 2), max_level: int = 3) -> List[Check]:
    from .tdo import TdoAlgebra, pbw_independence, tdo_anti_involution, v_filtration_level

    checks = []
    for m in m_values:
        r, n = pbw_independence(m, max_level)
        checks.append(Check(f"PBW independence m={m} up to V-level {max_level} (rank {r} of {n})",
                            None if r == n else f"rank {r} < {n}"))
    Ts = [TdoAlgebra(m) for m in m_values]
    t = tdo_anti_involution

    def level(P):
        v = v_filtration_level(P)
        return -2 if v is None else v

    def antihom(_):
        T = rng.choice(Ts)
        P, Q = random_tdo(T, rng, rng.randint(-1, 2)), random_tdo(T, rng, rng.randint(-1, 2))
        if t(P * Q) != t(Q) * t(P):
            return f"(PQ)^t != Q^t P^t for {P} | {Q}"
        if t(t(P)) != P:
            return f"t^2 != id on {P}"
        return None

    def graded(_):
        T = rng.choice(Ts)
        p = rng.randint(-1, max_level)
        P = random_tdo(T, rng, p, exact=True)
        r = t(P) - P.scale((-1) ** ((p + 1) % 2))
        return None if level(r) < p else f"p={p}: {P} -> {t(P)}"

    def drop(_):
        T = rng.choice(Ts)
        p, q = rng.randint(-1, 2), rng.randint(-1, 2)
        P, Q = random_tdo(T, rng, p), random_tdo(T, rng, q)
        c = P.commutator(Q)
        if level(P * Q) > level(P) + level(Q) + 1:
            return f"V_{level(P)} V_{level(Q)} not in V_(p+q+1)"
        return None if level(c) <= level(P) + level(Q) else f"[{P}, {Q}] has level {level(c)}"

    def generators(_):
        T = rng.choice(Ts)
        g = random_element(T.A, rng, degree=0, max_total=2)
        u = {i: random_element(T.A, rng, degree=0, max_total=2) for i in range(T.m) if rng.random() < 0.7}
        lhs = t(T.v0(g, u))
        rhs = T.v0(g, {i: -a for i, a in u.items()})
        return None if lhs == rhs else f"(g,u)^t != (g,-u) for g={g}, u={u}"

    def cross(_):
        T = rng.choice(Ts)
        P, Q = random_tdo(T, rng, rng.randint(-1, 2)), random_tdo(T, rng, rng.randint(-1, 2))
        r = (P * Q).to_operator() - compose(P.to_operator(), Q.to_operator())
        return None if not r else f"{P} | {Q}"

    checks += [
        _law("t is an anti-involution", samples, antihom),
        _law("t acts as (-1)^(p+1) on gr^V_p, p <= %d" % max_level, samples, graded),
        _law("commutators drop V-level", samples, drop),
        _law("(g,u)^t = (g,-u)", samples, generators),
        _law("normal-form product matches operator composition", samples, cross),
    ]
    return checks


# --------------------------------------------------------------------------
# Maurer-Cartan checks


def toy_path(c=Fraction(3), xi_scale=Fraction(1)):
    """a + c t b - xi_scale c x dt in toy (x) Omega(Delta^1); MC iff xi_scale = 1."""
    from .dgla import SimplicialForms, TensorForms, toy_nilpotent_dgla

    L = toy_nilpotent_dgla()
    F = SimplicialForms(1)
    T = TensorForms(L, F)
    X = T.add(T.tensor(L.vec(a=1), F.alg.one()), T.tensor(L.vec(b=c), F.t(1)))
    X = T.add(X, T.tensor(L.vec(x=-c * xi_scale), F.dt(1)))
    return L, T, X
