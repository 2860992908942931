"""Derived critical loci Crit(A^m, f).

Structure algebra: y_i in degree 0 and eta_i in degree -1 with delta eta_i = df/dy_i.
This module builds the exact (-1)-shifted symplectic data, solves the strict
formal-derivation equations, checks the canonical quantisation (Delta, D),
computes twisted de Rham and Koszul cohomology, the twisted right D-module
action, and the quadratic example in one variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .checks import Check, all_passed
from .dgla import gauge_conjugate, sigma, transport_connection
from .graded import GradedAlgebra, GradedElement, embed
from .linalg import ExactMatrix, cohomology_dims, image_cohomology_dims
from .operators import Operator, anti_involute, graded_commutator, sesquilinear_star
from .polyvectors import CdgaModel, DeRham, PolyvectorDGLA, mu_contract, nondegenerate
from .rees import strict_triple_check
from .scalars import Laurent, RationalFunction

HBAR = Laurent.hbar(1)
HBAR_INV = Laurent.hbar(-1)


def eta_name(var: str) -> str:
    if var == "t":
        return "tau"
    if var.startswith("y"):
        return "eta" + var[1:]
    return "eta_" + var


@dataclass
class CriticalLocusModel:
    m: int
    vars: Tuple[str, ...]
    etas: Tuple[str, ...]
    f: GradedElement  # in cdga.alg
    cdga: CdgaModel
    poly_alg: GradedAlgebra  # Q[y] alone

    @property
    def alg(self) -> GradedAlgebra:
        return self.cdga.alg

    def partial(self, i: int) -> GradedElement:
        return self.f.derivative(self.vars[i])


def _coerce_potential(f, vars: Sequence[str], alg: GradedAlgebra) -> GradedElement:
    if isinstance(f, GradedElement):
        src = f.alg
        t = {}
        for mono, c in f.terms.items():
            new = [0] * alg.n
            for g, e in zip(src.gens, mono):
                if not e:
                    continue
                if g.name not in vars or g.degree != 0:
                    raise ValueError(f"potential uses {g.name}, which is not a declared variable")
                new[alg.index[g.name]] = e
            t[tuple(new)] = c
        return GradedElement(alg, t)
    if isinstance(f, dict):
        t = {}
        for mono, c in f.items():
            new = list(mono) + [0] * (alg.n - len(mono))
            t[tuple(new)] = Fraction(c)
        return GradedElement(alg, t)
    return alg.scalar(Fraction(f))


def build_crit(m: int, f=0, vars: Optional[Sequence[str]] = None) -> CriticalLocusModel:
    if vars is None:
        vars = [f"y{i}" for i in range(1, m + 1)]
    vars = tuple(vars)
    if len(vars) != m:
        raise ValueError(f"need {m} variable names, got {len(vars)}")
    etas = tuple(eta_name(v) for v in vars)
    gens = [(v, 0) for v in vars] + [(e, -1) for e in etas]
    alg = GradedAlgebra(gens)
    fe = _coerce_potential(f, vars, alg)
    if fe.terms and any(e for mono in fe.terms for e in mono[m:]):
        raise ValueError("potential must be a function of the even variables")
    diff = {etas[i]: fe.derivative(vars[i]) for i in range(m)}
    cdga = CdgaModel(gens, diff)
    f_in = GradedElement(cdga.alg, fe.terms)
    return CriticalLocusModel(m, vars, etas, f_in, cdga, GradedAlgebra([(v, 0) for v in vars]))


def model_checks(model: CriticalLocusModel) -> List[Check]:
    return [Check(f"delta^2({g}) = 0", r) for g, r in model.cdga.check_square_zero().items()]


# --------------------------------------------------------------------------
# exact symplectic structure


@dataclass
class ExactSymplecticData:
    omega: GradedElement
    lam: GradedElement
    tautological_form: GradedElement
    dr: DeRham
    checks: List[Check]


def canonical_exact_structure(model: CriticalLocusModel) -> ExactSymplecticData:
    dr = DeRham(model.cdga)
    f = dr.function(model.f)
    taut = dr.alg.zero()
    omega = dr.alg.zero()
    dsum = dr.alg.zero()
    for y, e in zip(model.vars, model.etas):
        taut = taut + dr.alg.gen(e) * dr.dg(y)
        omega = omega + dr.dg(y) * dr.dg(e)
        dsum = dsum + dr.dg(e) * dr.dg(y)
    lam = taut - f
    total = dr.delta(lam) + dr.d(lam)
    below = total.filter_terms(lambda mono: dr.alg.mono_weight(mono) < 2)
    checks = [
        Check("delta lambda = df", dr.delta(lam) - dr.d(f)),
        Check("d lambda = sum d eta_i dy_i - df", dr.d(lam) - (dsum - dr.d(f))),
        Check("(delta + d) lambda in F^2", below),
        Check("omega = d(tautological form)", omega - dr.d(taut)),
        Check("delta omega = 0", dr.delta(omega)),
        Check("d omega = 0", dr.d(omega)),
    ]
    checks += [Check(k + " = 0", v) for k, v in dr.check_relations().items()]
    pol = PolyvectorDGLA(model.cdga, -1)
    checks.append(Check("induced pi nondegenerate", nondegenerate(pol, standard_bivector(model, pol))))
    return ExactSymplecticData(omega, lam, taut, dr, checks)


def standard_bivector(model: CriticalLocusModel, pol: PolyvectorDGLA) -> GradedElement:
    pi = pol.alg.zero()
    for y, e in zip(model.vars, model.etas):
        pi = pi + pol.xi(y) * pol.xi(e)
    return pi


def fiber_euler(model: CriticalLocusModel, pol: PolyvectorDGLA) -> GradedElement:
    out = pol.alg.zero()
    for e in model.etas:
        out = out + pol.gen(e) * pol.xi(e)
    return out


# --------------------------------------------------------------------------
# strict Poisson structure with formal derivation


@dataclass
class StrictDerivationTriple:
    pol: PolyvectorDGLA
    pi: GradedElement
    d0: GradedElement
    d1: GradedElement
    d0_constant: Fraction
    d1_constant: Fraction
    checks: List[Check]

    @property
    def D(self) -> GradedElement:
        return self.d0 + self.d1


class NoSolution(ArithmeticError):
    pass


def _solve_scalar(target: GradedElement, direction: GradedElement) -> Optional[Fraction]:
    """c with target + c * direction = 0, or None when direction = 0."""
    if not direction.terms:
        return None
    mono = next(iter(direction.terms))
    c = -target.coeff(mono) / direction.terms[mono]
    if (target + direction * c).terms:
        raise NoSolution(f"no scalar solves {target.render()} + c*({direction.render()}) = 0")
    return c


CRIT_D1_CONSTANT = Fraction(-1)
CRIT_D0_CONSTANT = Fraction(1)


def strict_poisson_with_derivation(model: CriticalLocusModel) -> StrictDerivationTriple:
    """pi = sum xi_y xi_eta, D1 = c1 * (fiber Euler), D0 = c0 * f with c1, c0 solved from the strict equations."""
    pol = PolyvectorDGLA(model.cdga, -1)
    pi = standard_bivector(model, pol)
    E = fiber_euler(model, pol)
    c1 = _solve_scalar(pi, pol.bracket(pi, E))
    if c1 is None:
        raise NoSolution("fiber Euler vector commutes with pi")
    D1 = E * c1
    f = pol.function(model.f)
    c0 = _solve_scalar(pol.differential(D1), pol.bracket(pi, f))
    if c0 is None:
        # f has no effect on the equations (f constant or zero); keep the frozen value
        c0 = CRIT_D0_CONSTANT
    D0 = f * c0
    defects = strict_triple_check(pol, pi, D0, D1)
    checks = [
        Check("delta D0 = 0", defects[0]),
        Check("delta D1 + [pi, D0] = 0", defects[1]),
        Check("[pi, D1] + pi = 0", defects[2]),
    ]
    ex = canonical_exact_structure(model)
    checks.append(Check("mu(omega, pi) = sigma(pi)", mu_contract(ex.dr, pol, ex.omega, pi) - sigma(pol, pi)))
    return StrictDerivationTriple(pol, pi, D0, D1, c0, c1, checks)


def shifted_cotangent_triple(m: int, n: int):
    """T*[n]A^m: x_i in degree 0, p_i in degree n, delta = 0.

    pi = sum xi_x xi_p, D0 = 0 and D1 = c * sum p_i xi_p with c solved from [pi, D1] = -pi.
    Returns (pol, pi, D0, D1, c, defects).
    """
    gens = [(f"x{i}", 0) for i in range(1, m + 1)] + [(f"p{i}", n) for i in range(1, m + 1)]
    pol = PolyvectorDGLA(CdgaModel(gens), n)
    pi = pol.alg.zero()
    E = pol.alg.zero()
    for i in range(1, m + 1):
        pi = pi + pol.xi(f"x{i}") * pol.xi(f"p{i}")
        E = E + pol.gen(f"p{i}") * pol.xi(f"p{i}")
    c = _solve_scalar(pi, pol.bracket(pi, E))
    D1 = E * c
    D0 = pol.alg.zero()
    return pol, pi, D0, D1, c, strict_triple_check(pol, pi, D0, D1)


# --------------------------------------------------------------------------
# quantisation


@dataclass
class QuantisationPair:
    delta: Operator
    d: Operator
    Delta: Operator
    D: Operator
    deg_omega: Operator
    checks: List[Check]


def crit_operators(model: CriticalLocusModel):
    alg = model.alg
    delta = Operator.zero(alg)
    d = Operator.zero(alg)
    number = Operator.zero(alg)
    for i, (y, e) in enumerate(zip(model.vars, model.etas)):
        delta = delta + Operator.mult(model.partial(i)) * Operator.d(alg, e)
        d = d + Operator.d(alg, y) * Operator.d(alg, e)
        number = number + Operator.gen(alg, e) * Operator.d(alg, e)
    m = Fraction(model.m)
    deg_omega = Operator.identity(alg, m) - number
    Delta = d.scale(HBAR)
    D = Operator.identity(alg, m / 2) - deg_omega - Operator.mult(model.f).scale(HBAR_INV)
    return delta, d, Delta, D, deg_omega, number


def pol_to_operator(pol: PolyvectorDGLA, x: GradedElement, alg: GradedAlgebra) -> Operator:
    """Symbol map for arity <= 1: functions act by multiplication, a xi_g by a d_g."""
    out = Operator.zero(alg)
    k = len(pol.names)
    for mono, c in x.terms.items():
        xis = [i for i, e in enumerate(mono[k:]) if e]
        funcs = mono[:k]
        if len(xis) > 1:
            raise ValueError("only functions and vectors have an operator symbol")
        # a xi_g is stored as a * xi_g already (coefficients to the left)
        op = Operator.mult(GradedElement(alg, {tuple(funcs): c}))
        if xis:
            op = op * Operator.d(alg, pol.names[xis[0]])
        out = out + op
    return out


def canonical_quantisation(model: CriticalLocusModel) -> QuantisationPair:
    delta, d, Delta, D, deg_omega, number = crit_operators(model)
    alg = model.alg
    m = Fraction(model.m)
    gc = graded_commutator
    checks = [
        Check("[delta, delta] = 0", gc(delta, delta)),
        Check("[delta, d] = 0", gc(delta, d)),
        Check("[d, d] = 0", gc(d, d)),
        Check("[delta, D] = delta", gc(delta, D) - delta),
        Check("[d, D] = d - hbar^-1 delta", gc(d, D) - (d - delta.scale(HBAR_INV))),
        Check("[delta + hbar d, D] = hbar d", gc(delta + Delta, D) - Delta),
        Check("[delta + Delta, D] = hbar d/dhbar (Delta)", gc(delta + Delta, D) - Delta.hbar_euler()),
        Check("Delta* = Delta", sesquilinear_star(Delta) - Delta),
        Check("D* = D", sesquilinear_star(D) - D),
        Check("deg_Omega + sum eta d_eta = m", deg_omega + number - Operator.identity(alg, m)),
    ]
    checks += anti_involution_checks(model, delta, d, deg_omega)
    # delta as an operator is the CDGA differential
    for g in alg.gens:
        x = alg.gen(g.name)
        checks.append(Check(f"delta operator on {g.name}", delta(x) - model.cdga.delta(x)))
    # quantised D against the classical formal derivation
    triple = strict_poisson_with_derivation(model)
    from .rees import hbar_scaling

    Dh = hbar_scaling(triple.pol, triple.D)
    checks.append(Check("D = -(hbar-scaled classical D) - m/2",
                        D - (-pol_to_operator(triple.pol, Dh, alg) - Operator.identity(alg, m / 2))))
    return QuantisationPair(delta, d, Delta, D, deg_omega, checks)


def anti_involution_checks(model: CriticalLocusModel, delta=None, d=None, deg_omega=None) -> List[Check]:
    if delta is None:
        delta, d, _, _, deg_omega, _ = crit_operators(model)
    alg = model.alg
    m = Fraction(model.m)
    return [
        Check("delta^t = -delta", anti_involute(delta) + delta),
        Check("d^t = d", anti_involute(d) - d),
        Check("deg_Omega^t = m - deg_Omega", anti_involute(deg_omega) - (Operator.identity(alg, m) - deg_omega)),
    ]


# --------------------------------------------------------------------------
# cohomology


def _degree_slots(m: int, max_deg: int) -> List[Tuple[int, ...]]:
    if max_deg < 0:
        return []
    out = []

    def rec(i, left, cur):
        if i == m:
            out.append(tuple(cur))
            return
        for e in range(left + 1):
            cur.append(e)
            rec(i + 1, left - e, cur)
            cur.pop()

    rec(0, max_deg, [])
    return sorted(out, key=lambda b: (sum(b), b))


def _poly_degree(f: GradedElement, m: int) -> int:
    return max((sum(mono[:m]) for mono in f.terms), default=0)


def _partial_degrees(model: CriticalLocusModel, if_zero: int) -> List[int]:
    out = []
    for i in range(model.m):
        p = model.partial(i)
        out.append(_poly_degree(p, model.m) if p.terms else if_zero)
    return out


@dataclass
class CohomologyResult:
    dims: List[int]
    dims_next: List[int]
    cutoff: int

    @property
    def stabilized(self) -> bool:
        return self.dims == self.dims_next


def twisted_derham_complex(model: CriticalLocusModel, cutoff: int) -> Tuple[List[ExactMatrix], List[int]]:
    mats, bases = _twisted_derham_data(model, cutoff)
    return mats, [len(b) for b in bases]


def _twisted_derham_data(model: CriticalLocusModel, cutoff: int):
    """Matrices of d + hbar^-1 df on polynomial forms, with the monomial bases.

    a dy_I is kept when deg a <= cutoff + sum_{i in I} s_i, with s_i = deg(d_i f)
    (or -1 when d_i f = 0).  d lowers this weight and df^dy_j raises it by at most
    s_j, so the truncation is a subcomplex.
    """
    m = model.m
    vars = model.vars
    shifts = _partial_degrees(model, -1)
    forms = GradedAlgebra([(v, 0) for v in vars] + [("d" + v, 1) for v in vars])
    f = GradedElement(forms, {mono[:m] + (0,) * m: c for mono, c in model.f.terms.items()})
    dvars = {v: forms.gen("d" + v) for v in vars}
    from .graded import derivation

    dR = derivation(forms, dvars, 1)
    df = dR(f)
    bases = []
    for p in range(m + 1):
        basis = []
        for I in combinations(range(m), p):
            for beta in _degree_slots(m, cutoff + sum(shifts[i] for i in I)):
                mono = list(beta) + [0] * m
                for i in I:
                    mono[m + i] = 1
                basis.append(tuple(mono))
        bases.append(basis)
    mats = []
    hinv = RationalFunction.from_laurent(HBAR_INV)
    for p in range(m):
        src, tgt = bases[p], bases[p + 1]
        index = {b: i for i, b in enumerate(tgt)}
        rows = [[RationalFunction(0)] * len(src) for _ in tgt]
        for j, b in enumerate(src):
            x = GradedElement(forms, {b: Fraction(1)})
            for img, scale in ((dR(x), None), (df * x, hinv)):
                for mono, c in img.terms.items():
                    if mono not in index:
                        raise ArithmeticError("truncated twisted de Rham complex is not closed")
                    v = RationalFunction.coerce(c)
                    rows[index[mono]][j] = rows[index[mono]][j] + (v if scale is None else v * scale)
        mats.append(ExactMatrix.from_rows(rows, len(src)))
    return mats, bases


def _image_dims(builder, model, cutoff: int, gap: int) -> List[int]:
    small, sb = builder(model, cutoff)
    big, bb = builder(model, cutoff + gap)
    emb = []
    for s_basis, b_basis in zip(sb, bb):
        index = {b: i for i, b in enumerate(b_basis)}
        emb.append([index[b] for b in s_basis])
    return image_cohomology_dims(small, [len(b) for b in sb], big, [len(b) for b in bb], emb)


def _cohomology(builder, model, cutoff: int, gap: Optional[int]) -> CohomologyResult:
    """Image of H(F_c) in H(F_{c+gap}) for c = cutoff and cutoff + 1.

    Truncation classes that only die through cancellation of leading terms are
    killed by the larger complex, so the image converges to the cohomology of
    the untruncated complex.
    """
    gap = cutoff if gap is None else gap
    a = _image_dims(builder, model, cutoff, gap)
    b = _image_dims(builder, model, cutoff + 1, gap)
    return CohomologyResult(a, b, cutoff)


def twisted_derham_cohomology(m: int, f, cutoff: int, vars: Optional[Sequence[str]] = None,
                              gap: Optional[int] = None) -> CohomologyResult:
    return _cohomology(_twisted_derham_data, build_crit(m, f, vars), cutoff, gap)


def koszul_complex(model: CriticalLocusModel, cutoff: int) -> Tuple[List[ExactMatrix], List[int]]:
    mats, bases = _koszul_data(model, cutoff)
    return mats, [len(b) for b in bases]


def _koszul_data(model: CriticalLocusModel, cutoff: int):
    """Structure CDGA in degrees -m..0; a eta_I is kept when deg a <= cutoff - sum_{i in I} s_i, s_i = deg(d_i f)."""
    m = model.m
    shifts = _partial_degrees(model, 0)
    alg = model.alg
    bases = []
    for k in range(m, -1, -1):
        basis = []
        for I in combinations(range(m), k):
            for beta in _degree_slots(m, cutoff - sum(shifts[i] for i in I)):
                mono = list(beta) + [0] * m
                for i in I:
                    mono[m + i] = 1
                basis.append(tuple(mono))
        bases.append(basis)
    mats = []
    for a in range(m):
        src, tgt = bases[a], bases[a + 1]
        index = {b: i for i, b in enumerate(tgt)}
        rows = [[Fraction(0)] * len(src) for _ in tgt]
        for j, b in enumerate(src):
            img = model.cdga.delta(GradedElement(alg, {b: Fraction(1)}))
            for mono, c in img.terms.items():
                if mono not in index:
                    raise ArithmeticError("truncated Koszul complex is not closed")
                rows[index[mono]][j] += c
        mats.append(ExactMatrix.from_rows(rows, len(src)))
    return mats, bases


def koszul_cohomology(m: int, f, cutoff: int, vars: Optional[Sequence[str]] = None,
                      gap: Optional[int] = None) -> CohomologyResult:
    """dims of H^{-m}, ..., H^0 of the structure CDGA (see _cohomology)."""
    return _cohomology(_koszul_data, build_crit(m, f, vars), cutoff, gap)


# --------------------------------------------------------------------------
# twisted right D-module structure on K_Y


Vector = Dict[int, GradedElement]


@dataclass
class DModuleReport:
    model: CriticalLocusModel
    checks: List[Check]
    twist_terms: Dict[str, GradedElement]
    defects: Dict[str, GradedElement]


class TwistedAction:
    """a * xi = -xi(a) - a div(xi) - hbar^-1 a xi(f) on K_Y = O_Y dy_1...dy_m."""

    def __init__(self, model: CriticalLocusModel):
        self.model = model
        self.Y = model.poly_alg
        self.f = GradedElement(self.Y, {mono[: model.m]: c for mono, c in model.f.terms.items()})

    def apply_vector(self, xi: Vector, a: GradedElement) -> GradedElement:
        out = self.Y.zero()
        for i, c in xi.items():
            out = out + c * a.derivative(self.model.vars[i])
        return out

    def div(self, xi: Vector) -> GradedElement:
        out = self.Y.zero()
        for i, c in xi.items():
            out = out + c.derivative(self.model.vars[i])
        return out

    def twist(self, xi: Vector) -> GradedElement:
        return self.apply_vector(xi, self.f) * (-HBAR_INV)

    def untwisted(self, a: GradedElement, xi: Vector) -> GradedElement:
        return -self.apply_vector(xi, a) - a * self.div(xi)

    def act(self, a: GradedElement, xi: Vector) -> GradedElement:
        return self.untwisted(a, xi) + a * self.twist(xi)

    def bracket(self, xi: Vector, zeta: Vector) -> Vector:
        out: Vector = {}
        for i in range(self.model.m):
            v = self.apply_vector(xi, zeta.get(i, self.Y.zero())) - self.apply_vector(zeta, xi.get(i, self.Y.zero()))
            if v.terms:
                out[i] = v
        return out

    def connection(self, a: GradedElement, sign: int = 1) -> GradedElement:
        """D(a) = hbar d/dhbar(a) + sign * hbar^-1 a f."""
        return a.map_coeffs(lambda c: Laurent.coerce(c).euler()) + a * self.f * (HBAR_INV * sign)

    def commutator(self, a: GradedElement, xi: Vector, sign: int = 1) -> GradedElement:
        """D(a*xi) - D(a)*xi."""
        return self.connection(self.act(a, xi), sign) - self.act(self.connection(a, sign), xi)

    def defect(self, a: GradedElement, xi: Vector, sign: int = 1) -> GradedElement:
        """D(a*xi) - D(a)*xi - a * hbar d/dhbar(twist(xi))."""
        tw = self.twist(xi).map_coeffs(lambda c: Laurent.coerce(c).euler())
        return self.commutator(a, xi, sign) - a * tw


def coordinate_fields(model: CriticalLocusModel) -> Dict[str, Vector]:
    Y = model.poly_alg
    out = {f"d_{v}": {i: Y.one()} for i, v in enumerate(model.vars)}
    if model.m >= 2:
        out[f"{model.vars[0]}*d_{model.vars[1]}"] = {1: Y.gen(model.vars[0])}
    return out


def _test_functions(model: CriticalLocusModel) -> List[GradedElement]:
    Y = model.poly_alg
    out = [Y.one()]
    for v in model.vars:
        out.append(Y.gen(v))
        out.append(Y.gen(v) ** 2 * Laurent.hbar(1) + Y.gen(v) * Fraction(3))
    if model.m >= 2:
        out.append(Y.gen(model.vars[0]) * Y.gen(model.vars[1]) * Laurent.hbar(-1))
    return out


def expected_defect(action: TwistedAction, a: GradedElement, xi: Vector) -> GradedElement:
    """The frozen identity E(xi)(a) = hbar^-1 a xi(f)."""
    return a * action.apply_vector(xi, action.f) * HBAR_INV


def twisted_dmodule_action(m: int, f=0, vars: Optional[Sequence[str]] = None) -> DModuleReport:
    model = build_crit(m, f, vars)
    act = TwistedAction(model)
    fields = coordinate_fields(model)
    tests = _test_functions(model)
    checks: List[Check] = []
    names = list(fields)
    for i, n1 in enumerate(names):
        for n2 in names[i + 1:]:
            xi, zeta = fields[n1], fields[n2]
            br = act.bracket(xi, zeta)
            for a in tests:
                lhs = act.act(a, br)
                rhs = act.act(act.act(a, xi), zeta) - act.act(act.act(a, zeta), xi)
                checks.append(Check(f"right module axiom [{n1}, {n2}] on {a.render()}", lhs - rhs))
    defects = {}
    twists = {}
    for n, xi in fields.items():
        twists[n] = act.twist(xi)
        for a in tests:
            E = act.defect(a, xi)
            defects[f"{n} on {a.render()}"] = E
            checks.append(Check(f"E({n}) = hbar^-1 a {n}(f) on {a.render()}", E - expected_defect(act, a, xi)))
            checks.append(Check(f"hbar d/dhbar - hbar^-1 f commutes with {n} on {a.render()}",
                                act.commutator(a, xi, sign=-1)))
    return DModuleReport(model, checks, twists, defects)


# --------------------------------------------------------------------------
# the quadratic example


@dataclass
class QuadReport:
    checks: List[Check]
    values: Dict[str, Operator]


def quad_regression() -> QuadReport:
    """m = 1, f = t^2/2, phi = hbar d_t^2 / 2."""
    model = build_crit(1, {(2,): Fraction(1, 2)}, ["t"])
    alg = model.alg
    delta, d, Delta, D, _, _ = crit_operators(model)
    t = Operator.gen(alg, "t")
    tau = Operator.gen(alg, "tau")
    dt = Operator.d(alg, "t")
    dtau = Operator.d(alg, "tau")
    half = Fraction(1, 2)
    phi = (dt * dt).scale(HBAR * half)
    gc = graded_commutator
    ad1 = gc(phi, D)
    ad2 = gc(phi, ad1)
    ad3 = gc(phi, ad2)
    conj = gauge_conjugate(delta, Delta, phi)
    transported = transport_connection(D, phi)
    target = tau * dtau + t * dt - (t * t).scale(HBAR_INV * half)
    theta = tau * dt - (tau * t).scale(HBAR_INV * half)
    checks = [
        Check("delta = t d_tau", delta - t * dtau),
        Check("Delta = hbar d_t d_tau", Delta - (dt * dtau).scale(HBAR)),
        Check("D = tau d_tau - 1/2 - hbar^-1 t^2/2",
              D - (tau * dtau - Operator.identity(alg, half) - (t * t).scale(HBAR_INV * half))),
        Check("[phi, delta] = Delta", gc(phi, delta) - Delta),
        Check("ad_phi(D) = -t d_t - 1/2", ad1 - (-(t * dt) - Operator.identity(alg, half))),
        Check("ad_phi^2(D) = -hbar d_t^2", ad2 - (-(dt * dt).scale(HBAR))),
        Check("ad_phi^3(D) = 0", ad3),
        Check("exp(-phi)(delta + Delta)exp(phi) = delta", conj - delta),
        Check("transported connection = tau d_tau + t d_t - hbar^-1 t^2/2", transported - target),
        Check("[delta, tau d_t - hbar^-1 tau t/2] = transported connection", gc(delta, theta) - transported),
    ]
    values = {"ad_phi(D)": ad1, "ad_phi^2(D)": ad2, "ad_phi^3(D)": ad3, "conjugated": conj,
              "transported": transported, "[delta, theta]": gc(delta, theta)}
    return QuadReport(checks, values)
