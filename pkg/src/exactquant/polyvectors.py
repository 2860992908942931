"""Shifted polyvectors Pol(A, n) with the Schouten-Nijenhuis bracket, the de Rham
algebra DR(A), and the compatibility maps mu and nu.

Pol(A, n) is modelled as the free graded-commutative algebra on the generators
g of A together with symbols xi_g (one per generator, standing for d/dg).
xi_g sits in algebra degree s - |g| with s = n + 1, so a p-vector with
constant coefficients has degree p*s - sum|g|; the DGLA is Pol(A, n)[n + 1],
whose degree is algebra degree minus s.  Weight is (number of xi) - 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .dgla import DGLA, Window, sigma
from .graded import GradedAlgebra, GradedElement, Generator, derivation, embed

XI = "xi_"


class CdgaModel:
    """Free CDGA: generators plus the images of the differential on them."""

    def __init__(self, generators: Sequence, differential: Optional[Mapping[str, GradedElement]] = None):
        self.alg = GradedAlgebra(generators)
        diff = dict(differential or {})
        for name, img in diff.items():
            if img.alg != self.alg:
                raise ValueError("differential images must live in the model algebra")
            if img.terms and img.degree != self.alg.degree_of(name) + 1:
                raise ValueError(f"delta({name}) has degree {img.degree}, expected {self.alg.degree_of(name) + 1}")
        self.diff = diff
        self._delta = derivation(self.alg, diff, 1)

    def delta(self, x: GradedElement) -> GradedElement:
        return self._delta(x)

    def check_square_zero(self) -> Dict[str, GradedElement]:
        """delta^2 on each generator (all entries must be zero)."""
        return {g.name: self.delta(self.delta(self.alg.gen(g.name))) for g in self.alg.gens}


class PolyvectorDGLA(DGLA):
    def __init__(self, base: CdgaModel, n: int, window: Window = Window()):
        self.base = base
        self.n = n
        self.s = n + 1
        self.window = window
        A = base.alg
        gens = [Generator(g.name, g.degree, 0) for g in A.gens]
        gens += [Generator(XI + g.name, self.s - g.degree, 1) for g in A.gens]
        self.alg = GradedAlgebra(gens)
        self.names = [g.name for g in A.gens]
        self._var_par = [g.parity for g in A.gens]
        # Q = sum_g delta(g) xi_g, so that delta_L = [Q, -]
        Q = self.alg.zero()
        for g in A.gens:
            img = base.diff.get(g.name)
            if img is not None and img.terms:
                Q = Q + self.function(img) * self.xi(g.name)
        self.Q = Q

    # constructors
    def function(self, a: GradedElement) -> GradedElement:
        return embed(a, self.alg)

    def gen(self, name: str) -> GradedElement:
        return self.alg.gen(name)

    def xi(self, name: str) -> GradedElement:
        return self.alg.gen(XI + name)

    def vector(self, comps: Mapping[str, GradedElement]) -> GradedElement:
        """sum_g a_g xi_g from coefficient functions on A."""
        out = self.alg.zero()
        for name, a in comps.items():
            out = out + self.function(a) * self.xi(name)
        return out

    def zero(self):
        return self.alg.zero()

    # gradings
    def degree(self, a: GradedElement) -> Optional[int]:
        d = a.degree
        return None if d is None else d - self.s

    def weight_components(self, a: GradedElement) -> Dict[int, GradedElement]:
        return {w - 1: c for w, c in a.weight_components().items()}

    def arity_components(self, a: GradedElement) -> Dict[int, GradedElement]:
        return {w + 1: c for w, c in self.weight_components(a).items()}

    # bracket
    def bracket(self, F: GradedElement, G: GradedElement) -> GradedElement:
        """{F,G} = sum_g F<-d/dxi_g d->/dg G - (-1)^{|g|(s+1)} F<-d/dg d->/dxi_g G."""
        out = self.alg.zero()
        s = self.s
        for name, pg in zip(self.names, self._var_par):
            xn = XI + name
            a = F.derivative(xn, "right")
            if a.terms:
                b = G.derivative(name, "left")
                if b.terms:
                    out = out + a * b
            a = F.derivative(name, "right")
            if a.terms:
                b = G.derivative(xn, "left")
                if b.terms:
                    t = a * b
                    out = out - t if (pg * (s + 1)) % 2 == 0 else out + t
        return self.check_window(out, "bracket")

    def differential(self, a: GradedElement) -> GradedElement:
        if not self.Q.terms:
            return self.alg.zero()
        return self.bracket(self.Q, a)

    def contract(self, v: GradedElement, a: GradedElement) -> GradedElement:
        """[v, a]: for a vector v and function a this is v(a)."""
        return self.bracket(v, a)

    def body_matrix_det(self, mat: List[List[GradedElement]]) -> GradedElement:
        return _det([[_body(x) for x in row] for row in mat])


def _body(x: GradedElement) -> GradedElement:
    """Set every odd generator to zero."""
    par = x.alg.parities
    return x.filter_terms(lambda m: not any(e and p for e, p in zip(m, par)))


def _det(mat: List[List[GradedElement]]) -> GradedElement:
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return mat[0][0]
    out = mat[0][0].alg.zero()
    for j in range(n):
        if not mat[0][j].terms:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


# --------------------------------------------------------------------------
# de Rham


class DeRham:
    """DR(A): generators g and dg (degree |g| + 1, form weight 1)."""

    def __init__(self, base: CdgaModel):
        self.base = base
        A = base.alg
        gens = [Generator(g.name, g.degree, 0) for g in A.gens]
        gens += [Generator("d" + g.name, g.degree + 1, 1) for g in A.gens]
        self.alg = GradedAlgebra(gens)
        self.names = [g.name for g in A.gens]
        alg = self.alg
        self._d = derivation(alg, {g: alg.gen("d" + g) for g in self.names}, 1)
        dimg = {}
        for g in self.names:
            img = base.diff.get(g)
            if img is not None and img.terms:
                e = embed(img, alg)
                dimg[g] = e
                dimg["d" + g] = -self._d(e)
        self._delta = derivation(alg, dimg, 1)

    def function(self, a: GradedElement) -> GradedElement:
        return embed(a, self.alg)

    def dg(self, name: str) -> GradedElement:
        return self.alg.gen("d" + name)

    def d(self, x: GradedElement) -> GradedElement:
        return self._d(x)

    def delta(self, x: GradedElement) -> GradedElement:
        return self._delta(x)

    def form_degree_components(self, x: GradedElement) -> Dict[int, GradedElement]:
        return x.weight_components()

    def hodge_level(self, x: GradedElement) -> Optional[int]:
        ws = x.weights()
        return min(ws) if ws else None

    def check_relations(self) -> Dict[str, GradedElement]:
        """d^2, delta^2 and d delta + delta d on every generator (all must vanish)."""
        out = {}
        for g in self.alg.gens:
            x = self.alg.gen(g.name)
            out[f"d^2({g.name})"] = self.d(self.d(x))
            out[f"delta^2({g.name})"] = self.delta(self.delta(x))
            out[f"[d,delta]({g.name})"] = self.d(self.delta(x)) + self.delta(self.d(x))
        return out


# --------------------------------------------------------------------------
# mu and nu


def _raw_contraction(dr: DeRham, pol: PolyvectorDGLA, omega: GradedElement,
                     images: Mapping[str, GradedElement], target: GradedAlgebra) -> Dict[int, GradedElement]:
    """a db_1 ... db_p -> a * images[b_1] ... images[b_p], split by form degree p."""
    from .graded import morphism

    imgs = {}
    for g in dr.names:
        imgs[g] = embed(pol.alg.gen(g), target)
        imgs["d" + g] = images[g]
    phi = morphism(dr.alg, target, imgs)
    return {p: phi(c) for p, c in dr.form_degree_components(omega).items()}


def standard_pair(m: int):
    """Crit(A^m, 0) with n = -1: the standard (-1)-shifted cotangent pair (omega, pi)."""
    gens = [(f"y{i}", 0) for i in range(1, m + 1)] + [(f"eta{i}", -1) for i in range(1, m + 1)]
    base = CdgaModel(gens)
    pol = PolyvectorDGLA(base, -1)
    dr = DeRham(base)
    omega = dr.alg.zero()
    pi = pol.alg.zero()
    for i in range(1, m + 1):
        omega = omega + dr.dg(f"y{i}") * dr.dg(f"eta{i}")
        pi = pi + pol.xi(f"y{i}") * pol.xi(f"eta{i}")
    return base, pol, dr, omega, pi


@lru_cache(maxsize=None)
def calibration() -> Fraction:
    """The sign kappa in c_p / p! = kappa^{p(p-1)/2}, fixed once on the m = 1 standard pair."""
    _, pol, dr, omega, pi = standard_pair(1)
    images = {g: pol.bracket(pol.gen(g), pi) for g in dr.names}
    raw = _raw_contraction(dr, pol, omega, images, pol.alg)[1 + 1]
    target = sigma(pol, pi)
    for kappa in (Fraction(1), Fraction(-1)):
        if raw * kappa == target:
            return kappa
    raise ArithmeticError("no sign calibrates mu on the standard pair")


def mu_contract(dr: DeRham, pol: PolyvectorDGLA, omega: GradedElement, pi: GradedElement) -> GradedElement:
    """mu(omega, pi) = sum_p kappa^{p(p-1)/2} (a [b_1, pi] ... [b_p, pi]) over the form-degree-p parts."""
    if pi.terms and pol.degree(pi) != 1:
        raise ValueError("pi must have degree 1")
    kappa = calibration()
    images = {g: pol.bracket(pol.gen(g), pi) for g in dr.names}
    out = pol.alg.zero()
    for p, c in _raw_contraction(dr, pol, omega, images, pol.alg).items():
        k = kappa ** (p * (p - 1) // 2)
        out = out + c * k
    return out


def _eps_algebra(pol: PolyvectorDGLA, eps_degree: int) -> GradedAlgebra:
    return GradedAlgebra([Generator("__eps", eps_degree, 0)] + list(pol.alg.gens))


def nu_map(dr: DeRham, pol: PolyvectorDGLA, omega: GradedElement, pi: GradedElement,
           b: GradedElement) -> GradedElement:
    """Directional derivative of mu(omega, -) at pi along b.

    Computed as the eps-coefficient of mu(omega, pi + eps b) with eps^2 = 0 and
    |eps| = |pi| - |b|, eps written on the left.
    """
    if not b.terms:
        return pol.alg.zero()
    db = pol.degree(b)
    if db is None:
        raise ValueError("nu needs a homogeneous direction")
    e = 1 - db
    E = _eps_algebra(pol, e)
    eps = E.gen("__eps")
    kappa = calibration()
    images = {}
    for g in dr.names:
        base = embed(pol.bracket(pol.gen(g), pi), E)
        gL = pol.degree(pol.gen(g))
        sgn = -1 if (e * gL) % 2 else 1
        images[g] = base + eps * embed(pol.bracket(pol.gen(g), b), E) * sgn
    out = pol.alg.zero()
    for p, c in _raw_contraction(dr, pol, omega, images, E).items():
        k = kappa ** (p * (p - 1) // 2)
        lin = {}
        for mono, coef in c.terms.items():
            if mono[0] == 1:
                lin[mono[1:]] = lin.get(mono[1:], 0) + coef
        out = out + pol.alg.element(lin) * k
    return out


def pairing_matrix(pol: PolyvectorDGLA, pi: GradedElement) -> List[List[GradedElement]]:
    """M[i][j] = coefficient of xi_{g_j} in [g_i, pi_2] (an element of A inside Pol)."""
    pi2 = pol.weight_components(pi).get(1, pol.alg.zero())
    rows = []
    for gi in pol.names:
        v = pol.bracket(pol.gen(gi), pi2)
        row = []
        for gj in pol.names:
            row.append(v.derivative(XI + gj, "right"))
        rows.append(row)
    return rows


def nondegenerate(pol: PolyvectorDGLA, pi: GradedElement) -> bool:
    """pi_2 induces an isomorphism Omega^1 -> T: the body determinant is a nonzero constant."""
    mat = pairing_matrix(pol, pi)
    if not mat or any(len(r) != len(mat) for r in mat):
        raise ValueError("pairing matrix is not square")
    det = pol.body_matrix_det(mat)
    return bool(det.terms) and all(sum(m) == 0 for m in det.terms)


def weight_action_matrix(pol: PolyvectorDGLA, op, basis: Sequence[GradedElement]):
    """Matrix of a linear map on span(basis), entries are the coordinate coefficients (Fraction)."""
    from .linalg import ExactMatrix

    monos = sorted({m for b in basis for m in b.terms})
    cols = []
    for b in basis:
        img = op(b)
        for m in img.terms:
            if m not in monos:
                raise ValueError("operator leaves the chosen span")
        cols.append([img.terms.get(m, Fraction(0)) for m in monos])
    return ExactMatrix.from_rows([[c[i] for c in cols] for i in range(len(monos))], len(basis))
