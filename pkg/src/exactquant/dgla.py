"""DGLAs with a weight grading: filtration F, weight derivation sigma, Maurer-Cartan
checks, the cocone DGLA carrying a formal derivation, gauge conjugation, and
polynomial de Rham forms on low-dimensional simplices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .graded import GradedAlgebra, GradedElement, Mono, morphism
from .operators import Operator, graded_commutator


class WindowOverflow(ArithmeticError):
    """A computed element leaves the declared truncation window."""

    def __init__(self, what: str, value):
        self.what, self.value = what, value
        super().__init__(f"{what}: {value}")


@dataclass(frozen=True)
class Window:
    """Truncation window; None means unbounded in that direction."""

    max_weight: Optional[int] = None
    max_poly_degree: Optional[int] = None
    hbar_order: Optional[int] = None


class DGLA:
    """Interface: subclasses supply zero, bracket, differential, degree and weight_components."""

    window: Window = Window()

    def zero(self):
        raise NotImplementedError

    def bracket(self, a, b):
        raise NotImplementedError

    def differential(self, a):
        raise NotImplementedError

    def degree(self, a) -> Optional[int]:
        raise NotImplementedError

    def weight_components(self, a) -> Dict[int, object]:
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return not a

    def scale(self, a, c):
        return a * c

    def add(self, a, b):
        return a + b

    def render(self, a) -> str:
        return a.render() if hasattr(a, "render") else str(a)

    def check_window(self, a, what: str = "result"):
        w = self.window
        if w.max_weight is not None:
            for m in self.weight_components(a):
                if m > w.max_weight:
                    raise WindowOverflow(f"{what} has weight {m} beyond the window {w.max_weight}", self.render(a))
        return a


# --------------------------------------------------------------------------
# filtration and sigma


def filtration_level(L: DGLA, x) -> Optional[int]:
    """Largest p with x in F^p = prod_{m >= p-1} W_m (None for x = 0, which lies in every F^p)."""
    ws = [m for m, c in L.weight_components(x).items() if not L.is_zero(c)]
    if not ws:
        return None
    return min(ws) + 1


def sigma(L: DGLA, x):
    """Multiply the weight-m component by m."""
    out = L.zero()
    for m, c in L.weight_components(x).items():
        if m:
            out = L.add(out, L.scale(c, Fraction(m)))
    return out


def mc_defect(L: DGLA, x):
    """delta x + 1/2 [x, x]."""
    d = L.add(L.differential(x), L.scale(L.bracket(x, x), Fraction(1, 2)))
    return L.check_window(d, "Maurer-Cartan defect")


# --------------------------------------------------------------------------
# cocone


@dataclass(frozen=True)
class CoconeElement:
    """a + eps*b with eps of degree 1 placed on the left; eps^2 = 0."""

    pi: object
    dpart: object


class CoconeDGLA(DGLA):
    """Cocone of sigma: L + eps L with d(a + eps b) = delta a - eps(delta b + sigma a).

    Brackets: [a, eps b'] = (-1)^{|a|} eps [a, b'], [eps b, a'] = eps [b, a'], [eps b, eps b'] = 0.
    With these rules the eps-part of the MC equation of pi + eps D is
    -(delta D + [pi, D] + sigma pi).
    """

    def __init__(self, base: DGLA):
        self.base = base
        self.window = base.window

    def zero(self):
        return CoconeElement(self.base.zero(), self.base.zero())

    def element(self, a=None, b=None) -> CoconeElement:
        L = self.base
        return CoconeElement(L.zero() if a is None else a, L.zero() if b is None else b)

    def is_zero(self, c: CoconeElement) -> bool:
        return self.base.is_zero(c.pi) and self.base.is_zero(c.dpart)

    def add(self, x: CoconeElement, y: CoconeElement) -> CoconeElement:
        L = self.base
        return CoconeElement(L.add(x.pi, y.pi), L.add(x.dpart, y.dpart))

    def scale(self, x: CoconeElement, c) -> CoconeElement:
        L = self.base
        return CoconeElement(L.scale(x.pi, c), L.scale(x.dpart, c))

    def degree(self, x: CoconeElement) -> Optional[int]:
        L = self.base
        if not L.is_zero(x.pi):
            d = L.degree(x.pi)
            if not L.is_zero(x.dpart) and L.degree(x.dpart) != (None if d is None else d - 1):
                return None
            return d
        if not L.is_zero(x.dpart):
            d = L.degree(x.dpart)
            return None if d is None else d + 1
        return None

    def bracket(self, x: CoconeElement, y: CoconeElement) -> CoconeElement:
        L = self.base
        a, b = x.pi, x.dpart
        a2, b2 = y.pi, y.dpart
        top = L.bracket(a, a2)
        eps = L.zero()
        if not L.is_zero(a) and not L.is_zero(b2):
            da = L.degree(a)
            if da is None:
                raise ValueError("cocone bracket needs homogeneous inputs")
            t = L.bracket(a, b2)
            eps = L.add(eps, L.scale(t, -1) if da % 2 else t)
        if not L.is_zero(b) and not L.is_zero(a2):
            eps = L.add(eps, L.bracket(b, a2))
        return CoconeElement(top, eps)

    def differential(self, x: CoconeElement) -> CoconeElement:
        L = self.base
        return CoconeElement(L.differential(x.pi),
                             L.scale(L.add(L.differential(x.dpart), sigma(L, x.pi)), -1))

    def weight_components(self, x: CoconeElement):
        L = self.base
        out: Dict[int, CoconeElement] = {}
        for m, c in L.weight_components(x.pi).items():
            out[m] = CoconeElement(c, L.zero())
        for m, c in L.weight_components(x.dpart).items():
            prev = out.get(m, CoconeElement(L.zero(), L.zero()))
            out[m] = CoconeElement(prev.pi, L.add(prev.dpart, c))
        return out

    def render(self, x: CoconeElement) -> str:
        return f"({self.base.render(x.pi)}) + eps*({self.base.render(x.dpart)})"


def cocone_defect(L: DGLA, c: CoconeElement) -> Tuple[object, object]:
    """(mc_defect(pi), delta D + [pi, D] + sigma(pi)).

    The second entry is also recomputed as minus the eps-part of the MC defect in
    the cocone DGLA; the two routes must agree.
    """
    first = mc_defect(L, c.pi)
    second = L.add(L.add(L.differential(c.dpart), L.bracket(c.pi, c.dpart)), sigma(L, c.pi))
    L.check_window(second, "derivation defect")
    C = CoconeDGLA(L)
    via_cocone = mc_defect(C, c)
    if not L.is_zero(L.add(via_cocone.pi, L.scale(first, -1))) or \
            not L.is_zero(L.add(via_cocone.dpart, second)):
        raise AssertionError("cocone MC defect disagrees with the direct formulas")
    return first, second


# --------------------------------------------------------------------------
# gauge conjugation on operator algebras


class SeriesDoesNotTerminate(ArithmeticError):
    def __init__(self, k: int, term: Operator):
        self.k, self.term = k, term
        super().__init__(f"ad series still nonzero at order {k}: {term.render()}")


def _exp_ad(phi: Operator, X: Operator, sign: int, max_terms: int) -> Operator:
    total = X
    cur = X
    for k in range(1, max_terms + 1):
        cur = graded_commutator(phi, cur)
        if cur.is_zero():
            return total
        if sign < 0:
            cur = -cur
        total = total + cur.scale(Fraction(1, factorial(k)))
        # keep cur as (sign*ad)^k X without the factorial
    raise SeriesDoesNotTerminate(max_terms, cur)


def conjugate(X: Operator, phi: Operator, max_terms: int = 24) -> Operator:
    """exp(-phi) X exp(phi) = sum_k (-ad_phi)^k X / k!  (phi even)."""
    if phi.parity != 0:
        raise ValueError("gauge parameter must be even")
    return _exp_ad(phi, X, -1, max_terms)


def gauge_conjugate(delta0: Operator, Delta: Operator, phi: Operator, max_terms: int = 24) -> Operator:
    return conjugate(delta0 + Delta, phi, max_terms)


def transport_connection(D: Operator, phi: Operator, max_terms: int = 24) -> Operator:
    """Connection after the gauge change exp(phi): hbar d/dhbar(phi) + exp(-phi) D exp(phi)."""
    return phi.hbar_euler() + conjugate(D, phi, max_terms)


# --------------------------------------------------------------------------
# a finite-dimensional DGLA given by structure constants


class FiniteDGLA(DGLA):
    """Basis names with degree and weight; bracket and differential from tables.

    Elements are dicts name -> Fraction.  ``brackets[(u, v)]`` gives [u, v] for
    basis vectors; the opposite order is filled in by graded antisymmetry.
    """

    def __init__(self, basis: Sequence[Tuple[str, int, int]],
                 brackets: Mapping[Tuple[str, str], Mapping[str, object]],
                 differential: Optional[Mapping[str, Mapping[str, object]]] = None):
        self.names = [b[0] for b in basis]
        self.deg = {b[0]: b[1] for b in basis}
        self.wt = {b[0]: b[2] for b in basis}
        table: Dict[Tuple[str, str], Dict[str, Fraction]] = {}
        for (u, v), val in brackets.items():
            val = {k: Fraction(c) for k, c in val.items() if c}
            table[(u, v)] = val
            s = -(-1) ** (self.deg[u] * self.deg[v])
            table[(v, u)] = {k: s * c for k, c in val.items()}
        self.table = table
        self.diff = {k: {n: Fraction(c) for n, c in v.items()} for k, v in (differential or {}).items()}

    def vec(self, **coeffs) -> Dict[str, Fraction]:
        return {k: Fraction(v) for k, v in coeffs.items() if v}

    def zero(self):
        return {}

    def is_zero(self, a) -> bool:
        return not any(a.values())

    def add(self, a, b):
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, 0) + v
        return {k: v for k, v in out.items() if v}

    def scale(self, a, c):
        return {k: v * c for k, v in a.items() if v * c}

    def bracket(self, a, b):
        out: Dict[str, Fraction] = {}
        for u, cu in a.items():
            for v, cv in b.items():
                for k, c in self.table.get((u, v), {}).items():
                    out[k] = out.get(k, 0) + cu * cv * c
        return {k: v for k, v in out.items() if v}

    def differential(self, a):
        out: Dict[str, Fraction] = {}
        for u, cu in a.items():
            for k, c in self.diff.get(u, {}).items():
                out[k] = out.get(k, 0) + cu * c
        return {k: v for k, v in out.items() if v}

    def degree(self, a):
        ds = {self.deg[k] for k, v in a.items() if v}
        return ds.pop() if len(ds) == 1 else None

    def weight_components(self, a):
        out: Dict[int, Dict[str, Fraction]] = {}
        for k, v in a.items():
            if v:
                out.setdefault(self.wt[k], {})[k] = v
        return dict(sorted(out.items()))

    def render(self, a) -> str:
        if not a:
            return "0"
        return " + ".join(f"{a[k]}*{k}" for k in self.names if a.get(k)).replace("+ -", "- ")


def toy_nilpotent_dgla() -> FiniteDGLA:
    """x in degree 0, a and b in degree 1, [x, a] = b, zero differential."""
    return FiniteDGLA([("x", 0, 0), ("a", 1, 1), ("b", 1, 1)], {("x", "a"): {"b": 1}})


# --------------------------------------------------------------------------
# polynomial forms on simplices


class SimplicialForms:
    """Omega(Delta^n) in reduced coordinates t_1..t_n (t_0 = 1 - sum t_i), n <= 2."""

    def __init__(self, n: int, max_poly_degree: Optional[int] = None):
        if not 0 <= n <= 2:
            raise ValueError("simplicial level must be 0, 1 or 2")
        self.n = n
        gens = [(f"t{i}", 0) for i in range(1, n + 1)] + [(f"dt{i}", 1) for i in range(1, n + 1)]
        self.alg = GradedAlgebra(gens)
        self.max_poly_degree = max_poly_degree

    def t(self, i: int) -> GradedElement:
        """Barycentric coordinate t_i, including t_0."""
        if i == 0:
            out = self.alg.one()
            for j in range(1, self.n + 1):
                out = out - self.alg.gen(f"t{j}")
            return out
        return self.alg.gen(f"t{i}")

    def dt(self, i: int) -> GradedElement:
        if i == 0:
            out = self.alg.zero()
            for j in range(1, self.n + 1):
                out = out - self.alg.gen(f"dt{j}")
            return out
        return self.alg.gen(f"dt{i}")

    def d(self, x: GradedElement) -> GradedElement:
        alg = self.alg
        imgs = {f"t{i}": alg.gen(f"dt{i}") for i in range(1, self.n + 1)}
        return x.apply_derivation(imgs, 1)

    def poly_degree(self, x: GradedElement) -> int:
        idx = [self.alg.index[f"t{i}"] for i in range(1, self.n + 1)]
        return max((sum(m[i] for i in idx) for m in x.terms), default=0)

    def face(self, k: int) -> "Tuple[SimplicialForms, object]":
        """Restriction to the k-th face {t_k = 0} as an algebra morphism into Omega(Delta^{n-1})."""
        if self.n == 0:
            raise ValueError("a point has no faces")
        low = SimplicialForms(self.n - 1, self.max_poly_degree)
        # barycentric images t_j -> s_{j'} with s the face coordinates
        images_bary = []
        for j in range(self.n + 1):
            if j == k:
                images_bary.append(None)
            else:
                images_bary.append(j if j < k else j - 1)
        imgs = {}
        for j in range(1, self.n + 1):
            tgt = images_bary[j]
            if tgt is None:
                imgs[f"t{j}"] = low.alg.zero()
                imgs[f"dt{j}"] = low.alg.zero()
            else:
                imgs[f"t{j}"] = low.t(tgt)
                imgs[f"dt{j}"] = low.dt(tgt)
        return low, morphism(self.alg, low.alg, imgs)


class TensorForms(DGLA):
    """L (x) Omega(Delta^n).  Elements: dict form-monomial -> L-element.

    [x u, y v] = (-1)^{|u||y|} [x, y] uv and d(x u) = delta x u + (-1)^{|x|} x du.
    """

    def __init__(self, L: DGLA, forms: SimplicialForms):
        self.L = L
        self.forms = forms
        self.window = Window(L.window.max_weight, forms.max_poly_degree, L.window.hbar_order)

    def zero(self):
        return {}

    def is_zero(self, a) -> bool:
        return all(self.L.is_zero(v) for v in a.values())

    def _clean(self, d):
        return {m: v for m, v in d.items() if not self.L.is_zero(v)}

    def add(self, a, b):
        out = dict(a)
        for m, v in b.items():
            out[m] = self.L.add(out[m], v) if m in out else v
        return self._clean(out)

    def scale(self, a, c):
        return self._clean({m: self.L.scale(v, c) for m, v in a.items()})

    def tensor(self, x, u: GradedElement):
        out = {}
        for m, c in u.terms.items():
            out[m] = self.L.scale(x, c)
        return self._clean(out)

    def _fdeg(self, m: Mono) -> int:
        return self.forms.alg.mono_degree(m)

    def degree(self, a):
        ds = set()
        for m, v in a.items():
            d = self.L.degree(v)
            if d is None:
                return None
            ds.add(d + self._fdeg(m))
        return ds.pop() if len(ds) == 1 else None

    def bracket(self, a, b):
        L, alg = self.L, self.forms.alg
        out = {}
        for u, x in a.items():
            for v, y in b.items():
                r = alg.mono_mul(u, v)
                if r is None:
                    continue
                s, uv = r
                dy = L.degree(y)
                if dy is None:
                    raise ValueError("tensor bracket needs homogeneous coefficients")
                if (self._fdeg(u) * dy) % 2:
                    s = -s
                br = L.bracket(x, y)
                if L.is_zero(br):
                    continue
                br = L.scale(br, s) if s < 0 else br
                out[uv] = L.add(out[uv], br) if uv in out else br
        return self._check_deg(self._clean(out))

    def differential(self, a):
        L, F = self.L, self.forms
        out = {}
        for u, x in a.items():
            dx = L.differential(x)
            if not L.is_zero(dx):
                out[u] = L.add(out[u], dx) if u in out else dx
            du = F.d(F.alg.element({u: Fraction(1)}))
            dgx = L.degree(x)
            sgn = -1 if (dgx or 0) % 2 else 1
            for m, c in du.terms.items():
                v = L.scale(x, c * sgn)
                out[m] = L.add(out[m], v) if m in out else v
        return self._check_deg(self._clean(out))

    def _check_deg(self, a):
        cap = self.forms.max_poly_degree
        if cap is not None:
            for m in a:
                deg = sum(m[: self.forms.n])
                if deg > cap:
                    raise WindowOverflow(f"polynomial degree {deg} exceeds cutoff {cap}", m)
        return a

    def weight_components(self, a):
        out: Dict[int, dict] = {}
        for u, x in a.items():
            for w, c in self.L.weight_components(x).items():
                out.setdefault(w, {})[u] = c
        return dict(sorted(out.items()))

    def restrict(self, a, k: int):
        """Apply the k-th face restriction to the form factor."""
        low, phi = self.forms.face(k)
        T = TensorForms(self.L, low)
        out = {}
        for u, x in a.items():
            img = phi(self.forms.alg.element({u: Fraction(1)}))
            out = T.add(out, T.tensor(x, img))
        return T, out

    def render(self, a) -> str:
        if not a:
            return "0"
        alg = self.forms.alg
        parts = []
        for m in sorted(a):
            word = alg.element({m: Fraction(1)}).render()
            parts.append(f"({self.L.render(a[m])})" + ("" if word == "1" else f"*{word}"))
        return " + ".join(parts)


def constant_extension(T: TensorForms, x):
    return T.tensor(x, T.forms.alg.one())


def simplicial_mc_check(L: DGLA, n: int, x, max_poly_degree: Optional[int] = None):
    """MC equation in L (x) Omega(Delta^n).  ``x`` is a TensorForms element.

    Returns (passes, defect).  Faces of an MC element are MC, which is also checked.
    """
    T = TensorForms(L, SimplicialForms(n, max_poly_degree))
    defect = mc_defect(T, x)
    ok = T.is_zero(defect)
    if ok and n > 0:
        for k in range(n + 1):
            low, y = T.restrict(x, k)
            if not low.is_zero(mc_defect(low, y)):
                return False, defect
    return ok, defect
