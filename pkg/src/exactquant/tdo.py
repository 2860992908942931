"""The anti-involutive TDO built from the Lie-Rinehart star product on A^m.

Elements are PBW normal forms sum_alpha f_alpha d^alpha (coefficients left of
frame monomials in d_1..d_m).  Products are computed with the multinomial
Leibniz rule, with no reference to the super-Weyl code in ``operators``, so the
two can be compared.  A V_0 element (g, u) is identified with its class
g + sum u_i d_i + 1/2 div u, which is what the relation f (x) theta = f * theta forces.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .graded import GradedAlgebra, GradedElement, Mono
from .polyvectors import CdgaModel, PolyvectorDGLA

Multi = Tuple[int, ...]


class TdoAlgebra:
    def __init__(self, m: int, names: Optional[Sequence[str]] = None):
        self.m = m
        self.names = list(names or [f"x{i}" for i in range(1, m + 1)])
        self.A = GradedAlgebra([(n, 0) for n in self.names])
        self.pol = PolyvectorDGLA(CdgaModel([(n, 0) for n in self.names]), 0)

    # elements
    def element(self, terms: Mapping[Multi, GradedElement]) -> "TdoElement":
        return TdoElement(self, terms)

    def zero(self) -> "TdoElement":
        return TdoElement(self, {})

    def function(self, f: GradedElement) -> "TdoElement":
        return TdoElement(self, {(0,) * self.m: f})

    def frame(self, i: int, power: int = 1) -> "TdoElement":
        a = [0] * self.m
        a[i] = power
        return TdoElement(self, {tuple(a): self.A.one()})

    def x(self, i: int) -> GradedElement:
        return self.A.gen(self.names[i])

    def vector_to_pol(self, u: Mapping[int, GradedElement]) -> GradedElement:
        return self.pol.vector({self.names[i]: a for i, a in u.items()})

    def pol_to_vector(self, v: GradedElement) -> Dict[int, GradedElement]:
        out = {}
        for i, n in enumerate(self.names):
            c = v.derivative("xi_" + n, "right")
            if c.terms:
                out[i] = self._restrict(c)
        return out

    def _restrict(self, x: GradedElement) -> GradedElement:
        """Pol function -> A (drops the xi slots, which must be absent)."""
        k = self.m
        t = {}
        for mono, c in x.terms.items():
            if any(mono[k:]):
                raise ValueError("not a function")
            t[mono[:k]] = c
        return GradedElement(self.A, t)

    # Lie-Rinehart data
    def schouten(self, f: GradedElement, u: Mapping[int, GradedElement]) -> GradedElement:
        """[f, u] for a function f and a vector field u (equals -u(f))."""
        return self._restrict(self.pol.bracket(self.pol.function(f), self.vector_to_pol(u)))

    def star_product(self, f: GradedElement, theta: Tuple[GradedElement, Mapping[int, GradedElement]]):
        """f * (g, u) = (fg + 1/2 [f, u], fu)."""
        g, u = theta
        g2 = f * g + self.schouten(f, u) * Fraction(1, 2)
        return g2, {i: f * a for i, a in u.items() if (f * a).terms}

    def v0(self, g: GradedElement, u: Mapping[int, GradedElement]) -> "TdoElement":
        """Class of (g, u) in normal form.

        (0, a d_i) is rewritten using a (x) (0, d_i) = a * (0, d_i) = (1/2 [a, d_i], a d_i),
        so (0, a d_i) = a d_i - 1/2 [a, d_i].
        """
        unit_d = lambda i: {i: self.A.one()}
        out = self.function(g)
        for i, a in u.items():
            corr, _ = self.star_product(a, (self.A.zero(), unit_d(i)))
            out = out + self.function(a) * self.frame(i) - self.function(corr)
        return out

    def normalize(self, word: Iterable[Tuple[GradedElement, Mapping[int, GradedElement]]]) -> "TdoElement":
        out = self.function(self.A.one())
        for g, u in word:
            out = out * self.v0(g, u)
        return out


def _partial(f: GradedElement, names: Sequence[str], gamma: Multi) -> GradedElement:
    for i, k in enumerate(gamma):
        for _ in range(k):
            f = f.derivative(names[i])
            if not f.terms:
                return f
    return f


def _leibniz(alpha: Multi) -> List[Tuple[Multi, int]]:
    """(gamma, prod binom(alpha_i, gamma_i)) for gamma <= alpha."""
    out = []
    for gamma in iproduct(*[range(a + 1) for a in alpha]):
        c = 1
        for a, g in zip(alpha, gamma):
            c *= comb(a, g)
        out.append((tuple(gamma), c))
    return out


class TdoElement:
    __slots__ = ("T", "terms")

    def __init__(self, T: TdoAlgebra, terms: Mapping[Multi, GradedElement]):
        self.T = T
        self.terms: Dict[Multi, GradedElement] = {a: f for a, f in terms.items() if f.terms}

    def __add__(self, other: "TdoElement") -> "TdoElement":
        t = dict(self.terms)
        for a, f in other.terms.items():
            t[a] = t[a] + f if a in t else f
        return TdoElement(self.T, t)

    def __neg__(self):
        return TdoElement(self.T, {a: -f for a, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TdoElement":
        return TdoElement(self.T, {a: f * c for a, f in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TdoElement):
            return self.scale(other)
        names = self.T.names
        t: Dict[Multi, GradedElement] = {}
        for alpha, f in self.terms.items():
            for beta, g in other.terms.items():
                for gamma, c in _leibniz(alpha):
                    dg = _partial(g, names, gamma)
                    if not dg.terms:
                        continue
                    key = tuple(a - gm + b for a, gm, b in zip(alpha, gamma, beta))
                    v = f * dg * c
                    t[key] = t[key] + v if key in t else v
        return TdoElement(self.T, t)

    def __eq__(self, other):
        return isinstance(other, TdoElement) and not (self - other).terms

    def __hash__(self):
        raise TypeError("unhashable")

    def commutator(self, other: "TdoElement") -> "TdoElement":
        return self * other - other * self

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def symbol(self, level: int) -> "TdoElement":
        """Component with frame length level + 1 (the gr^V_level part)."""
        return TdoElement(self.T, {a: f for a, f in self.terms.items() if sum(a) == level + 1})

    def apply(self, a: GradedElement) -> GradedElement:
        out = self.T.A.zero()
        for alpha, f in self.terms.items():
            out = out + f * _partial(a, self.T.names, alpha)
        return out

    def to_operator(self):
        from .operators import Operator

        A = self.T.A
        out = Operator.zero(A)
        for alpha, f in self.terms.items():
            op = Operator.mult(f)
            d = Operator.identity(A)
            for i, k in enumerate(alpha):
                if k:
                    d = d * Operator.d(A, self.T.names[i], k)
            out = out + op * d
        return out

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for alpha in sorted(self.terms, key=lambda a: (sum(a), a)):
            f = self.terms[alpha].render()
            word = "*".join((f"d_{n}" if k == 1 else f"d_{n}^{k}") for n, k in zip(self.T.names, alpha) if k)
            if not word:
                parts.append(f"({f})" if " " in f else f)
            else:
                parts.append(word if f == "1" else f"({f})*{word}")
        return " + ".join(parts)

    __repr__ = render


def tdo_normalize(T: TdoAlgebra, word) -> TdoElement:
    return T.normalize(word)


def star_product(T: TdoAlgebra, f: GradedElement, theta):
    return T.star_product(f, theta)


def tdo_anti_involution(P: TdoElement) -> TdoElement:
    """t with (g, u)^t = (g, -u): on f d^alpha it gives (-1)^{|alpha|} d^alpha o f."""
    T = P.T
    out = T.zero()
    for alpha, f in P.terms.items():
        d = T.function(T.A.one())
        for i, k in enumerate(alpha):
            if k:
                d = d * T.frame(i, k)
        term = d * T.function(f)
        out = out + (term.scale(-1) if sum(alpha) % 2 else term)
    return out


def v_filtration_level(P: TdoElement) -> Optional[int]:
    """max |alpha| - 1 (None for zero)."""
    if not P.terms:
        return None
    return max(sum(a) for a in P.terms) - 1


def multi_indices(m: int, max_len: int) -> List[Multi]:
    return [a for a in iproduct(range(max_len + 1), repeat=m) if sum(a) <= max_len]


def pbw_independence(m: int, max_level: int = 3, coeff_degree: int = 2) -> Tuple[int, int]:
    """(rank, count) for the action matrix of x^beta d^alpha on polynomials.

    Operators with |alpha| <= max_level + 1 and |beta| <= coeff_degree act on
    monomials of degree <= max_level + 1; independence means rank == count.
    """
    from .linalg import ExactMatrix, rank

    T = TdoAlgebra(m)
    A = T.A
    alphas = multi_indices(m, max_level + 1)
    betas = multi_indices(m, coeff_degree)
    inputs = multi_indices(m, max_level + 1)
    ops = []
    for a in alphas:
        for b in betas:
            ops.append(TdoElement(T, {a: A.element({b: Fraction(1)})}))
    outs = multi_indices(m, max_level + 1 + coeff_degree)
    index = {o: i for i, o in enumerate(outs)}
    rows = len(inputs) * len(outs)
    cols = []
    for P in ops:
        col = [Fraction(0)] * rows
        for k, g in enumerate(inputs):
            img = P.apply(A.element({g: Fraction(1)}))
            for mono, c in img.terms.items():
                col[k * len(outs) + index[mono]] += c
        cols.append(col)
    M = ExactMatrix.from_rows([[cols[j][i] for j in range(len(cols))] for i in range(rows)], len(cols))
    return rank(M), len(ops)
