"""Super-Weyl algebra of polynomial differential operators on a free graded-commutative algebra.

An operator is stored as a sum of normal-ordered words x^X d^A (all
multiplications left of all derivations).  d_g is the left derivative in g,
of degree -|g|; the d_g graded-commute among themselves and satisfy
[d_g, h] = delta_{g,h}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from .graded import GradedAlgebra, GradedElement, Mono, _clean
from .scalars import Laurent, RationalFunction, hbar_reflect, render_scalar

Word = Tuple[Mono, Mono]

_REORDER: Dict[GradedAlgebra, Dict[Tuple[Mono, Mono], Dict[Word, Fraction]]] = {}


def _cache(alg: GradedAlgebra):
    c = _REORDER.get(alg)
    if c is None:
        c = _REORDER[alg] = {}
    return c


def _reorder(alg: GradedAlgebra, A: Mono, X: Mono) -> Dict[Word, Fraction]:
    """Normal form of d^A o x^X."""
    cache = _cache(alg)
    key = (A, X)
    if key in cache:
        return cache[key]
    zero = alg.unit_mono
    if A == zero:
        out = {(X, zero): Fraction(1)}
    else:
        g = max(i for i, a in enumerate(A) if a)
        Ap = list(A)
        Ap[g] -= 1
        Ap = tuple(Ap)
        out: Dict[Word, Fraction] = {}
        pg = alg.parities[g]
        # d_g x^X = (d_g x^X) + (-1)^{|g||X|} x^X d_g
        if X[g]:
            if pg:
                k = sum(X[j] * alg.parities[j] for j in range(g))
                c = Fraction(-1 if k % 2 else 1)
            else:
                c = Fraction(X[g])
            Xm = list(X)
            Xm[g] -= 1
            for w, v in _reorder(alg, Ap, tuple(Xm)).items():
                out[w] = out.get(w, 0) + c * v
        s = -1 if (pg and alg.mono_parity(X)) else 1
        for (Y, B), v in _reorder(alg, Ap, X).items():
            if pg and B[g]:
                continue
            Bn = list(B)
            Bn[g] += 1
            w = (Y, tuple(Bn))
            out[w] = out.get(w, 0) + s * v
        out = {w: v for w, v in out.items() if v}
    cache[key] = out
    return out


class Operator:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: GradedAlgebra, terms: Mapping[Word, object]):
        self.alg = alg
        t = {}
        for (X, A), c in terms.items():
            if any(e > 1 and p for e, p in zip(X, alg.parities)):
                continue
            if any(e > 1 and p for e, p in zip(A, alg.parities)):
                continue
            if isinstance(c, int):
                c = Fraction(c)
            if c:
                t[(X, A)] = c
        self.terms: Dict[Word, object] = t

    # constructors
    @classmethod
    def zero(cls, alg: GradedAlgebra) -> "Operator":
        return cls(alg, {})

    @classmethod
    def identity(cls, alg: GradedAlgebra, c=1) -> "Operator":
        return cls(alg, {(alg.unit_mono, alg.unit_mono): c})

    @classmethod
    def mult(cls, x: GradedElement) -> "Operator":
        alg = x.alg
        return cls(alg, {(m, alg.unit_mono): c for m, c in x.terms.items()})

    @classmethod
    def d(cls, alg: GradedAlgebra, name: str, power: int = 1) -> "Operator":
        return cls(alg, {(alg.unit_mono, alg.unit_vector(alg.index[name], power)): Fraction(1)})

    @classmethod
    def gen(cls, alg: GradedAlgebra, name: str) -> "Operator":
        return cls.mult(alg.gen(name))

    # structure
    def _word_degree(self, w: Word) -> int:
        X, A = w
        return self.alg.mono_degree(X) - self.alg.mono_degree(A)

    def degrees(self) -> set:
        return {self._word_degree(w) for w in self.terms}

    @property
    def degree(self) -> Optional[int]:
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    @property
    def parity(self) -> Optional[int]:
        ps = {d % 2 for d in self.degrees()}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def order(self) -> int:
        """Differential order (max number of derivations)."""
        return max((sum(A) for _, A in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "Operator"):
        if other.alg != self.alg:
            raise ValueError("operators on different algebras")

    def _lift(self, other) -> "Operator":
        if isinstance(other, Operator):
            self._check(other)
            return other
        if isinstance(other, GradedElement):
            return Operator.mult(other)
        return Operator.identity(self.alg, other)

    # linear structure
    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t[w] + c if w in t else c
        return Operator(self.alg, _clean(t))

    __radd__ = __add__

    def __neg__(self):
        return Operator(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Operator":
        if isinstance(c, int):
            c = Fraction(c)
        return Operator(self.alg, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Operator, GradedElement)):
            return compose(self, self._lift(other))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, GradedElement):
            return compose(Operator.mult(other), self)
        if isinstance(other, int):
            other = Fraction(other)
        return Operator(self.alg, {w: other * v for w, v in self.terms.items()})

    def __pow__(self, k: int):
        out = Operator.identity(self.alg)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (Operator, GradedElement, int, Fraction, Laurent)):
            return (self - self._lift(other)).is_zero()
        return NotImplemented

    def __hash__(self):
        raise TypeError("Operator is unhashable")

    # coefficient maps
    def map_coeffs(self, fn) -> "Operator":
        return Operator(self.alg, {w: fn(c) for w, c in self.terms.items()})

    def hbar_euler(self) -> "Operator":
        """hbar d/dhbar applied to the coefficients."""
        return self.map_coeffs(lambda c: c.euler() if isinstance(c, Laurent) else 0)

    def hbar_reflect(self) -> "Operator":
        return self.map_coeffs(hbar_reflect)

    # action
    def __call__(self, x: GradedElement) -> GradedElement:
        return apply(self, x)

    def render(self) -> str:
        if not self.terms:
            return "0"
        alg = self.alg
        parts = []
        for w in sorted(self.terms, key=lambda w: (sum(w[1]), sum(w[0]), tuple(-e for e in w[1]), tuple(-e for e in w[0]))):
            X, A = w
            c = self.terms[w]
            letters = [(g.name if e == 1 else f"{g.name}^{e}") for g, e in zip(alg.gens, X) if e]
            letters += [(f"d_{g.name}" if e == 1 else f"d_{g.name}^{e}") for g, e in zip(alg.gens, A) if e]
            word = "*".join(letters)
            cs = render_scalar(c)
            if isinstance(c, (Laurent, RationalFunction)) and " " in cs:
                cs = f"({cs})"
            if not word:
                parts.append(cs)
            elif cs == "1":
                parts.append(word)
            elif cs == "-1":
                parts.append("-" + word)
            else:
                parts.append(f"{cs}*{word}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Operator({self.render()})"

    __str__ = render


def compose(P: Operator, Q: Operator) -> Operator:
    """Normal-ordered product P o Q."""
    P._check(Q)
    alg = P.alg
    mm = alg.mono_mul
    out: Dict[Word, object] = {}
    for (X1, A1), c1 in P.terms.items():
        for (X2, A2), c2 in Q.terms.items():
            c12 = c1 * c2
            for (Y, B), v in _reorder(alg, A1, X2).items():
                r1 = mm(X1, Y)
                if r1 is None:
                    continue
                r2 = mm(B, A2)
                if r2 is None:
                    continue
                s = r1[0] * r2[0] * v
                w = (r1[1], r2[1])
                val = c12 * s
                out[w] = out[w] + val if w in out else val
    return Operator(alg, _clean(out))


def apply(P: Operator, x: GradedElement) -> GradedElement:
    """Act on the module of algebra elements."""
    alg = P.alg
    if x.alg != alg:
        raise ValueError("operator and element live over different algebras")
    out = alg.zero()
    cache: Dict[Mono, GradedElement] = {}
    for (X, A), c in P.terms.items():
        if A not in cache:
            y = x
            for i in range(alg.n - 1, -1, -1):
                for _ in range(A[i]):
                    y = y.derivative(alg.gens[i].name, "left")
            cache[A] = y
        y = cache[A]
        if y.terms:
            out = out + alg.element({X: c}) * y
    return out


def graded_commutator(P: Operator, Q: Operator) -> Operator:
    if not P.terms or not Q.terms:
        return Operator.zero(P.alg)
    p, q = P.parity, Q.parity
    if p is None or q is None:
        raise ValueError("graded commutator needs operators of homogeneous parity")
    sign = -1 if (p and q) else 1
    return compose(P, Q) - compose(Q, P).scale(sign)


def ad(P: Operator, Q: Operator, times: int = 1) -> Operator:
    out = Q
    for _ in range(times):
        out = graded_commutator(P, out)
    return out


def anti_involute(P: Operator) -> Operator:
    """Generator rule: x^t = x, d_g^t = -d_g, extended with (PQ)^t = (-1)^{|P||Q|} Q^t P^t."""
    alg = P.alg
    out: Dict[Word, object] = {}
    for (X, A), c in P.terms.items():
        k = alg.mono_parity(X) * alg.mono_parity(A) + sum(A)
        sign = -1 if k % 2 else 1
        for w, v in _reorder(alg, A, X).items():
            val = c * (sign * v)
            out[w] = out[w] + val if w in out else val
    return Operator(alg, _clean(out))


def sesquilinear_star(P: Operator) -> Operator:
    """P*(hbar) = -P^t(-hbar)."""
    return -anti_involute(P).hbar_reflect()


def exp_series_terminates(P: Operator, Q: Operator, max_terms: int = 32) -> int:
    """Smallest k with ad_P^k(Q) = 0, or -1 if none within max_terms."""
    cur = Q
    for k in range(max_terms + 1):
        if not cur.terms:
            return k
        cur = graded_commutator(P, cur)
    return -1
