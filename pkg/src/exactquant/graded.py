"""Free graded-commutative algebras on named generators.

A monomial is an exponent tuple in declaration order; the canonical word is
x_1^{e_1} ... x_n^{e_n}.  All Koszul signs are normalized against that order,
so two elements are equal exactly when their term dictionaries agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .scalars import Laurent, RationalFunction, render_scalar

Mono = Tuple[int, ...]


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    weight: int = 0

    @property
    def parity(self) -> int:
        return self.degree % 2


def _is_zero(c) -> bool:
    return not c


class GradedAlgebra:
    """Free graded-commutative algebra k[x_1, ..., x_n] with x_i x_j = (-1)^{|x_i||x_j|} x_j x_i."""

    def __init__(self, generators: Iterable[Union[Generator, Tuple]]):
        gens = []
        for g in generators:
            gens.append(g if isinstance(g, Generator) else Generator(*g))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        self.gens: Tuple[Generator, ...] = tuple(gens)
        self.index: Dict[str, int] = {g.name: i for i, g in enumerate(gens)}
        self.parities: Tuple[int, ...] = tuple(g.parity for g in gens)
        self.degrees: Tuple[int, ...] = tuple(g.degree for g in gens)
        self.weights: Tuple[int, ...] = tuple(g.weight for g in gens)
        self.n = len(gens)
        self._mul_cache: Dict[Tuple[Mono, Mono], Optional[Tuple[int, Mono]]] = {}

    def __eq__(self, other):
        return isinstance(other, GradedAlgebra) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def __repr__(self):
        return "GradedAlgebra(" + ", ".join(f"{g.name}:{g.degree}" for g in self.gens) + ")"

    # monomial arithmetic
    @property
    def unit_mono(self) -> Mono:
        return (0,) * self.n

    def unit_vector(self, i: int, e: int = 1) -> Mono:
        m = [0] * self.n
        m[i] = e
        return tuple(m)

    def mono_degree(self, m: Mono) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def mono_parity(self, m: Mono) -> int:
        return sum(e * p for e, p in zip(m, self.parities)) % 2

    def mono_weight(self, m: Mono) -> int:
        return sum(e * w for e, w in zip(m, self.weights))

    def mono_mul(self, a: Mono, b: Mono) -> Optional[Tuple[int, Mono]]:
        """Return (sign, a*b) or None when an odd generator repeats."""
        key = (a, b)
        hit = self._mul_cache.get(key, key)
        if hit is not key:
            return hit
        par = self.parities
        out = None
        if not any(p and x and y for p, x, y in zip(par, a, b)):
            # move odd letters of b left past the odd letters of a with larger index
            s = 0
            odd_a_after = 0
            for j in range(self.n - 1, -1, -1):
                if par[j]:
                    if b[j]:
                        s += odd_a_after
                    if a[j]:
                        odd_a_after += 1
            out = (-1 if s % 2 else 1, tuple(x + y for x, y in zip(a, b)))
        self._mul_cache[key] = out
        return out

    # element constructors
    def element(self, terms: Mapping[Mono, object]) -> "GradedElement":
        return GradedElement(self, terms)

    def zero(self) -> "GradedElement":
        return GradedElement(self, {})

    def one(self) -> "GradedElement":
        return GradedElement(self, {self.unit_mono: Fraction(1)})

    def scalar(self, c) -> "GradedElement":
        return GradedElement(self, {self.unit_mono: c})

    def gen(self, name: str) -> "GradedElement":
        return GradedElement(self, {self.unit_vector(self.index[name]): Fraction(1)})

    def __getitem__(self, name: str) -> "GradedElement":
        return self.gen(name)

    def mono(self, **exps) -> "GradedElement":
        m = [0] * self.n
        for k, v in exps.items():
            m[self.index[k]] = v
        return GradedElement(self, {tuple(m): Fraction(1)})

    def parity_of(self, name: str) -> int:
        return self.parities[self.index[name]]

    def degree_of(self, name: str) -> int:
        return self.degrees[self.index[name]]


def _clean(terms: Mapping[Mono, object]) -> Dict[Mono, object]:
    return {m: c for m, c in terms.items() if not _is_zero(c)}


class GradedElement:
    """A finite sum of monomials with exact coefficients (Fraction or Laurent)."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: GradedAlgebra, terms: Mapping[Mono, object]):
        self.alg = alg
        t = {}
        for m, c in terms.items():
            if len(m) != alg.n:
                raise ValueError("monomial length does not match the algebra")
            if any(e > 1 and p for e, p in zip(m, alg.parities)):
                continue
            if isinstance(c, int):
                c = Fraction(c)
            if not _is_zero(c):
                t[m] = c
        self.terms: Dict[Mono, object] = t

    # bookkeeping
    def _check(self, other: "GradedElement"):
        if other.alg is not self.alg and other.alg != self.alg:
            raise ValueError("elements live in different algebras")

    def _lift(self, other) -> "GradedElement":
        if isinstance(other, GradedElement):
            self._check(other)
            return other
        return self.alg.scalar(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set:
        return {self.alg.mono_degree(m) for m in self.terms}

    @property
    def degree(self) -> Optional[int]:
        """Cohomological degree if homogeneous (None for zero or mixed)."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    @property
    def parity(self) -> Optional[int]:
        ps = {self.alg.mono_parity(m) for m in self.terms}
        return ps.pop() if len(ps) == 1 else (0 if not ps else None)

    def weights(self) -> set:
        return {self.alg.mono_weight(m) for m in self.terms}

    def weight_components(self) -> Dict[int, "GradedElement"]:
        out: Dict[int, Dict[Mono, object]] = {}
        for m, c in self.terms.items():
            out.setdefault(self.alg.mono_weight(m), {})[m] = c
        return {w: GradedElement(self.alg, t) for w, t in sorted(out.items())}

    def degree_components(self) -> Dict[int, "GradedElement"]:
        out: Dict[int, Dict[Mono, object]] = {}
        for m, c in self.terms.items():
            out.setdefault(self.alg.mono_degree(m), {})[m] = c
        return {d: GradedElement(self.alg, t) for d, t in sorted(out.items())}

    def filter_terms(self, pred: Callable[[Mono], bool]) -> "GradedElement":
        return GradedElement(self.alg, {m: c for m, c in self.terms.items() if pred(m)})

    def map_coeffs(self, fn) -> "GradedElement":
        return GradedElement(self.alg, {m: fn(c) for m, c in self.terms.items()})

    def coeff(self, mono: Mono):
        return self.terms.get(mono, Fraction(0))

    # ring operations
    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return GradedElement(self.alg, _clean(t))

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, GradedElement):
            if isinstance(other, int):
                other = Fraction(other)
            return GradedElement(self.alg, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        t: Dict[Mono, object] = {}
        mm = self.alg.mono_mul
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                r = mm(a, b)
                if r is None:
                    continue
                s, m = r
                v = ca * cb if s > 0 else -(ca * cb)
                t[m] = t[m] + v if m in t else v
        return GradedElement(self.alg, _clean(t))

    def __rmul__(self, other):
        if isinstance(other, int):
            other = Fraction(other)
        return GradedElement(self.alg, {m: other * c for m, c in self.terms.items()})

    def __pow__(self, k: int):
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GradedElement):
            if other.alg != self.alg:
                return False
            return (self - other).is_zero()
        try:
            return (self - self.alg.scalar(other)).is_zero()
        except TypeError:
            return NotImplemented

    def __hash__(self):
        raise TypeError("GradedElement is unhashable")

    # calculus
    def derivative(self, name: str, side: str = "left") -> "GradedElement":
        """Left (d->/dg) or right (<-d/dg) partial derivative."""
        alg = self.alg
        i = alg.index[name]
        pg = alg.parities[i]
        t: Dict[Mono, object] = {}
        for m, c in self.terms.items():
            e = m[i]
            if not e:
                continue
            if pg:
                if side == "left":
                    k = sum(m[j] * alg.parities[j] for j in range(i))
                else:
                    k = sum(m[j] * alg.parities[j] for j in range(i + 1, alg.n))
                sign = -1 if k % 2 else 1
                coef = c if sign > 0 else -c
            else:
                coef = c * e
            nm = list(m)
            nm[i] -= 1
            nm = tuple(nm)
            t[nm] = t[nm] + coef if nm in t else coef
        return GradedElement(alg, _clean(t))

    def apply_derivation(self, images: Mapping[str, "GradedElement"], degree: int) -> "GradedElement":
        """Apply the degree-``degree`` derivation determined by generator images (missing names map to 0)."""
        return derivation(self.alg, images, degree)(self)

    def substitute(self, target: GradedAlgebra, images: Mapping[str, "GradedElement"]) -> "GradedElement":
        """Algebra morphism sending each generator to its image (missing names map to themselves in the target)."""
        return morphism(self.alg, target, images)(self)

    # display
    def render(self) -> str:
        if not self.terms:
            return "0"
        alg = self.alg
        parts = []
        for m in sorted(self.terms, key=lambda m: (sum(m), tuple(-e for e in m))):
            c = self.terms[m]
            word = "*".join(
                (g.name if e == 1 else f"{g.name}^{e}") for g, e in zip(alg.gens, m) if e
            )
            cs = render_scalar(c)
            if isinstance(c, (Laurent, RationalFunction)) and (" " in cs):
                cs = f"({cs})"
            if not word:
                parts.append(cs)
            elif cs == "1":
                parts.append(word)
            elif cs == "-1":
                parts.append("-" + word)
            else:
                parts.append(f"{cs}*{word}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"<{self.render()}>"

    __str__ = render


def derivation(alg: GradedAlgebra, images: Mapping[str, GradedElement], degree: int,
               target: Optional[GradedAlgebra] = None) -> Callable[[GradedElement], GradedElement]:
    """Return the graded derivation D with D(g) = images[g], |D| = degree.

    D(x_1^{e_1} ... x_n^{e_n}) = sum_i (-1)^{|D| sum_{j<i} e_j|x_j|}
    x_1^{e_1} ... (e_i x_i^{e_i - 1} D(x_i)) ... x_n^{e_n}.
    Images may live in a larger algebra ``target`` containing ``alg``'s generators.
    """
    tgt = target or alg
    emb = _embedding(alg, tgt)
    imgs = [images.get(g.name) for g in alg.gens]
    for g, img in zip(alg.gens, imgs):
        if img is not None and img.degrees() - {g.degree + degree}:
            raise ValueError(f"image of {g.name} must have degree {g.degree + degree}, got {sorted(img.degrees())}")
    dpar = degree % 2
    cache: Dict[Mono, GradedElement] = {}

    def on_mono(m: Mono) -> GradedElement:
        if m in cache:
            return cache[m]
        out = tgt.zero()
        for i, e in enumerate(m):
            if not e or imgs[i] is None or not imgs[i].terms:
                continue
            pre = tuple(m[:i]) + (0,) * (alg.n - i)
            mid = list((0,) * alg.n)
            mid[i] = e - 1
            post = (0,) * (i + 1) + tuple(m[i + 1:])
            k = dpar * sum(m[j] * alg.parities[j] for j in range(i))
            coef = Fraction(e if not alg.parities[i] else 1) * (-1 if k % 2 else 1)
            term = (tgt.element({emb(pre): Fraction(1)}) * tgt.element({emb(tuple(mid)): coef})
                    * imgs[i] * tgt.element({emb(post): Fraction(1)}))
            out = out + term
        cache[m] = out
        return out

    def apply(x: GradedElement) -> GradedElement:
        if x.alg != alg:
            raise ValueError("derivation applied to an element of another algebra")
        out = tgt.zero()
        acc: Dict[Mono, object] = {}
        for m, c in x.terms.items():
            for mm, cc in on_mono(m).terms.items():
                v = c * cc
                acc[mm] = acc[mm] + v if mm in acc else v
        return GradedElement(tgt, _clean(acc)) if acc else out

    return apply


def _embedding(src: GradedAlgebra, tgt: GradedAlgebra) -> Callable[[Mono], Mono]:
    if src == tgt:
        return lambda m: m
    pos = []
    for g in src.gens:
        j = tgt.index.get(g.name)
        if j is None or tgt.gens[j].degree != g.degree:
            raise ValueError(f"generator {g.name} does not embed in the target algebra")
        pos.append(j)
    order_ok = all(a < b for a, b in zip(pos, pos[1:]))
    if not order_ok:
        raise ValueError("embedding must preserve generator order")

    def emb(m: Mono) -> Mono:
        out = [0] * tgt.n
        for j, e in zip(pos, m):
            out[j] = e
        return tuple(out)

    return emb


def embed(x: GradedElement, tgt: GradedAlgebra) -> GradedElement:
    """Include x into an algebra with a superset of generators (order-preserving)."""
    emb = _embedding(x.alg, tgt)
    return GradedElement(tgt, {emb(m): c for m, c in x.terms.items()})


def morphism(src: GradedAlgebra, tgt: GradedAlgebra,
             images: Mapping[str, GradedElement]) -> Callable[[GradedElement], GradedElement]:
    """Graded algebra morphism; unspecified generators go to the same-named target generator."""
    imgs = []
    for g in src.gens:
        if g.name in images:
            im = images[g.name]
            if im.terms and im.parity not in (None, g.parity):
                raise ValueError(f"image of {g.name} has the wrong parity")
            imgs.append(im)
        else:
            imgs.append(tgt.gen(g.name))
    cache: Dict[Mono, GradedElement] = {}

    def on_mono(m: Mono) -> GradedElement:
        if m not in cache:
            out = tgt.one()
            for im, e in zip(imgs, m):
                for _ in range(e):
                    out = out * im
            cache[m] = out
        return cache[m]

    def apply(x: GradedElement) -> GradedElement:
        acc: Dict[Mono, object] = {}
        for m, c in x.terms.items():
            for mm, cc in on_mono(m).terms.items():
                v = c * cc
                acc[mm] = acc[mm] + v if mm in acc else v
        return GradedElement(tgt, _clean(acc))

    return apply


def poly(alg: GradedAlgebra, spec: Mapping[Tuple[Tuple[str, int], ...], object]) -> GradedElement:
    """Convenience constructor from {((name, exp), ...): coeff}."""
    out = alg.zero()
    for word, c in spec.items():
        term = alg.scalar(c)
        for name, e in word:
            term = term * alg.gen(name) ** e
        out = out + term
    return out
