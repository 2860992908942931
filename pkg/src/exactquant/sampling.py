"""Seeded random generators for algebraic objects (used by the CLI suites)."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .graded import GradedAlgebra, GradedElement, Mono
from .operators import Operator


def monomials(alg: GradedAlgebra, max_total: int) -> List[Mono]:
    return list(_monomials(alg, max_total))


@lru_cache(maxsize=64)
def _monomials(alg: GradedAlgebra, max_total: int) -> Tuple[Mono, ...]:
    out = set()
    for k in range(max_total + 1):
        for combo in combinations_with_replacement(range(alg.n), k):
            m = [0] * alg.n
            for i in combo:
                m[i] += 1
            if any(e > 1 and p for e, p in zip(m, alg.parities)):
                continue
            out.add(tuple(m))
    return tuple(sorted(out))


def _coeff(rng: random.Random) -> Fraction:
    while True:
        c = Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2, 3)))
        if c:
            return c


def random_element(alg: GradedAlgebra, rng: random.Random, degree: Optional[int] = None,
                   max_total: int = 3, max_terms: int = 3, shift: int = 0,
                   pred=None) -> GradedElement:
    """Random element homogeneous of degree ``degree`` (algebra degree minus ``shift``)."""
    pool = monomials(alg, max_total)
    if pred is not None:
        pool = [m for m in pool if pred(m)]
    if degree is None:
        degs = sorted({alg.mono_degree(m) - shift for m in pool})
        degree = rng.choice(degs)
    pool = [m for m in pool if alg.mono_degree(m) - shift == degree]
    if not pool:
        return alg.zero()
    k = rng.randint(1, max_terms)
    terms = {m: _coeff(rng) for m in rng.sample(pool, min(k, len(pool)))}
    return alg.element(terms)


def random_potential(m: int, rng: random.Random, max_degree: int = 4, max_terms: int = 4) -> Dict[Mono, Fraction]:
    pool = [e for e in monomials(GradedAlgebra([(f"y{i}", 0) for i in range(1, m + 1)]), max_degree) if sum(e) >= 1]
    k = rng.randint(1, max_terms)
    return {e: _coeff(rng) for e in rng.sample(pool, min(k, len(pool)))}


def random_operator(alg: GradedAlgebra, rng: random.Random, parity: Optional[int] = None,
                    max_total: int = 2, max_terms: int = 3, coeffs=None) -> Operator:
    pool = []
    for X in monomials(alg, max_total):
        for A in monomials(alg, max_total):
            if parity is None or (alg.mono_degree(X) - alg.mono_degree(A)) % 2 == parity:
                pool.append((X, A))
    if parity is None:
        parity = rng.randint(0, 1)
        pool = [w for w in pool if (alg.mono_degree(w[0]) - alg.mono_degree(w[1])) % 2 == parity]
    k = rng.randint(1, max_terms)
    terms = {}
    for w in rng.sample(pool, min(k, len(pool))):
        c = _coeff(rng)
        if coeffs is not None:
            c = c * rng.choice(coeffs)
        terms[w] = c
    return Operator(alg, terms)
