"""Graded Rees construction prod_m hbar^m W_m of a weight-graded DGLA, the
involution *, sigma~ = hbar d/dhbar, and ℏ-expanded formal derivations.

Rees elements are polyvector elements whose coefficients are Laurent
polynomials in hbar.  A term v hbar^k with v of weight j is a (j, k)
component; it lies in the Rees module when j <= k (W_m = sum_{j <= m} W_j).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .graded import GradedElement
from .polyvectors import PolyvectorDGLA
from .scalars import Laurent

DEFAULT_HBAR_ORDER = 6


class DivisibilityError(ArithmeticError):
    def __init__(self, arity: int, order: int):
        self.arity, self.order = arity, order
        super().__init__(f"arity-{arity} component has an hbar^{order} term, below hbar^{arity - 1}")


def _lc(c) -> Laurent:
    return c if isinstance(c, Laurent) else Laurent.const(c)


def components(pol: PolyvectorDGLA, x: GradedElement) -> Dict[Tuple[int, int], GradedElement]:
    """Split into (weight, hbar power) pieces with rational coefficients."""
    out: Dict[Tuple[int, int], Dict] = {}
    for m, c in x.terms.items():
        w = x.alg.mono_weight(m) - 1
        for k, v in _lc(c).terms().items():
            out.setdefault((w, k), {})[m] = v
    return {key: GradedElement(x.alg, t) for key, t in sorted(out.items())}


def from_components(pol: PolyvectorDGLA, comps: Dict[Tuple[int, int], GradedElement]) -> GradedElement:
    out = pol.alg.zero()
    for (j, k), v in comps.items():
        if v.weights() and v.weights() != {j + 1}:
            raise ValueError(f"component {(j, k)} has the wrong weight")
        out = out + v * Laurent.hbar(k)
    return out


def hbar_scaling(pol: PolyvectorDGLA, x: GradedElement) -> GradedElement:
    """Multiply the weight-m part by hbar^m."""
    out = pol.alg.zero()
    for m, c in pol.weight_components(x).items():
        out = out + c * Laurent.hbar(m)
    return out


def hbar_unscaling(pol: PolyvectorDGLA, x: GradedElement) -> GradedElement:
    out = pol.alg.zero()
    for m, c in pol.weight_components(x).items():
        out = out + c * Laurent.hbar(-m)
    return out


def in_rees(pol: PolyvectorDGLA, x: GradedElement) -> bool:
    return all(j <= k for (j, k) in components(pol, x))


def star_involution(pol: PolyvectorDGLA, x: GradedElement) -> GradedElement:
    """(v hbar^k)* = (-1)^{j+k} v hbar^k for v of weight j."""
    comps = components(pol, x)
    return from_components(pol, {key: (-v if (key[0] + key[1]) % 2 else v) for key, v in comps.items()})


def star_sign(j: int, k: int) -> int:
    return -1 if (j + k) % 2 else 1


def rees_sigma(x: GradedElement) -> GradedElement:
    """sigma~ = hbar d/dhbar on coefficients."""
    return x.map_coeffs(lambda c: _lc(c).euler())


def transported_sigma(pol: PolyvectorDGLA, x: GradedElement) -> GradedElement:
    """(sigma + hbar d/dhbar) on L[[hbar]], moved to the Rees side by hbar_scaling."""
    from .dgla import sigma

    return hbar_scaling(pol, sigma(pol, x) + rees_sigma(x))


def is_star_fixed(pol: PolyvectorDGLA, x: GradedElement) -> bool:
    return star_involution(pol, x) == x


def parity_fixed(pol: PolyvectorDGLA, x: GradedElement) -> bool:
    """Every (weight, hbar power) component has weight = power mod 2."""
    return all((j - k) % 2 == 0 for (j, k) in components(pol, x))


# filtration F~^q = { components with hbar power >= q - 1 }, hbar L~ = { j <= k - 1 }


def in_tilde_F(pol: PolyvectorDGLA, x: GradedElement, q: int) -> bool:
    return in_rees(pol, x) and all(k >= q - 1 for (_, k) in components(pol, x))


def in_hbar_rees(pol: PolyvectorDGLA, x: GradedElement) -> bool:
    return all(j <= k - 1 for (j, k) in components(pol, x))


@dataclass
class FiltrationReport:
    q: int
    checked: int = 0
    counterexamples: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def filtration_identity_check(pol: PolyvectorDGLA, q: int, samples) -> FiltrationReport:
    """F~^q cap hbar L~ = hbar F~^{q-1} on samples.

    Samples in the left side must be hbar times an element of F~^{q-1}; samples of
    F~^{q-1} multiplied by hbar must land in the left side.  Other samples only
    test that the two membership predicates agree.
    """
    rep = FiltrationReport(q)
    h = Laurent.hbar(1)
    hinv = Laurent.hbar(-1)
    for x in samples:
        rep.checked += 1
        left = in_tilde_F(pol, x, q) and in_hbar_rees(pol, x)
        y = x * hinv
        right = in_tilde_F(pol, y, q - 1)
        if left != right:
            rep.counterexamples.append(f"{x.render()}: left={left} right={right}")
            continue
        if in_tilde_F(pol, x, q - 1):
            z = x * h
            if not (in_tilde_F(pol, z, q) and in_hbar_rees(pol, z)):
                rep.counterexamples.append(f"hbar*({x.render()}) not in F~^{q} cap hbar L~")
    return rep


# --------------------------------------------------------------------------
# strict data and formal derivations


def strict_triple_check(pol: PolyvectorDGLA, pi: GradedElement, D0: GradedElement,
                        D1: GradedElement) -> Tuple[GradedElement, GradedElement, GradedElement]:
    """(delta D0, delta D1 + [pi, D0], [pi, D1] + pi)."""
    return (pol.differential(D0),
            pol.differential(D1) + pol.bracket(pi, D0),
            pol.bracket(pi, D1) + pi)


@dataclass
class FormalDerivationExpansion:
    pi_h: GradedElement
    D_h: GradedElement
    arities: Dict[int, Tuple[int, int]]
    equation: GradedElement
    equation_via_scaling: GradedElement
    kills_constants: bool
    star_fixed: bool
    hbar_order: int

    @property
    def passed(self) -> bool:
        return (not self.equation.terms and not (self.equation - self.equation_via_scaling).terms
                and self.kills_constants and self.star_fixed)


def expand_formal_derivation(pol: PolyvectorDGLA, pi: GradedElement, D: GradedElement,
                             hbar_order: int = DEFAULT_HBAR_ORDER) -> FormalDerivationExpansion:
    """Build pi_h = hbar_scaling(pi) and D_h = hbar_scaling(D), so the full derivation is D_h + hbar d/dhbar.

    Checks: arity p lies in hbar^{p-1}; delta D_h + [pi_h, D_h] + hbar d/dhbar(pi_h)
    vanishes and agrees with the scaled cocone equation; D_h kills R[[hbar]];
    both pieces are fixed by *.
    """
    from .dgla import sigma

    pi_h = hbar_scaling(pol, pi)
    D_h = hbar_scaling(pol, D)
    arities: Dict[int, Tuple[int, int]] = {}
    for (j, k) in components(pol, D_h):
        p = j + 1
        lo, hi = arities.get(p, (k, k))
        arities[p] = (min(lo, k), max(hi, k))
        if k < p - 1:
            raise DivisibilityError(p, k)
        if k >= hbar_order:
            from .dgla import WindowOverflow

            raise WindowOverflow(f"hbar power {k} beyond order {hbar_order}", D_h.render())
    eq = pol.differential(D_h) + pol.bracket(pi_h, D_h) + rees_sigma(pi_h)
    eq_scaled = hbar_scaling(pol, pol.differential(D) + pol.bracket(pi, D) + sigma(pol, pi))
    one = pol.alg.one()
    kills = not pol.bracket(D_h, one).terms and not pol.bracket(D_h, one * Laurent.hbar(1)).terms
    fixed = is_star_fixed(pol, pi_h) and is_star_fixed(pol, D_h)
    return FormalDerivationExpansion(pi_h, D_h, arities, eq, eq_scaled, kills, fixed, hbar_order)
