"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from exactquant.graded import GradedAlgebra, GradedElement
from exactquant.sampling import monomials
from exactquant.scalars import Laurent

fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_fractions = fractions.filter(bool)

laurents = st.dictionaries(st.integers(-3, 3), fractions, max_size=4).map(Laurent)


def elements(alg: GradedAlgebra, max_total=3, coeffs=fractions, max_terms=4):
    pool = monomials(alg, max_total)
    return st.dictionaries(st.sampled_from(pool), coeffs, max_size=max_terms).map(
        lambda t: GradedElement(alg, t))


def homogeneous(alg: GradedAlgebra, max_total=3, coeffs=nonzero_fractions, max_terms=3):
    pool = monomials(alg, max_total)
    degs = sorted({alg.mono_degree(m) for m in pool})

    @st.composite
    def build(draw):
        d = draw(st.sampled_from(degs))
        sub = [m for m in pool if alg.mono_degree(m) == d]
        t = draw(st.dictionaries(st.sampled_from(sub), coeffs, min_size=1, max_size=max_terms))
        return GradedElement(alg, t)

    return build()
