"""Exact-arithmetic checks for self-dual shifted quantisations of derived critical loci."""

from .checks import Check, all_passed
from .dcrit import (build_crit, canonical_exact_structure, canonical_quantisation, koszul_cohomology,
                    quad_regression, strict_poisson_with_derivation, twisted_derham_cohomology)
from .graded import GradedAlgebra, GradedElement, Generator
from .operators import Operator, anti_involute, compose, graded_commutator, sesquilinear_star
from .parser import ParseError, parse_potential
from .polyvectors import CdgaModel, DeRham, PolyvectorDGLA
from .scalars import Laurent, QPoly, RationalFunction

__all__ = [
    "Check", "all_passed", "build_crit", "canonical_exact_structure", "canonical_quantisation",
    "koszul_cohomology", "quad_regression", "strict_poisson_with_derivation", "twisted_derham_cohomology",
    "GradedAlgebra", "GradedElement", "Generator", "Operator", "anti_involute", "compose",
    "graded_commutator", "sesquilinear_star", "ParseError", "parse_potential", "CdgaModel", "DeRham",
    "PolyvectorDGLA", "Laurent", "QPoly", "RationalFunction",
]
