"""Exact computation of dimension-filtered associated primes of local cohomology.

The layers build on each other: polynomials (:mod:`polycore`), Gröbner bases
(:mod:`groebner`), finitely generated modules (:mod:`fgmod`), prime
decomposition (:mod:`decomp`), depth in dimension > k (:mod:`dimdepth`),
the finite Ass formulas (:mod:`theorems`), graded families (:mod:`graded`)
and the session-file front end (:mod:`cli`).
"""

__version__ = "0.1.0"

from .decomp import AssSet, PrimeIdeal, associated_primes, minimal_primes
from .dimdepth import depth_k, is_sequence_in_dim_gt_k, local_ass, local_dim
from .fgmod import ModulePresentation, annihilator, ext, free_resolution, hom
from .groebner import Ideal
from .polycore import CoeffField, Ring
from .theorems import ass_lch_formula, ass_top_lch, ext_ass_sets

__all__ = [
    "AssSet", "CoeffField", "Ideal", "ModulePresentation", "PrimeIdeal", "Ring",
    "annihilator", "ass_lch_formula", "ass_top_lch", "associated_primes", "depth_k",
    "ext", "ext_ass_sets", "free_resolution", "hom", "is_sequence_in_dim_gt_k",
    "local_ass", "local_dim", "minimal_primes",
]
