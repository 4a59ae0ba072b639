"""Exact Euler measures of finite categories.

chi(C) = 1* [C]+ 1 is computed with an exact rational Moore-Penrose inverse,
alongside weightings, coweightings, products, disjoint unions and the
Grothendieck construction.
"""

from .catcore import (FinCategory, FunctorData, InvalidCategory, InvalidFunctor,
                      Morphism, Violation, adjacency, check_adjunction_matrices,
                      validate, validate_functor)
from .constructions import (Diagram, InvalidDiagram, chi_inclusion_exclusion,
                            coproduct, decompose_L1_L2, grothendieck, product)
from .ratmat import RatMatrix, pinv, pinv_full_rank
from .weights import ChiReport, chi, chi_report, coweighting, weighting

__version__ = "0.1.0"

__all__ = [
    "FinCategory", "FunctorData", "InvalidCategory", "InvalidFunctor", "Morphism",
    "Violation", "adjacency", "check_adjunction_matrices", "validate", "validate_functor",
    "Diagram", "InvalidDiagram", "chi_inclusion_exclusion", "coproduct",
    "decompose_L1_L2", "grothendieck", "product",
    "RatMatrix", "pinv", "pinv_full_rank",
    "ChiReport", "chi", "chi_report", "coweighting", "weighting",
]
