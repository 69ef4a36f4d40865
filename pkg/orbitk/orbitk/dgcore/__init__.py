"""
Finite dg categories, their orbit categories and the square-zero extension,
with numerical checks of the structure relating them.
"""

from .builder import FiniteDgCategoryBuilder
from .category import DgEndofunctor, FiniteDgCategory, HomComplex
from .checks import (
    ComparisonReport,
    EpsilonReport,
    comparison_map_check,
    epsilon_quasi_iso_check,
)
from .examples import (
    CATEGORIES,
    acyclic_pair,
    arrow_category,
    collapse_functor,
    disjoint_pair,
    dual_numbers,
    point_category,
    swap_functor,
)
from .homology import H0Category, betti, h0_category
from .orbit import GradedOrbitCategory, OrbitZReport, orbit_n, orbit_z
from .square_zero import SquareZeroExtension, square_zero, square_zero_extension
from .validation import check_h0_equivalence, validate_category, validate_functor

__all__ = [
    "FiniteDgCategoryBuilder",
    "DgEndofunctor",
    "FiniteDgCategory",
    "HomComplex",
    "ComparisonReport",
    "EpsilonReport",
    "comparison_map_check",
    "epsilon_quasi_iso_check",
    "CATEGORIES",
    "acyclic_pair",
    "arrow_category",
    "collapse_functor",
    "disjoint_pair",
    "dual_numbers",
    "point_category",
    "swap_functor",
    "H0Category",
    "betti",
    "h0_category",
    "GradedOrbitCategory",
    "OrbitZReport",
    "orbit_n",
    "orbit_z",
    "SquareZeroExtension",
    "square_zero",
    "square_zero_extension",
    "check_h0_equivalence",
    "validate_category",
    "validate_functor",
]
