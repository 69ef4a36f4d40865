"""
Exact invariants of dg orbit categories

Finitely generated abelian groups and Smith normal forms, quiver data,
the orbit triangle of a localizing invariant, cluster and Kleinian K-groups,
Mukai-pairing models and finite dg categories with their orbit categories.
"""

from .abgroup import FgAbGroup
from .cluster import cluster_k0, cluster_triangle, kleinian_k0
from .errors import InvariantViolation, OrbitError, ReportWarning
from .exactla import IntMatrix, snf
from .orbit_triangle import InvariantSpec, hp_sixterm, orbit_groups
from .quiver import Quiver, coxeter_matrix
from .quiver_presets import QuiverFactory

__all__ = [
    "FgAbGroup",
    "cluster_k0",
    "cluster_triangle",
    "kleinian_k0",
    "InvariantViolation",
    "OrbitError",
    "ReportWarning",
    "IntMatrix",
    "snf",
    "InvariantSpec",
    "hp_sixterm",
    "orbit_groups",
    "Quiver",
    "coxeter_matrix",
    "QuiverFactory",
]
