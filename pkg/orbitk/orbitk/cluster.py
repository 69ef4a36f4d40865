"""
Cluster Categories and Kleinian Singularities

Grothendieck groups of n-cluster categories of acyclic quivers, computed as
coker((−1)ⁿ·Φ − Id) for the Coxeter matrix Φ, together with the Kleinian
singularity series and the cyclic quotient singularity presets.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Tuple

from .abgroup import FgAbGroup, GroupHom, Presentation
from .errors import InputValidationError, InvariantViolation, ReportWarning
from .exactla import IntMatrix, cokernel_generators, cokernel_presentation
from .fields import FieldMatrix
from .orbit_triangle import (
    DegreeData,
    FieldDegree,
    GroupDegree,
    InvariantKind,
    InvariantSpec,
    OrbitDegreeResult,
    orbit_groups,
)
from .quiver import Quiver, coxeter_matrix, is_dynkin
from .quiver_presets import kronecker, type_a

logger = logging.getLogger(__name__)


def orbit_matrix(q: Quiver, n: int) -> IntMatrix:
    """Return (−1)ⁿ·Φ − Id."""
    phi = coxeter_matrix(q)
    sign = -1 if n % 2 else 1
    return phi.scale(sign) - IntMatrix.identity(len(q.vertices))


def cluster_k0(q: Quiver, n: int) -> FgAbGroup:
    """
    Return K₀ of the n-cluster category of q.

    For n = 0 and a non-Dynkin quiver the orbit category may fail to be
    triangulated; the cokernel is still returned and a warning is logged.

    Raises:
        CyclicQuiver: If q has an oriented cycle
    """
    if n < 0:
        raise InputValidationError(f"cluster index n = {n} must be nonnegative")
    if n == 0 and not is_dynkin(q):
        logger.warning("n = 0 with non-Dynkin quiver %s", q.label)
    return cokernel_presentation(orbit_matrix(q, n))


@dataclass(frozen=True)
class ClusterK0Report:
    """K₀ of a cluster category with the data that produced it."""

    quiver: str
    n: int
    group: FgAbGroup
    matrix: IntMatrix
    generators: Tuple[Tuple[int, Tuple[int, ...]], ...]
    triangulated: bool
    warnings: Tuple[ReportWarning, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "quiver": self.quiver,
            "n": self.n,
            "group": self.group.render(),
            "matrix": self.matrix.to_json(),
            "generators": [
                {"order": order, "vector": [str(v) for v in vector]}
                for order, vector in self.generators
            ],
            "triangulated": self.triangulated,
            "warnings": [w.to_dict() for w in self.warnings],
        }


def cluster_k0_report(q: Quiver, n: int) -> ClusterK0Report:
    """
    Compute cluster_k0 with its matrix, canonical generators and warnings.

    The triangulated flag records that the group is also K₀ of a triangulated,
    idempotent complete category (always for n ≥ 1, for n = 0 only when q is
    Dynkin).
    """
    group = cluster_k0(q, n)
    matrix = orbit_matrix(q, n)
    dynkin = is_dynkin(q)
    warnings: Tuple[ReportWarning, ...] = ()
    if n == 0 and not dynkin:
        warnings = (ReportWarning.n0_footnote(q.label),)
    return ClusterK0Report(
        quiver=q.label,
        n=n,
        group=group,
        matrix=matrix,
        generators=tuple(cokernel_generators(matrix)),
        triangulated=n >= 1 or dynkin,
        warnings=warnings,
    )


def kh_template() -> InvariantSpec:
    """E(k) for homotopy K-theory of a regular field: Z in degree 0."""
    return InvariantSpec({0: GroupDegree.of(FgAbGroup.free(1))}, connective=True)


def hp_template() -> InvariantSpec:
    """E(k) for periodic cyclic homology: Q in even parity, 0 in odd."""
    return InvariantSpec(
        {0: FieldDegree.of(1), 1: FieldDegree.of(0)},
        two_periodic=True,
        field_coefficients=True,
        invariant=InvariantKind.HP,
    )


TEMPLATES = {"kh": kh_template, "hp": hp_template}


def template(name: str) -> InvariantSpec:
    """
    Return a shipped E(k) template by name.

    Raises:
        InputValidationError: If the template is unknown
    """
    key = name.strip().lower()
    if key not in TEMPLATES:
        supported = ", ".join(sorted(TEMPLATES))
        raise InputValidationError(
            f"Unsupported template: {name}. Supported templates are: {supported}"
        )
    return TEMPLATES[key]()


def _spread(data: DegreeData, action: IntMatrix) -> DegreeData:
    """E(k)^m on the simple basis, acted on by action ⊗ Id."""
    m = action.rows
    if isinstance(data, FieldDegree):
        size = data.dimension
        matrix = action.kronecker_identity(size)
        auto = FieldMatrix.from_values(data.field, matrix.to_rows(), m * size)
        return FieldDegree(data.field, m * size, auto)
    assert isinstance(data, GroupDegree)
    presentation = Presentation.free(0)
    for _ in range(m):
        presentation = presentation.direct_sum(data.presentation)
    matrix = action.kronecker_identity(data.presentation.generators)
    return GroupDegree(presentation, GroupHom.endomorphism(presentation, matrix))


def cluster_triangle(
    q: Quiver, n: int, spec_of_k: InvariantSpec
) -> List[OrbitDegreeResult]:
    """
    Run the orbit triangle for ⊕ᵢ E(k) with automorphism (−1)ⁿ·Φ.

    Args:
        q: An acyclic quiver
        n: The cluster index
        spec_of_k: The invariant of the base field; only its groups are used

    Returns:
        The per-degree orbit results

    Raises:
        CyclicQuiver: If q has an oriented cycle
    """
    action = coxeter_matrix(q).scale(-1 if n % 2 else 1)
    identity = action == IntMatrix.identity(action.rows)
    degrees: Mapping[int, DegreeData] = {
        degree: _spread(data, action) for degree, data in spec_of_k.degrees.items()
    }
    spec = InvariantSpec(
        degrees,
        connective=spec_of_k.connective,
        two_periodic=spec_of_k.two_periodic,
        field_coefficients=spec_of_k.field_coefficients,
        identity_action=identity,
        invariant=spec_of_k.invariant,
        modulus=spec_of_k.modulus,
    )
    logger.debug("cluster triangle for %s, n = %d, identity %s", q.label, n, identity)
    return orbit_groups(spec)


def kleinian_matrix(s: int) -> IntMatrix:
    """
    The s×s matrix presenting K₀ of the Kleinian singularity of type A_s.

    First column (−2, −1, ..., −1), superdiagonal 1, diagonal −1 below the
    first entry.
    """
    if s < 1:
        raise InputValidationError(f"Kleinian index s = {s} must be positive")
    rows = [[0] * s for _ in range(s)]
    for i in range(s):
        rows[i][0] = -1
        if i:
            rows[i][i] = -1
        if i + 1 < s:
            rows[i][i + 1] = 1
    rows[0][0] = -2
    return IntMatrix.from_rows(rows, cols=s)


def kleinian_k0(s: int) -> FgAbGroup:
    """
    Return K₀ of the stable MCM category of the A_s Kleinian singularity.

    Computed from kleinian_matrix(s) and from the 0-cluster category of A_s.

    Raises:
        InvariantViolation: If the two computations disagree
    """
    direct = cokernel_presentation(kleinian_matrix(s))
    via_coxeter = cluster_k0(type_a(s), 0)
    if direct != via_coxeter:
        raise InvariantViolation(
            f"Kleinian A{s}: matrix route gives {direct}, Coxeter route {via_coxeter}"
        )
    return direct


def kleinian_generators(s: int) -> List[Tuple[int, Tuple[int, ...]]]:
    """Canonical generators of the Kleinian K₀ in the kleinian_matrix coordinates."""
    return cokernel_generators(kleinian_matrix(s))


def cyclic_quotient_k0() -> ClusterK0Report:
    """K₀ of the 1-cluster category of the 3-arrow Kronecker quiver."""
    return cluster_k0_report(kronecker(3), 1)

