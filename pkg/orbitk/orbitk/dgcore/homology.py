"""Cohomology of finite complexes and the homotopy category H⁰."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Sequence, Tuple

from ..errors import InvariantViolation
from ..fields import CoefficientField, FieldMatrix, Vector, span_rank
from .category import FiniteDgCategory, HomComplex, Pair, Triple

logger = logging.getLogger(__name__)


def _embed(size: int, indices: Sequence[int], local: Vector, zero: Any) -> Vector:
    full = [zero] * size
    for index, value in zip(indices, local):
        full[index] = value
    return tuple(full)


def differential_block(hom: HomComplex, degree: int) -> FieldMatrix:
    """The differential from degree to degree + 1 in local coordinates."""
    return hom.differential.select(hom.indices(degree + 1), hom.indices(degree))


def cycles(hom: HomComplex, degree: int) -> List[Vector]:
    """A basis of the degree-k cycles, as full-length vectors."""
    indices = hom.indices(degree)
    if not indices:
        return []
    kernel = differential_block(hom, degree).nullspace()
    zero = hom.field.zero
    return [_embed(hom.dimension, indices, v, zero) for v in kernel]


def boundaries(hom: HomComplex, degree: int) -> List[Vector]:
    """A spanning set of the degree-k boundaries, as full-length vectors."""
    below = hom.indices(degree - 1)
    return [hom.d(hom.basis_vector(j)) for j in below]


def betti(hom: HomComplex, degree: int) -> int:
    """dim Hᵏ of the complex."""
    return len(cycles(hom, degree)) - span_rank(
        hom.field, boundaries(hom, degree), hom.dimension
    )


def induced_rank(
    field: CoefficientField,
    images: Sequence[Vector],
    target_boundaries: Sequence[Vector],
    length: int,
) -> int:
    """
    Rank of a map on cohomology.

    images are the images of a basis of source cycles; the result is the
    dimension of their span modulo the target boundaries.
    """
    together = list(images) + list(target_boundaries)
    return span_rank(field, together, length) - span_rank(
        field, target_boundaries, length
    )


def is_quasi_iso_in_degree(
    matrix: FieldMatrix, source: HomComplex, target: HomComplex, degree: int
) -> bool:
    """Whether a degree-0 chain map induces an isomorphism on Hᵏ."""
    images = [matrix.apply(z) for z in cycles(source, degree)]
    rank = induced_rank(
        source.field, images, boundaries(target, degree), target.dimension
    )
    return rank == betti(source, degree) == betti(target, degree)


def cohomology_representatives(hom: HomComplex, degree: int) -> List[Vector]:
    """Cycles whose classes form a basis of Hᵏ."""
    chosen: List[Vector] = []
    spanned = boundaries(hom, degree)
    rank = span_rank(hom.field, spanned, hom.dimension)
    for cycle in cycles(hom, degree):
        candidate = spanned + [cycle]
        new_rank = span_rank(hom.field, candidate, hom.dimension)
        if new_rank > rank:
            chosen.append(cycle)
            spanned, rank = candidate, new_rank
    return chosen


def cohomology_coordinates(
    hom: HomComplex, representatives: Sequence[Vector], cycle: Vector, degree: int
) -> Vector:
    """
    Coordinates of the class of a cycle in the given representative basis.

    Raises:
        InvariantViolation: If the vector is not a cycle
    """
    columns = list(representatives) + boundaries(hom, degree)
    system = FieldMatrix.from_columns(hom.field, columns, hom.dimension)
    solution = system.solve(cycle)
    if solution is None:
        raise InvariantViolation(f"vector is not a degree-{degree} cycle")
    return solution[: len(representatives)]


@dataclass(frozen=True)
class H0Category:
    """The homotopy category H⁰(A): objects, hom dimensions, composition."""

    field: CoefficientField
    objects: Tuple[str, ...]
    representatives: Mapping[Pair, Tuple[Vector, ...]]
    composition: Mapping[Triple, Tuple[Tuple[Vector, ...], ...]]

    def dimension(self, x: str, y: str) -> int:
        return len(self.representatives[(x, y)])

    def dims(self) -> Dict[Pair, int]:
        return {pair: len(reps) for pair, reps in self.representatives.items()}

    def to_dict(self) -> Dict[str, Any]:
        value = self.field.to_json_value
        return {
            "objects": list(self.objects),
            "dims": [
                {"source": x, "target": y, "dimension": len(reps)}
                for (x, y), reps in self.representatives.items()
            ],
            "composition": [
                {
                    "objects": [x, y, z],
                    "table": [
                        [[value(c) for c in entry] for entry in row] for row in table
                    ],
                }
                for (x, y, z), table in self.composition.items()
            ],
        }


def h0_category(a: FiniteDgCategory) -> H0Category:
    """
    Compute H⁰ of every hom with the induced composition.

    composition[(x, y, z)][i][j] holds the coordinates of rᵢ∘sⱼ, where rᵢ
    runs over the representatives of H⁰(y, z) and sⱼ over those of H⁰(x, y).
    """
    representatives = {
        (x, y): tuple(cohomology_representatives(a.hom(x, y), 0))
        for x, y in a.pairs()
    }
    composition: Dict[Triple, Tuple[Tuple[Vector, ...], ...]] = {}
    for x in a.objects:
        for y in a.objects:
            for z in a.objects:
                target = a.hom(x, z)
                outer = representatives[(y, z)]
                inner = representatives[(x, y)]
                composition[(x, y, z)] = tuple(
                    tuple(
                        cohomology_coordinates(
                            target,
                            representatives[(x, z)],
                            a.compose(x, y, z, r, s),
                            0,
                        )
                        for s in inner
                    )
                    for r in outer
                )
    logger.debug(
        "H0 of %s: %s",
        a.name,
        {f"{x}->{y}": len(reps) for (x, y), reps in representatives.items()},
    )
    return H0Category(a.field, a.objects, representatives, composition)
