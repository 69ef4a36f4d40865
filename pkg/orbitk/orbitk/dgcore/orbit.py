"""
Orbit Categories

orbit_n builds the dg category A/F^ℕ truncated at an orbit weight N: the hom
from x to y is the sum of A(Fⁿx, y) over n = 0..N, and a weight-n element
composed with a weight-p element lands in weight n + p. Products of weight
above N are dropped; those weights form an ideal, so the truncation is again
a dg category. orbit_z approximates A/F^ℤ by the colimit stages
(A/F^ℕ)(x, F^p y) along post-composition with ε′.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Tuple

from ..errors import ReportWarning, TruncationTooSmall
from ..fields import FieldMatrix, Vector
from .category import (
    CompositionTable,
    DgEndofunctor,
    FiniteDgCategory,
    HomComplex,
    Pair,
    Triple,
    nonzero,
)
from .validation import check_h0_equivalence, validate_category, validate_functor

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradedOrbitCategory:
    """A/F^ℕ truncated at weight `bound`, with the weight of every basis element."""

    base: FiniteDgCategory
    functor: DgEndofunctor
    bound: int
    category: FiniteDgCategory
    weights: Mapping[Pair, Tuple[int, ...]]

    def hom(self, x: str, y: str) -> HomComplex:
        return self.category.hom(x, y)

    def block(self, x: str, y: str, weight: int) -> List[int]:
        """Indices of the weight component A(F^w x, y) inside hom(x, y)."""
        return [i for i, w in enumerate(self.weights[(x, y)]) if w == weight]

    def indices_up_to(self, x: str, y: str, weight: int) -> List[int]:
        return [i for i, w in enumerate(self.weights[(x, y)]) if w <= weight]

    def weight_dims(
        self, x: str, y: str, up_to: int = -1
    ) -> Dict[Tuple[int, int], int]:
        """Dimension per (weight, degree), optionally only for weights ≤ up_to."""
        limit = self.bound if up_to < 0 else up_to
        counts: Dict[Tuple[int, int], int] = {}
        hom = self.hom(x, y)
        for weight, degree in zip(self.weights[(x, y)], hom.degrees):
            if weight <= limit:
                counts[(weight, degree)] = counts.get((weight, degree), 0) + 1
        return dict(sorted(counts.items()))

    def compose(self, x: str, y: str, z: str, g: Vector, f: Vector) -> Vector:
        return self.category.compose(x, y, z, g, f)

    def include(self, x: str, y: str, vector: Vector) -> Vector:
        """π′: A(x, y) → hom(x, y) as the weight-0 component."""
        result = list(self.category.field.zero_vector(self.category.dimension(x, y)))
        for local, index in enumerate(self.block(x, y, 0)):
            result[index] = vector[local]
        return tuple(result)

    def epsilon(self, x: str) -> Vector:
        """
        The cycle ε′_x in hom(x, F x): the identity of F x in weight 1.

        Raises:
            TruncationTooSmall: If the bound is 0
        """
        if self.bound < 1:
            raise TruncationTooSmall("ε′ needs orbit weight bound N ≥ 1")
        fx = self.functor(x)
        result = list(self.category.field.zero_vector(self.category.dimension(x, fx)))
        for local, index in enumerate(self.block(x, fx, 1)):
            result[index] = self.base.unit(fx)[local]
        return tuple(result)


def _orbit_hom(
    a: FiniteDgCategory, powers: List[DgEndofunctor], x: str, y: str, bound: int
) -> Tuple[HomComplex, Tuple[int, ...], List[int]]:
    degrees: List[int] = []
    labels: List[str] = []
    weights: List[int] = []
    offsets: List[int] = []
    blocks: List[FieldMatrix] = []
    for weight in range(bound + 1):
        component = a.hom(powers[weight](x), y)
        offsets.append(len(degrees))
        degrees.extend(component.degrees)
        labels.extend(
            f"t^{weight}*{component.label(i)}" for i in range(component.dimension)
        )
        weights.extend([weight] * component.dimension)
        blocks.append(component.differential)
    size = len(degrees)
    rows = [list(a.field.zero_vector(size)) for _ in range(size)]
    for offset, block in zip(offsets, blocks):
        for i, row in enumerate(block.entries):
            for j, value in nonzero(row):
                rows[offset + i][offset + j] = value
    differential = FieldMatrix(a.field, size, size, tuple(tuple(r) for r in rows))
    hom = HomComplex(a.field, tuple(degrees), differential, tuple(labels))
    return hom, tuple(weights), offsets


def orbit_n(a: FiniteDgCategory, f: DgEndofunctor, bound: int) -> GradedOrbitCategory:
    """
    Build A/F^ℕ truncated at orbit weight `bound`.

    The m-th component of g∘f is the sum over n of gₙ∘Fⁿ(f_{m−n}).

    Args:
        a: The dg category
        f: A dg endofunctor of a inducing an equivalence on H⁰
        bound: The largest orbit weight kept

    Returns:
        The truncated orbit category, re-validated

    Raises:
        InvalidDgData: If f is not a dg functor or is not an equivalence
            on H⁰, or if the result fails validation
        TruncationTooSmall: If bound is negative
    """
    if bound < 0:
        raise TruncationTooSmall(f"orbit weight bound {bound} must be nonnegative")
    validate_functor(f)
    check_h0_equivalence(f)
    powers = f.powers(bound)
    homs: Dict[Pair, HomComplex] = {}
    weights: Dict[Pair, Tuple[int, ...]] = {}
    offsets: Dict[Pair, List[int]] = {}
    for x, y in a.pairs():
        homs[(x, y)], weights[(x, y)], offsets[(x, y)] = _orbit_hom(
            a, powers, x, y, bound
        )
    composition: Dict[Triple, CompositionTable] = {}
    for x in a.objects:
        for y in a.objects:
            for z in a.objects:
                table: Dict[Tuple[int, int], Vector] = {}
                size = homs[(x, z)].dimension
                for n in range(bound + 1):
                    fn = powers[n]
                    middle = fn(y)
                    for p in range(bound + 1 - n):
                        source = powers[p](x)
                        m = n + p
                        start = offsets[(x, z)][m]
                        for j in range(a.dimension(source, y)):
                            moved = fn.apply(source, y, a.basis_vector(source, y, j))
                            for i in range(a.dimension(middle, z)):
                                product = a.compose(
                                    fn(source),
                                    middle,
                                    z,
                                    a.basis_vector(middle, z, i),
                                    moved,
                                )
                                if not any(product):
                                    continue
                                full = [a.field.zero] * size
                                for k, value in nonzero(product):
                                    full[start + k] = value
                                key = (offsets[(y, z)][n] + i, offsets[(x, y)][p] + j)
                                table[key] = tuple(full)
                if table:
                    composition[(x, y, z)] = table
    units = {}
    for x in a.objects:
        unit = list(a.field.zero_vector(homs[(x, x)].dimension))
        for k, value in nonzero(a.unit(x)):
            unit[k] = value
        units[x] = tuple(unit)
    category = FiniteDgCategory(
        a.field,
        a.objects,
        homs,
        composition,
        units,
        name=f"{a.name}/{f.name}^N(<={bound})",
    )
    validate_category(category)
    logger.debug("built %s", category.name)
    return GradedOrbitCategory(a, f, bound, category, weights)


@dataclass(frozen=True)
class ColimitHom:
    """The colimit stages of hom(x, y) in A/F^ℤ."""

    source: str
    target: str
    stage_dims: Tuple[Dict[int, int], ...]
    image_dims: Tuple[Dict[int, int], ...]
    weight_dims: Dict[Tuple[int, int], int]
    stabilized: bool

    @property
    def dims(self) -> Dict[int, int]:
        """Dimensions per degree of the last stage."""
        return self.stage_dims[-1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": self.source,
            "target": self.target,
            "stage_dims": [_degree_dict(d) for d in self.stage_dims],
            "image_dims": [_degree_dict(d) for d in self.image_dims],
            "weight_dims": [
                {"weight": w, "degree": k, "dimension": n}
                for (w, k), n in self.weight_dims.items()
            ],
            "stabilized": self.stabilized,
        }


def _degree_dict(dims: Mapping[int, int]) -> Dict[str, int]:
    return {str(k): n for k, n in sorted(dims.items())}


@dataclass(frozen=True)
class OrbitZReport:
    """Colimit approximation of A/F^ℤ for every pair of objects."""

    bound: int
    stages: int
    orbit: GradedOrbitCategory
    homs: Tuple[ColimitHom, ...]
    warnings: Tuple[ReportWarning, ...]

    def hom(self, x: str, y: str) -> ColimitHom:
        for entry in self.homs:
            if (entry.source, entry.target) == (x, y):
                return entry
        raise KeyError((x, y))

    @property
    def stabilized(self) -> bool:
        return all(entry.stabilized for entry in self.homs)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.bound,
            "P": self.stages,
            "homs": [entry.to_dict() for entry in self.homs],
            "stabilized": self.stabilized,
            "warnings": [w.to_dict() for w in self.warnings],
        }


def _count_degrees(hom: HomComplex, indices: List[int]) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for i in indices:
        counts[hom.degrees[i]] = counts.get(hom.degrees[i], 0) + 1
    return dict(sorted(counts.items()))


def _colimit_hom(orbit: GradedOrbitCategory, x: str, y: str, stages: int) -> ColimitHom:
    base, bound = orbit.bound - stages, orbit.bound
    powers = orbit.functor.powers(stages)
    targets = [powers[p](y) for p in range(stages + 1)]
    stage_indices = [
        orbit.indices_up_to(x, targets[p], base + p) for p in range(stages + 1)
    ]
    field = orbit.category.field
    transitions: List[FieldMatrix] = []
    for p in range(stages):
        epsilon = orbit.epsilon(targets[p])
        target_indices = stage_indices[p + 1]
        columns = []
        for j in stage_indices[p]:
            element = orbit.category.basis_vector(x, targets[p], j)
            image = orbit.compose(x, targets[p], targets[p + 1], epsilon, element)
            columns.append(tuple(image[i] for i in target_indices))
        transitions.append(
            FieldMatrix.from_columns(field, columns, len(target_indices))
        )
    last_size = len(stage_indices[-1])
    composites: List[FieldMatrix] = [FieldMatrix.identity(field, last_size)]
    for transition in reversed(transitions):
        composites.insert(0, composites[0] @ transition)
    stage_dims: List[Dict[int, int]] = []
    image_dims: List[Dict[int, int]] = []
    for p in range(stages + 1):
        hom = orbit.hom(x, targets[p])
        dims = _count_degrees(hom, stage_indices[p])
        stage_dims.append(dims)
        images = {}
        for degree in dims:
            local = [
                c for c, i in enumerate(stage_indices[p]) if hom.degrees[i] == degree
            ]
            selected = composites[p].select(range(composites[p].rows), local)
            images[degree] = selected.rank()
        image_dims.append(images)
    last = stage_dims[-1]
    previous = image_dims[-2]
    stabilized = all(previous.get(k, 0) == n for k, n in last.items())
    logger.debug(
        "colimit of hom(%s, %s) up to weight %d: %s", x, y, bound, stage_dims
    )
    return ColimitHom(
        x,
        y,
        tuple(stage_dims),
        tuple(image_dims),
        orbit.weight_dims(x, y, base),
        stabilized,
    )


def orbit_z(
    a: FiniteDgCategory, f: DgEndofunctor, bound: int, stages: int
) -> OrbitZReport:
    """
    Approximate A/F^ℤ by the colimit stages p = 0..stages.

    Stage p is (A/F^ℕ)(x, F^p y) restricted to weights ≤ bound + p, and the
    transition to stage p + 1 is post-composition with ε′ of F^p y. A hom is
    stabilized when the image of stage P − 1 fills stage P in every degree.

    Raises:
        InvalidDgData: If f fails the H⁰-equivalence check
        TruncationTooSmall: If stages < 1 or bound < 0
    """
    if stages < 1:
        raise TruncationTooSmall(f"colimit needs at least one stage, got P = {stages}")
    if bound < 0:
        raise TruncationTooSmall(f"orbit weight bound {bound} must be nonnegative")
    orbit = orbit_n(a, f, bound + stages)
    homs = tuple(_colimit_hom(orbit, x, y, stages) for x, y in a.pairs())
    warnings = tuple(
        ReportWarning.colimit_not_stabilized(entry.source, entry.target)
        for entry in homs
        if not entry.stabilized
    )
    for warning in warnings:
        logger.warning(warning.message)
    return OrbitZReport(bound, stages, orbit, homs, warnings)
