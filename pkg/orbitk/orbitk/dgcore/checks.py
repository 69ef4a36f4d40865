"""
Numerical checks of the structure of orbit categories.

epsilon_quasi_iso_check verifies that post-composition with ε′ is a
quasi-isomorphism weight by weight. comparison_map_check builds, for every
pair of objects, the three-term horizontal complex

    hom(Fx, y) → hom(x, y) ⊕ hom(Fx, Fy) → hom(x, Fy)

inside the truncated A/F^ℕ and the map into it from the rows of A⋉B₁, and
checks that the map is an isomorphism on horizontal cohomology.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..errors import TruncationTooSmall
from ..fields import FieldMatrix, Vector
from .category import DgEndofunctor, FiniteDgCategory
from .homology import is_quasi_iso_in_degree
from .orbit import GradedOrbitCategory, orbit_n
from .square_zero import SquareZeroExtension, square_zero_extension
from .validation import check_h0_equivalence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EpsilonFailure:
    """Where post-composition with ε′ first failed to be a quasi-isomorphism."""

    source: str
    stage: int
    weight: int
    degree: int

    def to_dict(self) -> Dict[str, int]:
        return {
            "source": self.source,
            "stage": self.stage,
            "weight": self.weight,
            "degree": self.degree,
        }


@dataclass(frozen=True)
class EpsilonResult:
    target: str
    failure: Optional[EpsilonFailure] = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "object": self.target,
            "passed": self.passed,
            "first_failure": self.failure.to_dict() if self.failure else None,
        }


@dataclass(frozen=True)
class EpsilonReport:
    bound: int
    stages: int
    results: Tuple[EpsilonResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, x: str) -> EpsilonResult:
        return next(r for r in self.results if r.target == x)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.bound,
            "P": self.stages,
            "passed": self.passed,
            "objects": [r.to_dict() for r in self.results],
        }


def _epsilon_block(
    orbit: GradedOrbitCategory, y: str, x: str, weight: int
) -> FieldMatrix:
    """ε′_x∘− from weight `weight` of hom(y, x) to weight + 1 of hom(y, F x)."""
    fx = orbit.functor(x)
    epsilon = orbit.epsilon(x)
    source, target = orbit.block(y, x, weight), orbit.block(y, fx, weight + 1)
    columns = []
    for j in source:
        image = orbit.compose(y, x, fx, epsilon, orbit.category.basis_vector(y, x, j))
        columns.append(tuple(image[i] for i in target))
    return FieldMatrix.from_columns(orbit.category.field, columns, len(target))


def _first_epsilon_failure(
    orbit: GradedOrbitCategory, x: str, stages: int
) -> Optional[EpsilonFailure]:
    a, powers = orbit.base, orbit.functor.powers(orbit.bound + stages)
    for y in a.objects:
        for p in range(stages):
            fpx = powers[p](x)
            for weight in range(orbit.bound):
                matrix = _epsilon_block(orbit, y, fpx, weight)
                source = a.hom(powers[weight](y), fpx)
                target = a.hom(powers[weight + 1](y), powers[p + 1](x))
                for degree in sorted(set(source.degrees) | set(target.degrees)):
                    if not is_quasi_iso_in_degree(matrix, source, target, degree):
                        return EpsilonFailure(y, p, weight, degree)
    return None


def epsilon_quasi_iso_check(
    a: FiniteDgCategory, f: DgEndofunctor, bound: int, stages: int
) -> EpsilonReport:
    """
    Check that composition with ε′ is a quasi-isomorphism.

    For every object x, every y, every stage p < stages and every weight
    w ≤ bound − 1, post-composition with ε′ of F^p x from weight w of
    hom(y, F^p x) to weight w + 1 of hom(y, F^{p+1} x) must induce an
    isomorphism on cohomology in every degree.

    Raises:
        InvalidDgData: If f fails the H⁰-equivalence check
        TruncationTooSmall: If bound < 1 or stages < 1
    """
    if bound < 1:
        raise TruncationTooSmall(f"epsilon check needs N ≥ 1, got {bound}")
    if stages < 1:
        raise TruncationTooSmall(f"epsilon check needs P ≥ 1, got {stages}")
    check_h0_equivalence(f)
    orbit = orbit_n(a, f, bound)
    results = []
    for x in a.objects:
        failure = _first_epsilon_failure(orbit, x, stages)
        if failure is not None:
            logger.warning("epsilon check fails at %s for object %s", failure, x)
        results.append(EpsilonResult(x, failure))
    return EpsilonReport(bound, stages, tuple(results))


@dataclass(frozen=True)
class PairComparison:
    """Outcome of the comparison check for one pair of objects."""

    source: str
    target: str
    injective: bool
    chain_map: bool
    cohomology: Dict[int, bool]
    first_failure: Optional[Tuple[str, int]] = None

    @property
    def passed(self) -> bool:
        return self.injective and self.chain_map and all(self.cohomology.values())

    def to_dict(self) -> Dict[str, Any]:
        failure = None
        if self.first_failure is not None:
            check, degree = self.first_failure
            failure = {"check": check, "degree": degree}
        return {
            "source": self.source,
            "target": self.target,
            "injective": self.injective,
            "chain_map": self.chain_map,
            "cohomology": {str(k): v for k, v in sorted(self.cohomology.items())},
            "passed": self.passed,
            "first_failure": failure,
        }


@dataclass(frozen=True)
class ComparisonReport:
    bound: int
    pairs: Tuple[PairComparison, ...]

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.pairs)

    def pair(self, x: str, y: str) -> PairComparison:
        return next(p for p in self.pairs if (p.source, p.target) == (x, y))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.bound,
            "passed": self.passed,
            "pairs": [p.to_dict() for p in self.pairs],
        }


def _vectors_rank(field: Any, vectors: Sequence[Vector], length: int) -> int:
    if not vectors:
        return 0
    return FieldMatrix.from_columns(field, vectors, length).rank()


class _HorizontalComplex:
    """The three-term complex T⁻¹ → T⁰ → T¹ of one pair of objects."""

    def __init__(self, orbit: GradedOrbitCategory, x: str, y: str) -> None:
        n = orbit.bound
        self.orbit, self.x, self.y = orbit, x, y
        self.fx, self.fy = orbit.functor(x), orbit.functor(y)
        self.minus = orbit.indices_up_to(self.fx, y, n - 2)
        self.left = orbit.indices_up_to(x, y, n - 1)
        self.right = orbit.indices_up_to(self.fx, self.fy, n - 1)
        self.plus = orbit.indices_up_to(x, self.fy, n)
        self.minus_degrees = self._degrees(self.fx, y, self.minus)
        self.middle_degrees = self._degrees(x, y, self.left) + self._degrees(
            self.fx, self.fy, self.right
        )
        self.plus_degrees = self._degrees(x, self.fy, self.plus)

    def _degrees(self, s: str, t: str, indices: List[int]) -> List[int]:
        degrees = self.orbit.hom(s, t).degrees
        return [degrees[i] for i in indices]

    def middle(self, first: Vector, second: Vector) -> Vector:
        return tuple(first[i] for i in self.left) + tuple(
            second[i] for i in self.right
        )

    def d_minus(self, index: int) -> Vector:
        """h ↦ (h∘ε′_x, ε′_y∘h)."""
        orbit, x, y, fx, fy = self.orbit, self.x, self.y, self.fx, self.fy
        h = orbit.category.basis_vector(fx, y, index)
        return self.middle(
            orbit.compose(x, fx, y, h, orbit.epsilon(x)),
            orbit.compose(fx, y, fy, orbit.epsilon(y), h),
        )

    def d_zero(self, position: int) -> Vector:
        """(f, g) ↦ ε′_y∘f − g∘ε′_x on the position-th basis element of T⁰."""
        orbit, x, y, fx, fy = self.orbit, self.x, self.y, self.fx, self.fy
        if position < len(self.left):
            f = orbit.category.basis_vector(x, y, self.left[position])
            image = orbit.compose(x, y, fy, orbit.epsilon(y), f)
        else:
            g = orbit.category.basis_vector(
                fx, fy, self.right[position - len(self.left)]
            )
            image = tuple(-c for c in orbit.compose(x, fx, fy, g, orbit.epsilon(x)))
        return tuple(image[i] for i in self.plus)

    def top_middle(self, vector: Vector) -> Vector:
        """(π′, π′∘F) on an element of A(x, y)."""
        orbit, x, y = self.orbit, self.x, self.y
        moved = orbit.functor.apply(x, y, vector)
        return self.middle(
            orbit.include(x, y, vector), orbit.include(self.fx, self.fy, moved)
        )

    def top_plus(self, vector: Vector) -> Vector:
        """π′ on an element of A(x, F y)."""
        image = self.orbit.include(self.x, self.fy, vector)
        return tuple(image[i] for i in self.plus)


def _in_degree(
    vectors: Sequence[Vector], vector_degrees: Sequence[int], degree: int
) -> List[Vector]:
    return [v for v, d in zip(vectors, vector_degrees) if d == degree]


def _restrict(
    vectors: Sequence[Vector], coordinate_degrees: Sequence[int], degree: int
) -> List[Vector]:
    keep = [k for k, d in enumerate(coordinate_degrees) if d == degree]
    return [tuple(v[k] for k in keep) for v in vectors]


def _compare_pair(
    orbit: GradedOrbitCategory, extension: SquareZeroExtension, x: str, y: str
) -> PairComparison:
    a, field = orbit.base, orbit.category.field
    horizontal = _HorizontalComplex(orbit, x, y)
    d_minus = [horizontal.d_minus(i) for i in horizontal.minus]
    d_zero = [horizontal.d_zero(k) for k in range(len(horizontal.middle_degrees))]
    a_degrees = [a.hom(x, y).degrees[j] for j in extension.a_part(x, y)]
    b_degrees = a.hom(x, horizontal.fy).degrees
    phi_zero = [
        horizontal.top_middle(a.basis_vector(x, y, j)) for j in extension.a_part(x, y)
    ]
    phi_one = [
        horizontal.top_plus(a.basis_vector(x, horizontal.fy, j))
        for j in range(len(extension.b_part(x, y)))
    ]
    degrees = sorted(
        set(a_degrees)
        | set(b_degrees)
        | set(horizontal.minus_degrees)
        | set(horizontal.middle_degrees)
        | set(horizontal.plus_degrees)
    )
    injective = chain_map = True
    cohomology = {-1: True, 0: True, 1: True}
    failure: Optional[Tuple[str, int]] = None
    for k in degrees:
        n_minus = horizontal.minus_degrees.count(k)
        n_middle = horizontal.middle_degrees.count(k)
        n_plus = horizontal.plus_degrees.count(k)
        dm = _restrict(
            _in_degree(d_minus, horizontal.minus_degrees, k),
            horizontal.middle_degrees,
            k,
        )
        dz = _restrict(
            _in_degree(d_zero, horizontal.middle_degrees, k),
            horizontal.plus_degrees,
            k,
        )
        phi0 = _restrict(
            _in_degree(phi_zero, a_degrees, k), horizontal.middle_degrees, k
        )
        phi1 = _restrict(_in_degree(phi_one, b_degrees, k), horizontal.plus_degrees, k)
        rank_minus = _vectors_rank(field, dm, n_middle)
        rank_zero = _vectors_rank(field, dz, n_plus)
        checks: Dict[str, bool] = {}
        checks["injective"] = rank_minus == n_minus
        d_zero_matrix = FieldMatrix.from_columns(field, dz, n_plus)
        phi_matrix = FieldMatrix.from_columns(field, phi0, n_middle)
        checks["chain_map"] = (d_zero_matrix @ phi_matrix).is_zero()
        h0_bottom = n_middle - rank_zero - rank_minus
        h0_induced = _vectors_rank(field, phi0 + dm, n_middle) - rank_minus
        checks["H0"] = h0_induced == len(phi0) == h0_bottom
        h1_bottom = n_plus - rank_zero
        h1_induced = _vectors_rank(field, phi1 + dz, n_plus) - rank_zero
        checks["H1"] = h1_induced == len(phi1) == h1_bottom
        injective = injective and checks["injective"]
        chain_map = chain_map and checks["chain_map"]
        cohomology[-1] = cohomology[-1] and checks["injective"]
        cohomology[0] = cohomology[0] and checks["H0"]
        cohomology[1] = cohomology[1] and checks["H1"]
        if failure is None:
            failed = [name for name, ok in checks.items() if not ok]
            if failed:
                failure = (failed[0], k)
    return PairComparison(x, y, injective, chain_map, cohomology, failure)


def comparison_map_check(
    a: FiniteDgCategory, f: DgEndofunctor, bound: int
) -> ComparisonReport:
    """
    Check that the rows of A⋉B₁ map isomorphically onto the horizontal
    cohomology of the three-term complexes in A/F^ℕ.

    T⁻¹ keeps weights ≤ N − 2, T⁰ weights ≤ N − 1 and T¹ weights ≤ N, so no
    product needed by the check is truncated.

    Raises:
        InvalidDgData: If f fails the H⁰-equivalence check
        TruncationTooSmall: If bound < 2
    """
    if bound < 2:
        raise TruncationTooSmall(f"comparison check needs N ≥ 2, got {bound}")
    check_h0_equivalence(f)
    orbit = orbit_n(a, f, bound)
    extension = square_zero_extension(a, f)
    pairs = tuple(_compare_pair(orbit, extension, x, y) for x, y in a.pairs())
    for pair in pairs:
        if not pair.passed:
            logger.warning(
                "comparison map fails for (%s, %s): %s",
                pair.source,
                pair.target,
                pair.first_failure,
            )
    return ComparisonReport(bound, pairs)
