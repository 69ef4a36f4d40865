"""
Orbit Triangle

Given an invariant presented degree by degree as groups (or vector spaces)
E_n(A) with the automorphism E_n(F), the orbit invariant sits in short exact
sequences

    0 -> coker(E_n(F) - Id) -> E_n(A/F^Z) -> ker(E_{n-1}(F) - Id) -> 0

extracted from the long exact sequence of the orbit triangle. The middle group
is filled in only when the extension is forced.

Degree data follows the Strategy pattern: GroupDegree carries an integer
presentation, FieldDegree a vector space over a coefficient field.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .abgroup import (
    FgAbGroup,
    GroupHom,
    Presentation,
    cokernel_of_hom,
    direct_sum,
    is_surjective_endomorphism,
    kernel_of_hom,
)
from .errors import (
    DegreeOutOfWindow,
    DimensionMismatch,
    InvalidSpec,
    NonInvertibleAuto,
    ReportWarning,
)
from .exactla import IntMatrix
from .fields import CoefficientField, FieldMatrix, RationalField, Scalar

logger = logging.getLogger(__name__)


class InvariantKind(Enum):
    """The invariants an InvariantSpec can describe."""

    KH = "KH"
    K_MOD = "K_mod"
    K_ET = "K_et"
    HP = "HP"


class DegreeData(ABC):
    """Abstract base class for one degree of an invariant: E_n(A) and E_n(F)."""

    @abstractmethod
    def group(self) -> FgAbGroup:
        """E_n(A) in canonical form; vector spaces report their dimension."""
        pass

    @abstractmethod
    def check_invertible(self, degree: int) -> None:
        """
        Raises:
            NonInvertibleAuto: If E_n(F) is not an automorphism
        """
        pass

    @abstractmethod
    def coker_minus_identity(self) -> FgAbGroup:
        pass

    @abstractmethod
    def ker_minus_identity(self) -> FgAbGroup:
        pass

    @abstractmethod
    def is_identity(self) -> bool:
        pass

    @abstractmethod
    def with_scalar_auto(self, factor: int) -> "DegreeData":
        """Return the same E_n(A) acted on by factor·Id."""
        pass

    @abstractmethod
    def is_zero(self) -> bool:
        pass


@dataclass(frozen=True)
class GroupDegree(DegreeData):
    """A presented abelian group with an endomorphism of the presentation."""

    presentation: Presentation
    auto: GroupHom

    def __post_init__(self) -> None:
        if self.auto.source != self.presentation or not self.auto.is_endomorphism:
            raise DimensionMismatch("automorphism does not act on the presentation")

    @classmethod
    def zero(cls) -> "GroupDegree":
        empty = Presentation.free(0)
        return cls(empty, GroupHom.identity(empty))

    @classmethod
    def of(
        cls, group: FgAbGroup, matrix: Optional[IntMatrix] = None
    ) -> "GroupDegree":
        """Canonical presentation of the group with the given auto (Id by default)."""
        presentation = Presentation.of(group)
        if matrix is None:
            matrix = IntMatrix.identity(presentation.generators)
        return cls(presentation, GroupHom.endomorphism(presentation, matrix))

    def group(self) -> FgAbGroup:
        return self.presentation.group()

    def check_invertible(self, degree: int) -> None:
        if not is_surjective_endomorphism(self.auto):
            raise NonInvertibleAuto(
                f"degree {degree}: automorphism {self.auto.matrix} is not surjective"
            )

    def coker_minus_identity(self) -> FgAbGroup:
        return cokernel_of_hom(self.auto.minus_identity())

    def ker_minus_identity(self) -> FgAbGroup:
        return kernel_of_hom(self.auto.minus_identity())

    def is_identity(self) -> bool:
        return self.auto.matrix == IntMatrix.identity(self.presentation.generators)

    def with_scalar_auto(self, factor: int) -> "GroupDegree":
        matrix = IntMatrix.identity(self.presentation.generators).scale(factor)
        return GroupDegree(
            self.presentation, GroupHom.endomorphism(self.presentation, matrix)
        )

    def is_zero(self) -> bool:
        return self.group().is_trivial()


@dataclass(frozen=True)
class FieldDegree(DegreeData):
    """A finite-dimensional vector space with a linear automorphism."""

    field: CoefficientField
    dimension: int
    auto: FieldMatrix

    def __post_init__(self) -> None:
        if self.auto.shape != (self.dimension, self.dimension):
            raise DimensionMismatch(
                f"automorphism is {self.auto.shape} on a space of dimension "
                f"{self.dimension}"
            )
        if self.auto.field != self.field:
            raise DimensionMismatch("automorphism is over a different field")

    @classmethod
    def of(
        cls,
        dimension: int,
        matrix: Optional[Sequence[Sequence[Scalar]]] = None,
        field: Optional[CoefficientField] = None,
    ) -> "FieldDegree":
        field = field or RationalField()
        if matrix is None:
            auto = FieldMatrix.identity(field, dimension)
        else:
            auto = FieldMatrix.from_values(field, matrix, dimension)
        return cls(field, dimension, auto)

    def group(self) -> FgAbGroup:
        return FgAbGroup.free(self.dimension)

    def check_invertible(self, degree: int) -> None:
        if self.auto.rank() != self.dimension:
            raise NonInvertibleAuto(
                f"degree {degree}: automorphism has rank {self.auto.rank()} "
                f"on a space of dimension {self.dimension}"
            )

    def _defect(self) -> int:
        return self.dimension - self.auto.minus_identity().rank()

    def coker_minus_identity(self) -> FgAbGroup:
        return FgAbGroup.free(self._defect())

    def ker_minus_identity(self) -> FgAbGroup:
        return FgAbGroup.free(self._defect())

    def is_identity(self) -> bool:
        return self.auto.minus_identity().is_zero()

    def with_scalar_auto(self, factor: int) -> "FieldDegree":
        return FieldDegree(
            self.field,
            self.dimension,
            FieldMatrix.identity(self.field, self.dimension).scale(factor),
        )

    def is_zero(self) -> bool:
        return self.dimension == 0


@dataclass(frozen=True)
class InvariantSpec:
    """
    A graded invariant E_n(A) with automorphisms E_n(F) on finitely many degrees.

    Degrees outside the stored window are zero for connective specs and are
    reduced mod 2 for two-periodic specs; otherwise querying them is an error.
    """

    degrees: Mapping[int, DegreeData]
    connective: bool = False
    two_periodic: bool = False
    field_coefficients: bool = False
    identity_action: bool = False
    invariant: InvariantKind = InvariantKind.KH
    modulus: Optional[int] = None

    def __post_init__(self) -> None:
        if self.connective and self.two_periodic:
            raise InvalidSpec("a spec cannot be both connective and two-periodic")
        for n, data in sorted(self.degrees.items()):
            if self.field_coefficients != isinstance(data, FieldDegree):
                raise InvalidSpec(
                    f"degree {n}: field_coefficients is {self.field_coefficients} "
                    f"but the data is {type(data).__name__}"
                )
            data.check_invertible(n)
            if self.identity_action and not data.is_identity():
                raise InvalidSpec(
                    f"degree {n}: identity_action is set but the automorphism "
                    "is not the identity"
                )
            if self.connective and n < 0 and not data.is_zero():
                raise InvalidSpec(f"connective spec stores nonzero degree {n}")
            if self.modulus is not None:
                self._check_annihilated(n, data.group())
        if self.field_coefficients:
            fields = {data.field for data in self.degrees.values()}  # type: ignore
            if len(fields) > 1:
                raise InvalidSpec("degrees use different coefficient fields")
        if self.two_periodic and set(self.degrees) != {0, 1}:
            raise InvalidSpec("two-periodic specs store exactly degrees 0 and 1")

    def _check_annihilated(self, n: int, group: FgAbGroup) -> None:
        modulus = self.modulus or 0
        if modulus < 2:
            raise InvalidSpec(f"coefficient modulus {modulus} must be at least 2")
        if group.rank or any(modulus % d for d in group.invariant_factors):
            raise InvalidSpec(
                f"degree {n}: {group} is not annihilated by the modulus {modulus}"
            )

    def _zero(self) -> DegreeData:
        if self.field_coefficients and self.degrees:
            sample = next(iter(self.degrees.values()))
            return FieldDegree.of(0, field=sample.field)  # type: ignore
        return GroupDegree.zero()

    def degree(self, n: int) -> DegreeData:
        """
        Return the data stored for degree n.

        Raises:
            DegreeOutOfWindow: If n is outside the window of a spec that is
                neither connective nor two-periodic
        """
        if self.two_periodic:
            return self.degrees[n % 2]
        if n in self.degrees:
            return self.degrees[n]
        if self.connective:
            return self._zero()
        raise DegreeOutOfWindow(
            f"degree {n} is outside the stored degrees {sorted(self.degrees)}"
        )

    def output_degrees(self) -> List[int]:
        """Degrees whose orbit groups are determined by the stored data."""
        if self.two_periodic:
            return [0, 1]
        if self.connective:
            top = max((n for n in self.degrees if n >= 0), default=-1)
            return list(range(0, top + 2))
        degrees = [n for n in sorted(self.degrees) if n - 1 in self.degrees]
        if not degrees:
            raise DegreeOutOfWindow(
                "no stored degree n has its predecessor n - 1 stored"
            )
        return degrees

    def map_autos(self, factor: int) -> "InvariantSpec":
        """Replace every automorphism by factor·Id."""
        degrees = {n: d.with_scalar_auto(factor) for n, d in self.degrees.items()}
        return replace(self, degrees=degrees, identity_action=(factor == 1))


@dataclass(frozen=True)
class OrbitDegreeResult:
    """The two pieces of E_n(A/F^Z) and, when forced, the group itself."""

    degree: int
    coker_piece: FgAbGroup
    ker_piece: FgAbGroup
    resolved: Optional[FgAbGroup] = None
    ambiguous: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "coker_piece": self.coker_piece.render(),
            "ker_piece": self.ker_piece.render(),
            "resolved": None if self.resolved is None else self.resolved.render(),
            "ambiguous": self.ambiguous,
        }


def orbit_degree(spec: InvariantSpec, n: int) -> OrbitDegreeResult:
    """Compute the orbit pieces in a single degree."""
    coker = spec.degree(n).coker_minus_identity()
    ker = spec.degree(n - 1).ker_minus_identity()
    resolved: Optional[FgAbGroup] = None
    if (
        spec.field_coefficients
        or spec.identity_action
        or ker.is_free()
        or coker.is_trivial()
        or ker.is_trivial()
    ):
        resolved = direct_sum(coker, ker)
    else:
        logger.warning("degree %d: extension of %s by %s is not forced", n, ker, coker)
    logger.debug("degree %d: coker %s, ker %s", n, coker, ker)
    return OrbitDegreeResult(n, coker, ker, resolved, resolved is None)


def orbit_groups(spec: InvariantSpec) -> List[OrbitDegreeResult]:
    """
    Compute E_n(A/F^Z) degree by degree from the long exact sequence.

    Args:
        spec: The invariant with its automorphisms

    Returns:
        One result per output degree, in increasing degree order

    Raises:
        NonInvertibleAuto: Raised while building a spec with a singular auto
    """
    return [orbit_degree(spec, n) for n in spec.output_degrees()]


def extension_warnings(results: Sequence[OrbitDegreeResult]) -> List[ReportWarning]:
    return [ReportWarning.ambiguous_extension(r.degree) for r in results if r.ambiguous]


def fundamental_split(spec: InvariantSpec) -> List[OrbitDegreeResult]:
    """Orbit groups with F acting as the identity: E_n ⊕ E_{n-1} in each degree."""
    return orbit_groups(spec.map_autos(1))


def suspension_orbit(spec: InvariantSpec, n: int) -> List[OrbitDegreeResult]:
    """
    Orbit groups for F = Σⁿ, which acts on every invariant by (−1)ⁿ.

    Even n gives the split case; odd n gives coker(−2) = E ⊗ Z/2 and the
    2-torsion of the previous degree.
    """
    return orbit_groups(spec.map_autos(-1 if n % 2 else 1))


def kh0_orbit(k0: Presentation, f: GroupHom) -> FgAbGroup:
    """
    Return coker(K₀(F) − Id), the KH₀ of the orbit category.

    Args:
        k0: Presentation of K₀(A)
        f: The automorphism K₀(F)

    Raises:
        DimensionMismatch: If f does not act on k0
        NonInvertibleAuto: If f is not an automorphism
    """
    degree = GroupDegree(k0, f)
    degree.check_invertible(0)
    return degree.coker_minus_identity()


@dataclass(frozen=True)
class Kh0Report:
    group: FgAbGroup
    regular: bool
    h0_triangulated: bool
    warnings: Tuple[ReportWarning, ...] = ()

    @property
    def statements(self) -> List[str]:
        lines = [f"KH_0 = {self.group}", "KH_n = 0 for n < 0"]
        if self.regular:
            lines.append(f"K_0 = KH_0 = {self.group} (regularity asserted)")
        if self.h0_triangulated:
            lines.append(
                f"{self.group} is the Grothendieck group of H^0 of the orbit category"
            )
        return lines

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group.render(),
            "negative_degrees": "0",
            "regular": self.regular,
            "h0_triangulated": self.h0_triangulated,
            "statements": self.statements,
            "warnings": [w.to_dict() for w in self.warnings],
        }


def kh0_orbit_report(
    k0: Presentation, f: GroupHom, regular: bool = True, h0_triangulated: bool = False
) -> Kh0Report:
    """
    Compute kh0_orbit together with the statements it supports.

    Args:
        k0: Presentation of K₀(A)
        f: The automorphism K₀(F)
        regular: Caller asserts KH(A) agrees with algebraic K-theory
        h0_triangulated: Caller asserts H⁰ of the orbit category is
            triangulated and idempotent complete
    """
    group = kh0_orbit(k0, f)
    warnings = (ReportWarning.regularity_assumed(),) if regular else ()
    return Kh0Report(group, regular, h0_triangulated, warnings)


MatrixLike = Union[FieldMatrix, Sequence[Sequence[Scalar]]]


def _as_field_matrix(matrix: MatrixLike, size: int, label: str) -> FieldMatrix:
    if not isinstance(matrix, FieldMatrix):
        matrix = FieldMatrix.from_values(RationalField(), matrix, size)
    if matrix.shape != (size, size):
        raise DimensionMismatch(
            f"{label} matrix is {matrix.shape}, expected {size}x{size}"
        )
    return matrix


def hp_orbit_dims(
    even_minus_id: FieldMatrix, odd_minus_id: FieldMatrix
) -> Tuple[int, int]:
    """
    Return (dim HP⁺, dim HP⁻) of the orbit category from the maps F − Id.

    Over a field the six-term sequence forces
    dim HP⁺ = dim coker(f₊ − Id) + dim ker(f₋ − Id) and symmetrically.
    """
    for label, matrix in (("even", even_minus_id), ("odd", odd_minus_id)):
        if matrix.rows != matrix.cols:
            raise DimensionMismatch(f"{label} map is not square: {matrix.shape}")
    even, odd = even_minus_id.rows, odd_minus_id.rows
    even_rank, odd_rank = even_minus_id.rank(), odd_minus_id.rank()
    plus = (even - even_rank) + (odd - odd_rank)
    minus = (odd - odd_rank) + (even - even_rank)
    logger.debug(
        "six-term ranks: even %d/%d, odd %d/%d", even_rank, even, odd_rank, odd
    )
    return plus, minus


def hp_sixterm(
    even_dim: int, odd_dim: int, f_even: MatrixLike, f_odd: MatrixLike
) -> Tuple[int, int]:
    """
    Dimensions of periodic cyclic homology of the orbit category.

    Args:
        even_dim: dim HP⁺(A)
        odd_dim: dim HP⁻(A)
        f_even: HP⁺(F), square of size even_dim
        f_odd: HP⁻(F), square of size odd_dim

    Returns:
        (dim HP⁺(A/F^Z), dim HP⁻(A/F^Z))

    Raises:
        DimensionMismatch: If a matrix does not match its dimension
    """
    even = _as_field_matrix(f_even, even_dim, "even")
    odd = _as_field_matrix(f_odd, odd_dim, "odd")
    return hp_orbit_dims(even.minus_identity(), odd.minus_identity())


def universal_coeff_check(
    result: OrbitDegreeResult, e_m: FgAbGroup, e_m_minus_1: FgAbGroup
) -> bool:
    """Check the pieces of an odd suspension against E_m ⊗ Z/2 and E_{m-1}[2]."""
    return result.coker_piece == e_m.tensor_cyclic(2) and (
        result.ker_piece == e_m_minus_1.torsion_subgroup(2)
    )
