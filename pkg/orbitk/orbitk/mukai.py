"""
Fourier–Mukai Actions

Line-bundle twists, the Serre functor and spherical twists acting on K₀ and on
a de Rham cohomology model. Models are pure data: a graded basis, structure
constants of the cup product, a Mukai pairing and named classes such as ch_L
or sqrt_Td. Everything is exact rational arithmetic.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Sequence, Tuple

from .abgroup import (
    FgAbGroup,
    GroupHom,
    Presentation,
    cokernel_of_hom,
    direct_sum,
    quotient_by_elements,
)
from .errors import (
    DimensionMismatch,
    InvalidModel,
    MissingClass,
    ReportWarning,
)
from .exactla import IntMatrix
from .fields import FieldMatrix, RationalField, Scalar, Vector

logger = logging.getLogger(__name__)

QQ_FIELD = RationalField()

Products = Tuple[Tuple[Vector, ...], ...]


@dataclass(frozen=True)
class CohomologyModel:
    """
    ⊕ₙ Hⁿ_dR(X) as a graded algebra with a Mukai pairing.

    The first basis element is the unit. products[i][j] holds the coordinates
    of basis[i]·basis[j].
    """

    name: str
    basis: Tuple[str, ...]
    degrees: Tuple[int, ...]
    products: Products
    pairing: FieldMatrix
    classes: Mapping[str, Vector]

    def __post_init__(self) -> None:
        size = len(self.basis)
        if size == 0:
            raise InvalidModel(f"model {self.name!r} has an empty basis")
        if len(self.degrees) != size:
            raise InvalidModel(
                f"model {self.name!r}: {len(self.degrees)} degrees for "
                f"{size} basis elements"
            )
        if len(set(self.basis)) != size:
            raise InvalidModel(f"model {self.name!r} repeats a basis label")
        if self.pairing.shape != (size, size):
            raise InvalidModel(
                f"model {self.name!r}: pairing is {self.pairing.shape}, "
                f"expected {size}x{size}"
            )
        for label, vector in self.classes.items():
            if len(vector) != size:
                raise InvalidModel(
                    f"model {self.name!r}: class {label} has {len(vector)} "
                    f"coordinates, expected {size}"
                )
        self._check_products()
        if self.pairing.rank() != size:
            raise InvalidModel(f"model {self.name!r}: pairing is degenerate")
        if self.pairing != self.pairing.transpose():
            logger.warning("pairing of model %s is not symmetric", self.name)
        if "sqrt_Td" in self.classes and self.classes["sqrt_Td"][0] != 1:
            raise InvalidModel(
                f"model {self.name!r}: sqrt_Td must have unit component 1"
            )

    def _check_products(self) -> None:
        size = len(self.basis)
        if len(self.products) != size or any(len(r) != size for r in self.products):
            raise InvalidModel(f"model {self.name!r}: product table is not square")
        for i in range(size):
            e_i = QQ_FIELD.unit_vector(size, i)
            if self.products[0][i] != e_i or self.products[i][0] != e_i:
                raise InvalidModel(
                    f"model {self.name!r}: {self.basis[0]} is not a unit "
                    f"for {self.basis[i]}"
                )
            for j in range(size):
                product = self.products[i][j]
                if len(product) != size:
                    raise InvalidModel(f"model {self.name!r}: malformed product")
                for k, coefficient in enumerate(product):
                    if coefficient and self.degrees[k] != (
                        self.degrees[i] + self.degrees[j]
                    ):
                        raise InvalidModel(
                            f"model {self.name!r}: {self.basis[i]}*{self.basis[j]} "
                            f"has a component on {self.basis[k]} of the wrong degree"
                        )
        for i in range(1, size):
            for j in range(1, size):
                for k in range(1, size):
                    left = self._times_basis(self.products[i][j], k)
                    right = self._basis_times(i, self.products[j][k])
                    if left != right:
                        raise InvalidModel(
                            f"model {self.name!r}: product is not associative on "
                            f"({self.basis[i]}, {self.basis[j]}, {self.basis[k]})"
                        )

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def top_degree(self) -> int:
        return max(self.degrees)

    @property
    def is_symmetric(self) -> bool:
        return self.pairing == self.pairing.transpose()

    def warnings(self) -> List[ReportWarning]:
        if self.is_symmetric:
            return []
        return [ReportWarning.non_symmetric_pairing(self.name)]

    def index(self, label: str) -> int:
        return self.basis.index(label)

    def class_vector(self, name: str) -> Vector:
        """
        Raises:
            MissingClass: If the model does not carry the class
        """
        if name not in self.classes:
            available = ", ".join(sorted(self.classes)) or "none"
            raise MissingClass(
                f"model {self.name!r} has no class {name!r} (available: {available})"
            )
        return self.classes[name]

    def _times_basis(self, vector: Vector, k: int) -> Vector:
        result = list(QQ_FIELD.zero_vector(self.dimension))
        for index, coefficient in enumerate(vector):
            if coefficient:
                for m, value in enumerate(self.products[index][k]):
                    if value:
                        result[m] += coefficient * value
        return tuple(result)

    def _basis_times(self, i: int, vector: Vector) -> Vector:
        result = list(QQ_FIELD.zero_vector(self.dimension))
        for index, coefficient in enumerate(vector):
            if coefficient:
                for m, value in enumerate(self.products[i][index]):
                    if value:
                        result[m] += coefficient * value
        return tuple(result)

    def multiply(self, left: Vector, right: Vector) -> Vector:
        """Cup product of two coordinate vectors."""
        result = list(QQ_FIELD.zero_vector(self.dimension))
        for i, a in enumerate(left):
            if not a:
                continue
            for j, b in enumerate(right):
                if not b:
                    continue
                for k, value in enumerate(self.products[i][j]):
                    if value:
                        result[k] += a * b * value
        return tuple(result)

    def multiplication_matrix(self, factor: Vector) -> FieldMatrix:
        """Matrix of α ↦ α·factor; column j is the image of basis element j."""
        columns = [
            self.multiply(QQ_FIELD.unit_vector(self.dimension, j), factor)
            for j in range(self.dimension)
        ]
        return FieldMatrix.from_columns(QQ_FIELD, columns, self.dimension)

    def pair(self, left: Vector, right: Vector) -> Any:
        """⟨left, right⟩ = leftᵀ·G·right."""
        return sum(
            (a * value for a, value in zip(left, self.pairing.apply(right))),
            QQ_FIELD.zero,
        )

    def parity_indices(self) -> Tuple[List[int], List[int]]:
        even = [i for i, d in enumerate(self.degrees) if d % 2 == 0]
        odd = [i for i, d in enumerate(self.degrees) if d % 2]
        return even, odd

    def parity_blocks(self, matrix: FieldMatrix) -> Tuple[FieldMatrix, FieldMatrix]:
        """
        Split an endomorphism into its HP⁺ and HP⁻ blocks.

        Raises:
            InvalidModel: If the map mixes even and odd classes
        """
        even, odd = self.parity_indices()
        if not (
            matrix.select(even, odd).is_zero() and matrix.select(odd, even).is_zero()
        ):
            raise InvalidModel(
                f"model {self.name!r}: map does not preserve the even/odd split"
            )
        return matrix.select(even, even), matrix.select(odd, odd)


def _coordinates(
    basis: Sequence[str], values: Mapping[str, Scalar], context: str
) -> Vector:
    vector = list(QQ_FIELD.zero_vector(len(basis)))
    for label, value in values.items():
        if label not in basis:
            raise InvalidModel(f"{context}: unknown basis element {label!r}")
        vector[basis.index(label)] = QQ_FIELD.element(value)
    return tuple(vector)


def build_model(
    name: str,
    basis: Sequence[str],
    degrees: Sequence[int],
    products: Mapping[Tuple[str, str], Mapping[str, Scalar]],
    pairing: Sequence[Sequence[Scalar]],
    classes: Mapping[str, Mapping[str, Scalar]],
) -> CohomologyModel:
    """
    Build a model from label-keyed tables.

    Products with the unit (the first basis element) are filled in; every
    other product not listed is zero.

    Args:
        name: Model name used in messages
        basis: Basis labels, unit first
        degrees: Cohomological degree of each basis element
        products: (left, right) -> {label: coefficient}
        pairing: Matrix of the Mukai pairing on the basis
        classes: Named classes as {label: coefficient}

    Raises:
        InvalidModel: If the tables are inconsistent
    """
    labels = tuple(str(label) for label in basis)
    size = len(labels)
    table = [[QQ_FIELD.zero_vector(size) for _ in range(size)] for _ in range(size)]
    for i in range(size):
        table[0][i] = table[i][0] = QQ_FIELD.unit_vector(size, i)
    for (left, right), result in products.items():
        context = f"model {name!r}, product {left}*{right}"
        for label in (left, right):
            if label not in labels:
                raise InvalidModel(f"{context}: unknown basis element {label!r}")
        table[labels.index(left)][labels.index(right)] = _coordinates(
            labels, result, context
        )
    return CohomologyModel(
        name=name,
        basis=labels,
        degrees=tuple(int(d) for d in degrees),
        products=tuple(tuple(row) for row in table),
        pairing=FieldMatrix.from_values(QQ_FIELD, pairing, size),
        classes={
            key: _coordinates(labels, values, f"model {name!r}, class {key}")
            for key, values in classes.items()
        },
    )


def line_bundle_hp_map(
    m: CohomologyModel, n: int, class_name: str = "ch_L"
) -> Tuple[FieldMatrix, FieldMatrix]:
    """
    Matrices of α ↦ (−1)ⁿ(α·ch_L) − α on the even and odd parts.

    Args:
        m: The cohomology model
        n: The shift combined with the twist
        class_name: The Chern character to multiply by

    Returns:
        (even block, odd block), ready for hp_orbit_dims

    Raises:
        MissingClass: If the model lacks the class
    """
    twist = m.multiplication_matrix(m.class_vector(class_name))
    sign = -1 if n % 2 else 1
    return m.parity_blocks(twist.scale(sign).minus_identity())


def serre_hp_map(m: CohomologyModel) -> Tuple[FieldMatrix, FieldMatrix]:
    """The Serre functor −⊗ω[dim X] as a line-bundle map with class ch_omega."""
    return line_bundle_hp_map(m, m.top_degree // 2, "ch_omega")


def spherical_class(m: CohomologyModel) -> Vector:
    """v = ch_E·sqrt_Td."""
    return m.multiply(m.class_vector("ch_E"), m.class_vector("sqrt_Td"))


def spherical_projection(m: CohomologyModel) -> FieldMatrix:
    """
    Matrix of α ↦ ⟨α, v⟩·v with v = ch_E·sqrt_Td.

    Column j is the image of basis element j, so the matrix is v·(G·v)ᵀ.
    With v = (1, 0) and an antidiagonal pairing this gives [[0, 1], [0, 0]],
    the transpose of the row-image layout [[0, 0], [1, 0]].

    Raises:
        MissingClass: If ch_E or sqrt_Td is missing
    """
    v = spherical_class(m)
    gv = m.pairing.apply(v)
    columns = [tuple(gv[j] * vi for vi in v) for j in range(m.dimension)]
    return FieldMatrix.from_columns(QQ_FIELD, columns, m.dimension)


def spherical_hp_maps(m: CohomologyModel) -> Tuple[FieldMatrix, FieldMatrix]:
    """Blocks of the orbit map −P, i.e. E(T_E) − Id for the spherical twist."""
    return m.parity_blocks(-spherical_projection(m))


def twist_hp_maps(
    m: CohomologyModel, phi_prime: FieldMatrix
) -> Tuple[FieldMatrix, FieldMatrix]:
    """
    Blocks of E(Φ) − Id = −E(Φ′) for a twist Φ with E(Φ) = Id − E(Φ′).

    Raises:
        DimensionMismatch: If phi_prime does not act on the model
    """
    if phi_prime.shape != (m.dimension, m.dimension):
        raise DimensionMismatch(
            f"Φ′ is {phi_prime.shape} on a model of dimension {m.dimension}"
        )
    return m.parity_blocks(-phi_prime)


def spherical_k0_map(chi_row: Sequence[int], e_class: Sequence[int]) -> GroupHom:
    """
    The endomorphism x ↦ (chi_row·x)·e_class of K₀ ≅ Z^m.

    Raises:
        DimensionMismatch: If the vectors have different lengths
    """
    chi = tuple(int(v) for v in chi_row)
    e = tuple(int(v) for v in e_class)
    if len(chi) != len(e):
        raise DimensionMismatch(
            f"chi_row has {len(chi)} entries but e_class has {len(e)}"
        )
    k0 = Presentation.free(len(e))
    matrix = IntMatrix.from_rows([[ei * cj for cj in chi] for ei in e], cols=len(chi))
    return GroupHom.endomorphism(k0, matrix)


def spherical_orbit_k0(chi_row: Sequence[int], e_class: Sequence[int]) -> FgAbGroup:
    """K₀ of the orbit category of a spherical twist: coker(−Φ′)."""
    return cokernel_of_hom(spherical_k0_map(chi_row, e_class).scale(-1))


def twist_k0_orbit(phi_prime: IntMatrix) -> FgAbGroup:
    """K₀ orbit group for E(Φ) = Id − E(Φ′) on a free K₀."""
    if not phi_prime.is_square:
        raise DimensionMismatch(f"Φ′ is {phi_prime.shape}, not square")
    k0 = Presentation.free(phi_prime.rows)
    return cokernel_of_hom(GroupHom.endomorphism(k0, -phi_prime))


@dataclass(frozen=True)
class CurveK0:
    """K₀(C) ≅ Z ⊕ Pic(C) with the class of a line bundle L."""

    pic: Presentation
    l_class: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.l_class) != self.pic.generators:
            raise DimensionMismatch(
                f"[L] has {len(self.l_class)} coordinates, Pic has "
                f"{self.pic.generators} generators"
            )

    @classmethod
    def of(cls, pic: FgAbGroup, l_class: Sequence[int]) -> "CurveK0":
        return cls(Presentation.of(pic), tuple(int(v) for v in l_class))

    def presentation(self) -> Presentation:
        """Z (the rank summand) followed by Pic."""
        return Presentation.free(1).direct_sum(self.pic)

    def multiplication_by_l(self) -> IntMatrix:
        """T_L(r, e) = (r, e + r·[L])."""
        size = 1 + self.pic.generators
        rows = IntMatrix.identity(size).to_rows()
        for i, value in enumerate(self.l_class):
            rows[i + 1][0] = value
        return IntMatrix.from_rows(rows, cols=size)


def curve_orbit_kh0(c: CurveK0, n: int) -> FgAbGroup:
    """
    Return coker((−1)ⁿ·T_L − Id) on Z ⊕ Pic(C), computed by SNF.

    The split formula (Z or Z/2 times Pic/⟨L⟩) is not used; see
    curve_orbit_report for the comparison.
    """
    presentation = c.presentation()
    sign = -1 if n % 2 else 1
    twist = GroupHom.endomorphism(presentation, c.multiplication_by_l().scale(sign))
    return cokernel_of_hom(twist.minus_identity())


def displayed_curve_formula(c: CurveK0, n: int) -> FgAbGroup:
    """Z × Pic/⟨L⟩ for n even, Z/2 × Pic/⟨L⟩ for n odd."""
    quotient = quotient_by_elements(c.pic, [c.l_class])
    return direct_sum(FgAbGroup.cyclic(2 if n % 2 else 0), quotient)


@dataclass(frozen=True)
class CurveReport:
    computed: FgAbGroup
    displayed: FgAbGroup
    n: int
    warnings: Tuple[ReportWarning, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.computed.render(),
            "displayed_formula": self.displayed.render(),
            "n": self.n,
            "warnings": [w.to_dict() for w in self.warnings],
        }


def curve_orbit_report(c: CurveK0, n: int) -> CurveReport:
    """Compute curve_orbit_kh0 and flag a disagreement with the split formula."""
    computed = curve_orbit_kh0(c, n)
    displayed = displayed_curve_formula(c, n)
    warnings: Tuple[ReportWarning, ...] = ()
    if computed != displayed:
        logger.warning(
            "curve orbit group %s differs from split formula %s", computed, displayed
        )
        warnings = (
            ReportWarning.displayed_formula_mismatch(
                computed.render(), displayed.render()
            ),
        )
    return CurveReport(computed, displayed, n, warnings)

