"""Fluent builder for finite dg categories."""

from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from ..errors import InvalidDgData
from ..fields import CoefficientField, FieldMatrix, RationalField, Scalar, Vector
from .category import CompositionTable, FiniteDgCategory, HomComplex, Pair, Triple
from .validation import validate_category

Coefficients = Union[Mapping[int, Scalar], Sequence[Scalar]]


class FiniteDgCategoryBuilder:
    """
    A fluent builder for FiniteDgCategory.

    Homs that are never declared are zero. Unless with_unit says otherwise the
    unit of x is the first basis element of hom(x, x), and compositions with
    units are filled in automatically.
    """

    def __init__(self, field: Optional[CoefficientField] = None) -> None:
        self._field: CoefficientField = field or RationalField()
        self._name = "A"
        self._objects: List[str] = []
        self._degrees: Dict[Pair, Tuple[int, ...]] = {}
        self._labels: Dict[Pair, Tuple[str, ...]] = {}
        self._differentials: Dict[Pair, Sequence[Sequence[Scalar]]] = {}
        self._units: Dict[str, int] = {}
        self._products: Dict[Triple, Dict[Tuple[int, int], Coefficients]] = {}

    def with_field(self, field: CoefficientField) -> "FiniteDgCategoryBuilder":
        self._field = field
        return self

    def with_name(self, name: str) -> "FiniteDgCategoryBuilder":
        self._name = name
        return self

    def with_object(self, label: str) -> "FiniteDgCategoryBuilder":
        if label in self._objects:
            raise InvalidDgData(f"{self._name}: duplicate object {label!r}")
        self._objects.append(label)
        return self

    def with_hom(
        self,
        source: str,
        target: str,
        degrees: Sequence[int],
        labels: Optional[Sequence[str]] = None,
    ) -> "FiniteDgCategoryBuilder":
        """Declare the basis of hom(source, target) by the degree of each element."""
        self._degrees[(source, target)] = tuple(int(d) for d in degrees)
        if labels is not None:
            self._labels[(source, target)] = tuple(labels)
        return self

    def with_differential(
        self, source: str, target: str, rows: Sequence[Sequence[Scalar]]
    ) -> "FiniteDgCategoryBuilder":
        """Set the differential of hom(source, target); columns are images."""
        self._differentials[(source, target)] = rows
        return self

    def with_unit(self, label: str, index: int) -> "FiniteDgCategoryBuilder":
        self._units[label] = index
        return self

    def with_composition(
        self,
        objects: Tuple[str, str, str],
        g_index: int,
        f_index: int,
        result: Coefficients,
    ) -> "FiniteDgCategoryBuilder":
        """
        Set g∘f for basis elements g of hom(y, z) and f of hom(x, y).

        Args:
            objects: The triple (x, y, z)
            g_index: Basis index in hom(y, z)
            f_index: Basis index in hom(x, y)
            result: Coordinates in hom(x, z), dense or as {index: coefficient}
        """
        self._products.setdefault(tuple(objects), {})[(g_index, f_index)] = result
        return self

    def _vector(self, size: int, coefficients: Coefficients) -> Vector:
        if isinstance(coefficients, Mapping):
            values = list(self._field.zero_vector(size))
            for index, value in coefficients.items():
                if not 0 <= int(index) < size:
                    raise InvalidDgData(
                        f"{self._name}: coordinate {index} out of range {size}"
                    )
                values[int(index)] = self._field.element(value)
            return tuple(values)
        if len(coefficients) != size:
            raise InvalidDgData(
                f"{self._name}: {len(coefficients)} coordinates for dimension {size}"
            )
        return self._field.vector(coefficients)

    def _hom(self, pair: Pair) -> HomComplex:
        degrees = self._degrees.get(pair, ())
        size = len(degrees)
        rows = self._differentials.get(pair)
        if rows is None:
            differential = FieldMatrix.zeros(self._field, size, size)
        else:
            differential = FieldMatrix.from_values(self._field, rows, size)
        labels = self._labels.get(pair, ())
        return HomComplex(self._field, degrees, differential, labels)

    def build(self) -> FiniteDgCategory:
        """
        Build and validate the category.

        Raises:
            InvalidDgData: If an object is unknown, a unit is missing or the
                dg axioms fail
        """
        if not self._objects:
            raise InvalidDgData(f"{self._name}: a category needs an object")
        declared = set(self._degrees) | set(self._differentials)
        for key in list(declared) + list(self._products):
            for label in key:
                if label not in self._objects:
                    raise InvalidDgData(f"{self._name}: unknown object {label!r}")
        homs = {
            (x, y): self._hom((x, y)) for x in self._objects for y in self._objects
        }
        units: Dict[str, Vector] = {}
        unit_index: Dict[str, int] = {}
        for x in self._objects:
            index = self._units.get(x, 0)
            size = homs[(x, x)].dimension
            if not 0 <= index < size:
                raise InvalidDgData(f"{self._name}: object {x} has no unit element")
            unit_index[x] = index
            units[x] = self._field.unit_vector(size, index)
        composition: Dict[Triple, Dict[Tuple[int, int], Vector]] = {}
        for x in self._objects:
            for y in self._objects:
                hom = homs[(x, y)]
                for j in range(hom.dimension):
                    element = hom.basis_vector(j)
                    composition.setdefault((x, x, y), {})[(j, unit_index[x])] = element
                    composition.setdefault((x, y, y), {})[(unit_index[y], j)] = element
        for (x, y, z), products in self._products.items():
            size = homs[(x, z)].dimension
            table = composition.setdefault((x, y, z), {})
            for key, coefficients in products.items():
                table[key] = self._vector(size, coefficients)
        tables: Dict[Triple, CompositionTable] = {
            triple: {key: v for key, v in table.items() if any(v)}
            for triple, table in composition.items()
        }
        category = FiniteDgCategory(
            self._field, tuple(self._objects), homs, tables, units, self._name
        )
        return validate_category(category)
