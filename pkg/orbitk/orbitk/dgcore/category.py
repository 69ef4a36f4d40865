"""
Finite dg Categories

A FiniteDgCategory stores, for every ordered pair of objects, a finite graded
hom complex together with structure constants for composition. Composition
tables only hold nonzero products of basis elements; a missing entry means
the product is zero.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from ..errors import DimensionMismatch, InvalidDgData
from ..fields import CoefficientField, FieldMatrix, Vector

Pair = Tuple[str, str]
Triple = Tuple[str, str, str]
CompositionTable = Mapping[Tuple[int, int], Vector]


def nonzero(vector: Vector) -> Iterator[Tuple[int, object]]:
    """Yield (index, coefficient) for the nonzero coordinates."""
    for index, value in enumerate(vector):
        if value:
            yield index, value


@dataclass(frozen=True)
class HomComplex:
    """A finite cochain complex with one basis element per entry of degrees."""

    field: CoefficientField
    degrees: Tuple[int, ...]
    differential: FieldMatrix
    labels: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        size = len(self.degrees)
        if self.differential.shape != (size, size):
            raise InvalidDgData(
                f"differential of shape {self.differential.shape} on a complex "
                f"of dimension {size}"
            )
        if self.labels and len(self.labels) != size:
            raise InvalidDgData(f"{len(self.labels)} labels for {size} basis elements")
        for i, row in enumerate(self.differential.entries):
            for j, value in nonzero(row):
                if self.degrees[i] != self.degrees[j] + 1:
                    raise InvalidDgData(
                        f"differential sends degree {self.degrees[j]} to "
                        f"degree {self.degrees[i]}"
                    )
        if size and not (self.differential @ self.differential).is_zero():
            raise InvalidDgData("differential does not square to zero")

    @classmethod
    def zero(cls, field: CoefficientField) -> "HomComplex":
        return cls(field, (), FieldMatrix.zeros(field, 0, 0))

    @classmethod
    def concentrated(
        cls, field: CoefficientField, degrees: Sequence[int]
    ) -> "HomComplex":
        """A complex with the given basis degrees and zero differential."""
        size = len(degrees)
        return cls(field, tuple(degrees), FieldMatrix.zeros(field, size, size))

    @property
    def dimension(self) -> int:
        return len(self.degrees)

    def indices(self, degree: int) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d == degree]

    def dims(self) -> Dict[int, int]:
        """Dimension per degree, for the degrees that occur."""
        counts: Dict[int, int] = {}
        for degree in self.degrees:
            counts[degree] = counts.get(degree, 0) + 1
        return dict(sorted(counts.items()))

    def d(self, vector: Vector) -> Vector:
        return self.differential.apply(vector)

    def basis_vector(self, index: int) -> Vector:
        return self.field.unit_vector(self.dimension, index)

    def label(self, index: int) -> str:
        return self.labels[index] if self.labels else f"b{index}"


@dataclass(frozen=True)
class FiniteDgCategory:
    """
    A dg category with finitely many objects and finite hom complexes.

    composition[(x, y, z)][(i, j)] is the coordinate vector in hom(x, z) of
    the i-th basis element of hom(y, z) composed with the j-th basis element
    of hom(x, y). Construction only checks shapes; the dg axioms are checked
    by dgcore.validation.validate_category.
    """

    field: CoefficientField
    objects: Tuple[str, ...]
    homs: Mapping[Pair, HomComplex]
    composition: Mapping[Triple, CompositionTable]
    units: Mapping[str, Vector]
    name: str = "A"

    def __post_init__(self) -> None:
        if len(set(self.objects)) != len(self.objects):
            raise InvalidDgData(f"{self.name}: duplicate object labels")
        for x in self.objects:
            for y in self.objects:
                if (x, y) not in self.homs:
                    raise InvalidDgData(f"{self.name}: hom({x}, {y}) is missing")
        for pair in self.homs:
            self._check_objects(pair)
        for x in self.objects:
            if x not in self.units:
                raise InvalidDgData(f"{self.name}: object {x} has no unit")
            if len(self.units[x]) != self.homs[(x, x)].dimension:
                raise InvalidDgData(f"{self.name}: unit of {x} has the wrong length")
        for (x, y, z), table in self.composition.items():
            self._check_objects((x, y, z))
            left, right = self.dimension(y, z), self.dimension(x, y)
            size = self.dimension(x, z)
            for (i, j), product in table.items():
                if not (0 <= i < left and 0 <= j < right) or len(product) != size:
                    raise InvalidDgData(
                        f"{self.name}: composition entry ({i}, {j}) for "
                        f"({x}, {y}, {z}) is out of range"
                    )

    def _check_objects(self, labels: Sequence[str]) -> None:
        for label in labels:
            if label not in self.objects:
                raise InvalidDgData(f"{self.name}: unknown object {label!r}")

    def hom(self, x: str, y: str) -> HomComplex:
        return self.homs[(x, y)]

    def dimension(self, x: str, y: str) -> int:
        return self.homs[(x, y)].dimension

    def pairs(self) -> List[Pair]:
        return [(x, y) for x in self.objects for y in self.objects]

    def unit(self, x: str) -> Vector:
        return self.units[x]

    def basis_vector(self, x: str, y: str, index: int) -> Vector:
        return self.homs[(x, y)].basis_vector(index)

    def compose(self, x: str, y: str, z: str, g: Vector, f: Vector) -> Vector:
        """Return g∘f for g in hom(y, z) and f in hom(x, y)."""
        if len(g) != self.dimension(y, z) or len(f) != self.dimension(x, y):
            raise DimensionMismatch(
                f"{self.name}: cannot compose vectors of lengths {len(g)} and "
                f"{len(f)} through ({x}, {y}, {z})"
            )
        table = self.composition.get((x, y, z), {})
        result = list(self.field.zero_vector(self.dimension(x, z)))
        if not table:
            return tuple(result)
        right = list(nonzero(f))
        for i, a in nonzero(g):
            for j, b in right:
                product = table.get((i, j))
                if product is None:
                    continue
                coefficient = a * b
                for k, c in nonzero(product):
                    result[k] += coefficient * c
        return tuple(result)

    def compose_basis(self, x: str, y: str, z: str, i: int, j: int) -> Vector:
        table = self.composition.get((x, y, z), {})
        product = table.get((i, j))
        if product is None:
            return self.field.zero_vector(self.dimension(x, z))
        return product


@dataclass(frozen=True)
class DgEndofunctor:
    """
    A strict dg endofunctor given by an object map and one matrix per hom.

    hom_maps[(x, y)] has columns indexed by the basis of hom(x, y) and rows by
    the basis of hom(F x, F y).
    """

    category: FiniteDgCategory
    object_map: Mapping[str, str]
    hom_maps: Mapping[Pair, FieldMatrix]
    name: str = "F"
    _powers: List["DgEndofunctor"] = field(
        default_factory=list, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        a = self.category
        for x in a.objects:
            if self.object_map.get(x) not in a.objects:
                raise InvalidDgData(
                    f"{self.name}: object {x} is not sent to an object of {a.name}"
                )
        for x, y in a.pairs():
            matrix = self.hom_maps.get((x, y))
            expected = (a.dimension(self(x), self(y)), a.dimension(x, y))
            if matrix is None or matrix.shape != expected:
                raise InvalidDgData(
                    f"{self.name}: map on hom({x}, {y}) must have shape {expected}"
                )

    def __call__(self, x: str) -> str:
        return self.object_map[x]

    @classmethod
    def identity(cls, a: FiniteDgCategory) -> "DgEndofunctor":
        return cls(
            a,
            {x: x for x in a.objects},
            {
                (x, y): FieldMatrix.identity(a.field, a.dimension(x, y))
                for x, y in a.pairs()
            },
            name="Id",
        )

    def apply(self, x: str, y: str, vector: Vector) -> Vector:
        """Apply F to an element of hom(x, y)."""
        return self.hom_maps[(x, y)].apply(vector)

    def then(self, other: "DgEndofunctor") -> "DgEndofunctor":
        """Return other∘self."""
        a = self.category
        return DgEndofunctor(
            a,
            {x: other(self(x)) for x in a.objects},
            {
                (x, y): other.hom_maps[(self(x), self(y))] @ self.hom_maps[(x, y)]
                for x, y in a.pairs()
            },
            name=f"{other.name}{self.name}",
        )

    def power(self, n: int) -> "DgEndofunctor":
        """Return Fⁿ (F⁰ is the identity)."""
        return self.powers(n)[n]

    def powers(self, n: int) -> List["DgEndofunctor"]:
        """Return [F⁰, F¹, ..., Fⁿ]; computed powers are cached."""
        if n < 0:
            raise InvalidDgData(f"negative functor power {n}")
        cache = self._powers
        if not cache:
            cache.append(DgEndofunctor.identity(self.category))
        while len(cache) <= n:
            previous = cache[-1]
            step = previous.then(self)
            cache.append(
                DgEndofunctor(
                    self.category,
                    step.object_map,
                    step.hom_maps,
                    name=f"{self.name}^{len(cache)}",
                )
            )
        return cache[: n + 1]
