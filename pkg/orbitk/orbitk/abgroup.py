"""
Finitely Generated Abelian Groups

This module demonstrates canonical invariant-factor groups, presentations by
generators and relations, and homomorphisms whose well-definedness is checked
rather than assumed.
"""

import logging
import re
from dataclasses import dataclass
from math import gcd
from typing import List, Sequence, Tuple

from .errors import DimensionMismatch, IllFormedHom, InputValidationError
from .exactla import (
    IntMatrix,
    cokernel_presentation,
    kernel_basis,
    lattice_basis,
    solve_integer,
)

logger = logging.getLogger(__name__)

_SUMMAND = re.compile(r"^Z(?:\^(\d+)|/(\d+))?$")


@dataclass(frozen=True)
class FgAbGroup:
    """
    A finitely generated abelian group Z^rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk.

    Instances are always canonical: every factor is at least 2 and divides the
    next, so isomorphic groups compare equal.
    """

    rank: int = 0
    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise InputValidationError(f"negative rank {self.rank}")
        factors = self.invariant_factors
        for index, factor in enumerate(factors):
            if factor < 2:
                raise InputValidationError(f"invariant factor {factor} is below 2")
            if index and factor % factors[index - 1]:
                raise InputValidationError(
                    f"invariant factors {factors} do not form a divisibility chain"
                )

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls()

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank=rank)

    @classmethod
    def cyclic(cls, order: int) -> "FgAbGroup":
        """Return Z/order (Z for order 0)."""
        return cls.from_invariants(0, [order])

    @classmethod
    def from_invariants(cls, rank: int, torsion: Sequence[int]) -> "FgAbGroup":
        """
        Canonicalize Z^rank ⊕ (⊕ Z/t) for arbitrary orders t.

        Orders 1 vanish, order 0 adds a free summand, and coprime factors merge
        (Z/2 ⊕ Z/3 becomes Z/6).
        """
        orders = [abs(int(t)) for t in torsion]
        return cokernel_presentation(
            IntMatrix.diagonal(orders, rows=rank + len(orders), cols=len(orders))
        )

    @classmethod
    def parse(cls, text: str) -> "FgAbGroup":
        """
        Parse the rendering grammar ("0", "Z", "Z^r", "Z/d", joined by "(+)").

        Raises:
            InputValidationError: If the text is not in the grammar
        """
        cleaned = text.strip()
        if cleaned in ("0", ""):
            return cls()
        rank = 0
        torsion: List[int] = []
        for part in cleaned.split("(+)"):
            match = _SUMMAND.match(part.strip().replace(" ", ""))
            if match is None:
                raise InputValidationError(f"cannot parse group summand {part!r}")
            power, order = match.groups()
            if order is not None:
                torsion.append(int(order))
            else:
                rank += int(power) if power is not None else 1
        return cls.from_invariants(rank, torsion)

    def render(self) -> str:
        """Return the canonical string, e.g. "Z^2 (+) Z/2 (+) Z/4"."""
        parts: List[str] = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " (+) ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    def is_free(self) -> bool:
        return not self.invariant_factors

    def torsion_order(self) -> int:
        order = 1
        for factor in self.invariant_factors:
            order *= factor
        return order

    def direct_sum(self, other: "FgAbGroup") -> "FgAbGroup":
        return direct_sum(self, other)

    def tensor_cyclic(self, n: int) -> "FgAbGroup":
        """Return G ⊗ Z/n."""
        if n == 0:
            return self
        return FgAbGroup.from_invariants(
            0, [n] * self.rank + [gcd(d, n) for d in self.invariant_factors]
        )

    def torsion_subgroup(self, n: int) -> "FgAbGroup":
        """Return the n-torsion subgroup {g : n·g = 0}."""
        if n == 0:
            return FgAbGroup(invariant_factors=self.invariant_factors)
        return FgAbGroup.from_invariants(0, [gcd(d, n) for d in self.invariant_factors])

    def presentation(self) -> "Presentation":
        return Presentation.of(self)


@dataclass(frozen=True)
class Presentation:
    """Generators and a relation matrix whose columns are the relations."""

    generators: int
    relations: IntMatrix

    def __post_init__(self) -> None:
        if self.relations.rows != self.generators:
            raise DimensionMismatch(
                f"relation matrix has {self.relations.rows} rows for "
                f"{self.generators} generators"
            )

    @classmethod
    def free(cls, rank: int) -> "Presentation":
        return cls(rank, IntMatrix.zeros(rank, 0))

    @classmethod
    def of(cls, group: FgAbGroup) -> "Presentation":
        """Canonical presentation: free generators first, then torsion."""
        size = group.rank + len(group.invariant_factors)
        columns = []
        for offset, factor in enumerate(group.invariant_factors):
            column = [0] * size
            column[group.rank + offset] = factor
            columns.append(column)
        return cls(size, IntMatrix.from_columns(columns, rows=size))

    def group(self) -> FgAbGroup:
        return cokernel_presentation(self.relations)

    def contains(self, vector: Sequence[int]) -> bool:
        """Decide whether the vector lies in the relation lattice."""
        if len(vector) != self.generators:
            raise DimensionMismatch(
                f"vector of length {len(vector)} for {self.generators} generators"
            )
        if not any(vector):
            return True
        return solve_integer(self.relations, vector) is not None

    def direct_sum(self, other: "Presentation") -> "Presentation":
        padding = IntMatrix.zeros(self.generators, other.relations.cols)
        top = self.relations.hstack(padding)
        bottom = IntMatrix.zeros(other.generators, self.relations.cols).hstack(
            other.relations
        )
        return Presentation(self.generators + other.generators, top.vstack(bottom))


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given by its matrix on the chosen generators."""

    source: Presentation
    target: Presentation
    matrix: IntMatrix

    def __post_init__(self) -> None:
        expected = (self.target.generators, self.source.generators)
        if self.matrix.shape != expected:
            raise DimensionMismatch(
                f"homomorphism matrix is {self.matrix.shape}, expected {expected}"
            )

    @classmethod
    def identity(cls, presentation: Presentation) -> "GroupHom":
        return cls(
            presentation, presentation, IntMatrix.identity(presentation.generators)
        )

    @classmethod
    def zero(cls, source: Presentation, target: Presentation) -> "GroupHom":
        return cls(
            source, target, IntMatrix.zeros(target.generators, source.generators)
        )

    @classmethod
    def endomorphism(cls, presentation: Presentation, matrix: IntMatrix) -> "GroupHom":
        return cls(presentation, presentation, matrix)

    @property
    def is_endomorphism(self) -> bool:
        return self.source == self.target

    def check_well_defined(self) -> None:
        """
        Verify that every source relation maps into the target relation lattice.

        Raises:
            IllFormedHom: Naming the first relation that fails
        """
        image = self.matrix @ self.source.relations
        for index, column in enumerate(image.columns()):
            if not self.target.contains(column):
                raise IllFormedHom(
                    f"source relation {index} maps to {list(column)}, which is "
                    "not a relation of the target"
                )

    def _same_endpoints(self, other: "GroupHom") -> None:
        if self.source != other.source or self.target != other.target:
            raise DimensionMismatch("homomorphisms have different endpoints")

    def __add__(self, other: "GroupHom") -> "GroupHom":
        self._same_endpoints(other)
        return GroupHom(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        self._same_endpoints(other)
        return GroupHom(self.source, self.target, self.matrix - other.matrix)

    def scale(self, factor: int) -> "GroupHom":
        return GroupHom(self.source, self.target, self.matrix.scale(factor))

    def minus_identity(self) -> "GroupHom":
        """Return f − Id for an endomorphism."""
        if not self.is_endomorphism:
            raise DimensionMismatch("f − Id needs an endomorphism")
        return self - GroupHom.identity(self.source)

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """Return self ∘ inner."""
        if inner.target != self.source:
            raise DimensionMismatch("composition endpoints do not match")
        return GroupHom(inner.source, self.target, self.matrix @ inner.matrix)

    def conjugate(self, change: IntMatrix) -> "GroupHom":
        """
        Return the endomorphism P·f·P⁻¹ on the presentation transported by P.

        Args:
            change: A unimodular matrix P acting on generators
        """
        if not self.is_endomorphism:
            raise DimensionMismatch("conjugation needs an endomorphism")
        if abs(change.det()) != 1:
            raise InputValidationError("change of generators must be unimodular")
        inverse = _integer_inverse(change)
        moved = Presentation(self.source.generators, change @ self.source.relations)
        return GroupHom(moved, moved, change @ self.matrix @ inverse)


def _integer_inverse(matrix: IntMatrix) -> IntMatrix:
    columns = []
    for j in range(matrix.cols):
        unit = [1 if i == j else 0 for i in range(matrix.rows)]
        solution = solve_integer(matrix, unit)
        if solution is None:
            raise InputValidationError("matrix is not invertible over the integers")
        columns.append(solution)
    return IntMatrix.from_columns(columns, rows=matrix.rows)


def cokernel_of_hom(f: GroupHom) -> FgAbGroup:
    """
    Return target / image(f) in canonical form.

    Raises:
        IllFormedHom: If f does not respect the source relations
    """
    f.check_well_defined()
    return cokernel_presentation(f.target.relations.hstack(f.matrix))


def kernel_of_hom(f: GroupHom) -> FgAbGroup:
    """
    Return ker(f) in canonical form.

    The kernel is L / R where L = {x : f(x) lies in the target relations} and
    R is the source relation lattice; L is read off the integer kernel of the
    block matrix [M | −R_target].

    Raises:
        IllFormedHom: If f does not respect the source relations
    """
    f.check_well_defined()
    a = f.source.generators
    stacked = f.matrix.hstack(-f.target.relations)
    solutions = kernel_basis(stacked)
    projected = [column[:a] for column in solutions.columns()]
    basis = lattice_basis(IntMatrix.from_columns(projected, rows=a))
    coordinates = []
    for index, relation in enumerate(f.source.relations.columns()):
        solution = solve_integer(basis, relation)
        if solution is None:
            raise IllFormedHom(f"source relation {index} is not in the kernel lattice")
        coordinates.append(solution)
    logger.debug("kernel lattice has rank %d", basis.cols)
    return cokernel_presentation(IntMatrix.from_columns(coordinates, rows=basis.cols))


def direct_sum(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    """Return the canonical form of a ⊕ b."""
    return FgAbGroup.from_invariants(
        a.rank + b.rank, list(a.invariant_factors) + list(b.invariant_factors)
    )


def quotient_by_elements(
    g: Presentation, elems: Sequence[Sequence[int]]
) -> FgAbGroup:
    """
    Return the quotient of a presented group by the given elements.

    Raises:
        DimensionMismatch: If an element has the wrong number of coordinates
    """
    for elem in elems:
        if len(elem) != g.generators:
            raise DimensionMismatch(
                f"element {list(elem)} has {len(elem)} coordinates, "
                f"presentation has {g.generators} generators"
            )
    extra = IntMatrix.from_columns([list(e) for e in elems], rows=g.generators)
    return cokernel_presentation(g.relations.hstack(extra))


def is_surjective_endomorphism(f: GroupHom) -> bool:
    """A surjective endomorphism of a finitely generated group is bijective."""
    return cokernel_of_hom(f).is_trivial()
