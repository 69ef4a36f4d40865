"""
Square-Zero Extension

The extension A⋉B₁ by the bimodule B₁(x, y) = A(y, F x)[1] has homs
A(x, y) ⊕ A(x, F y)[1]. The A-part composes as in A, the bimodule acts on
the left through F with the Koszul sign of the shift, and two bimodule
elements compose to zero.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

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
from .validation import validate_category, validate_functor


@dataclass(frozen=True)
class SquareZeroExtension:
    """A⋉B₁ with the position of both summands in every hom."""

    base: FiniteDgCategory
    functor: DgEndofunctor
    category: FiniteDgCategory

    def a_part(self, x: str, y: str) -> List[int]:
        """Indices of the A(x, y) summand."""
        return list(range(self.base.dimension(x, y)))

    def b_part(self, x: str, y: str) -> List[int]:
        """Indices of the shifted A(x, F y) summand."""
        start = self.base.dimension(x, y)
        return list(range(start, start + self.base.dimension(x, self.functor(y))))


def _hom(a: FiniteDgCategory, f: DgEndofunctor, x: str, y: str) -> HomComplex:
    plain, bimodule = a.hom(x, y), a.hom(x, f(y))
    degrees = plain.degrees + tuple(d - 1 for d in bimodule.degrees)
    labels = tuple(plain.label(i) for i in range(plain.dimension)) + tuple(
        f"s{bimodule.label(i)}" for i in range(bimodule.dimension)
    )
    size, offset = len(degrees), plain.dimension
    rows = [list(a.field.zero_vector(size)) for _ in range(size)]
    for i, row in enumerate(plain.differential.entries):
        for j, value in nonzero(row):
            rows[i][j] = value
    for i, row in enumerate(bimodule.differential.entries):
        for j, value in nonzero(row):
            rows[offset + i][offset + j] = -value
    differential = FieldMatrix(a.field, size, size, tuple(tuple(r) for r in rows))
    return HomComplex(a.field, degrees, differential, labels)


def _place(size: int, offset: int, local: Vector, zero: object) -> Vector:
    full = [zero] * size
    for k, value in nonzero(local):
        full[offset + k] = value
    return tuple(full)


def square_zero_extension(a: FiniteDgCategory, f: DgEndofunctor) -> SquareZeroExtension:
    """
    Build A⋉B₁ with (g, g′)∘(f, f′) = (g∘f, g′·f + g·f′).

    g′·f is g′∘f and g·f′ is (−1)^{|g|} F(g)∘f′.

    Raises:
        InvalidDgData: If f is not a dg functor or the result fails validation
    """
    validate_functor(f)
    homs: Dict[Pair, HomComplex] = {(x, y): _hom(a, f, x, y) for x, y in a.pairs()}
    zero = a.field.zero
    composition: Dict[Triple, CompositionTable] = {}
    for x in a.objects:
        for y in a.objects:
            for z in a.objects:
                size = homs[(x, z)].dimension
                b_offset = a.dimension(x, z)
                g_offset, f_offset = a.dimension(y, z), a.dimension(x, y)
                table: Dict[Tuple[int, int], Vector] = {}
                for (i, j), product in a.composition.get((x, y, z), {}).items():
                    table[(i, j)] = _place(size, 0, product, zero)
                for i in range(a.dimension(y, z)):
                    moved = f.apply(y, z, a.basis_vector(y, z, i))
                    sign = -1 if a.hom(y, z).degrees[i] % 2 else 1
                    for j in range(a.dimension(x, f(y))):
                        product = a.compose(
                            x, f(y), f(z), moved, a.basis_vector(x, f(y), j)
                        )
                        if any(product):
                            signed = tuple(sign * c for c in product)
                            table[(i, f_offset + j)] = _place(
                                size, b_offset, signed, zero
                            )
                for (i, j), product in a.composition.get((x, y, f(z)), {}).items():
                    table[(g_offset + i, j)] = _place(size, b_offset, product, zero)
                if table:
                    composition[(x, y, z)] = table
    units = {
        x: _place(homs[(x, x)].dimension, 0, a.unit(x), zero) for x in a.objects
    }
    category = FiniteDgCategory(
        a.field, a.objects, homs, composition, units, name=f"{a.name}xB1"
    )
    validate_category(category)
    return SquareZeroExtension(a, f, category)


def square_zero(a: FiniteDgCategory, f: DgEndofunctor) -> FiniteDgCategory:
    """Return the dg category A⋉B₁."""
    return square_zero_extension(a, f).category
