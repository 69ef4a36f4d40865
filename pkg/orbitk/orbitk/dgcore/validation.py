"""
Structural checks for dg categories and dg endofunctors.

Every check runs on basis elements and raises InvalidDgData naming the first
failure it finds.
"""

import logging

from ..errors import InvalidDgData
from ..fields import Vector
from .category import DgEndofunctor, FiniteDgCategory, nonzero
from .homology import is_quasi_iso_in_degree

logger = logging.getLogger(__name__)


def _add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _scaled(vector: Vector, sign: int) -> Vector:
    return vector if sign > 0 else tuple(-a for a in vector)


def _check_composition_degrees(a: FiniteDgCategory) -> None:
    for (x, y, z), table in a.composition.items():
        left, right, target = a.hom(y, z), a.hom(x, y), a.hom(x, z)
        for (i, j), product in table.items():
            degree = left.degrees[i] + right.degrees[j]
            for k, _ in nonzero(product):
                if target.degrees[k] != degree:
                    raise InvalidDgData(
                        f"{a.name}: composing {left.label(i)} with {right.label(j)} "
                        f"through ({x}, {y}, {z}) leaves degree {degree}"
                    )


def _check_units(a: FiniteDgCategory) -> None:
    for x in a.objects:
        hom = a.hom(x, x)
        unit = a.unit(x)
        if any(hom.degrees[k] != 0 for k, _ in nonzero(unit)):
            raise InvalidDgData(f"{a.name}: unit of {x} is not in degree 0")
        if any(hom.d(unit)):
            raise InvalidDgData(f"{a.name}: unit of {x} is not a cycle")
    for x, y in a.pairs():
        for j in range(a.dimension(x, y)):
            f = a.basis_vector(x, y, j)
            if a.compose(x, y, y, a.unit(y), f) != f:
                raise InvalidDgData(
                    f"{a.name}: unit of {y} is not a left unit on hom({x}, {y})"
                )
            if a.compose(x, x, y, f, a.unit(x)) != f:
                raise InvalidDgData(
                    f"{a.name}: unit of {x} is not a right unit on hom({x}, {y})"
                )


def _check_leibniz(a: FiniteDgCategory) -> None:
    for x in a.objects:
        for y in a.objects:
            for z in a.objects:
                left, right = a.hom(y, z), a.hom(x, y)
                for i in range(left.dimension):
                    g = left.basis_vector(i)
                    dg = left.d(g)
                    sign = -1 if left.degrees[i] % 2 else 1
                    for j in range(right.dimension):
                        f = right.basis_vector(j)
                        lhs = a.hom(x, z).d(a.compose(x, y, z, g, f))
                        rhs = _add(
                            a.compose(x, y, z, dg, f),
                            _scaled(a.compose(x, y, z, g, right.d(f)), sign),
                        )
                        if lhs != rhs:
                            raise InvalidDgData(
                                f"{a.name}: Leibniz rule fails for "
                                f"{left.label(i)} and {right.label(j)} "
                                f"through ({x}, {y}, {z})"
                            )


def _check_associativity(a: FiniteDgCategory) -> None:
    objects = a.objects
    for x in objects:
        for y in objects:
            for z in objects:
                for w in objects:
                    for i in range(a.dimension(z, w)):
                        h = a.basis_vector(z, w, i)
                        for j in range(a.dimension(y, z)):
                            g = a.basis_vector(y, z, j)
                            hg = a.compose(y, z, w, h, g)
                            for k in range(a.dimension(x, y)):
                                f = a.basis_vector(x, y, k)
                                first = a.compose(x, y, w, hg, f)
                                second = a.compose(
                                    x, z, w, h, a.compose(x, y, z, g, f)
                                )
                                if first != second:
                                    raise InvalidDgData(
                                        f"{a.name}: composition is not "
                                        f"associative on ({x}, {y}, {z}, {w})"
                                    )


def validate_category(a: FiniteDgCategory) -> FiniteDgCategory:
    """
    Check the dg axioms on basis elements and return the category.

    Raises:
        InvalidDgData: If composition degrees, units, the Leibniz rule or
            associativity fail
    """
    _check_composition_degrees(a)
    _check_units(a)
    _check_leibniz(a)
    _check_associativity(a)
    logger.debug("category %s passed validation", a.name)
    return a


def validate_functor(f: DgEndofunctor) -> DgEndofunctor:
    """
    Check that f preserves degrees, differentials, composition and units.

    Raises:
        InvalidDgData: On the first failing check
    """
    a = f.category
    for x, y in a.pairs():
        source, target = a.hom(x, y), a.hom(f(x), f(y))
        matrix = f.hom_maps[(x, y)]
        for i, row in enumerate(matrix.entries):
            for j, _ in nonzero(row):
                if target.degrees[i] != source.degrees[j]:
                    raise InvalidDgData(
                        f"{f.name}: map on hom({x}, {y}) does not preserve degrees"
                    )
        if target.differential @ matrix != matrix @ source.differential:
            raise InvalidDgData(
                f"{f.name}: map on hom({x}, {y}) is not a chain map"
            )
    for x in a.objects:
        if f.apply(x, x, a.unit(x)) != a.unit(f(x)):
            raise InvalidDgData(f"{f.name}: unit of {x} is not preserved")
    for x in a.objects:
        for y in a.objects:
            for z in a.objects:
                for i in range(a.dimension(y, z)):
                    g = a.basis_vector(y, z, i)
                    fg = f.apply(y, z, g)
                    for j in range(a.dimension(x, y)):
                        h = a.basis_vector(x, y, j)
                        image = f.apply(x, z, a.compose(x, y, z, g, h))
                        product = a.compose(f(x), f(y), f(z), fg, f.apply(x, y, h))
                        if image != product:
                            raise InvalidDgData(
                                f"{f.name}: composition through ({x}, {y}, {z}) "
                                "is not preserved"
                            )
    return f


def check_h0_equivalence(f: DgEndofunctor) -> DgEndofunctor:
    """
    Check that f induces an equivalence on H⁰ at the finite level.

    The object map must be a bijection and every map H⁰(x, y) → H⁰(Fx, Fy)
    must be bijective.

    Raises:
        InvalidDgData: With a diagnostic naming the failing object or hom
    """
    a = f.category
    images = set(f.object_map[x] for x in a.objects)
    if len(images) != len(a.objects):
        missing = sorted(set(a.objects) - images)
        raise InvalidDgData(
            f"{f.name} is not an equivalence on H0: objects {missing} are not "
            "in the image of the object map"
        )
    for x, y in a.pairs():
        if not is_quasi_iso_in_degree(
            f.hom_maps[(x, y)], a.hom(x, y), a.hom(f(x), f(y)), 0
        ):
            raise InvalidDgData(
                f"{f.name} is not an equivalence on H0: the map "
                f"H0({x}, {y}) -> H0({f(x)}, {f(y)}) is not bijective"
            )
    return f
