"""Small dg categories and functors used by the CLI, the demos and the tests."""

from typing import Optional

from ..fields import CoefficientField, FieldMatrix
from .builder import FiniteDgCategoryBuilder
from .category import DgEndofunctor, FiniteDgCategory
from .validation import validate_functor


def point_category(field: Optional[CoefficientField] = None) -> FiniteDgCategory:
    """One object whose endomorphisms are the base field in degree 0."""
    return (
        FiniteDgCategoryBuilder(field)
        .with_name("point")
        .with_object("x")
        .with_hom("x", "x", [0], ["1"])
        .build()
    )


def disjoint_pair(field: Optional[CoefficientField] = None) -> FiniteDgCategory:
    """Two objects with only their identities."""
    return (
        FiniteDgCategoryBuilder(field)
        .with_name("pair")
        .with_object("x")
        .with_object("y")
        .with_hom("x", "x", [0], ["1x"])
        .with_hom("y", "y", [0], ["1y"])
        .build()
    )


def dual_numbers(field: Optional[CoefficientField] = None) -> FiniteDgCategory:
    """One object with End = k ⊕ kε, deg ε = 1, dε = 0 and ε² = 0."""
    return (
        FiniteDgCategoryBuilder(field)
        .with_name("dual")
        .with_object("x")
        .with_hom("x", "x", [0, 1], ["1", "e"])
        .build()
    )


def arrow_category(field: Optional[CoefficientField] = None) -> FiniteDgCategory:
    """Two objects and a single degree-0 arrow a: x → y."""
    return (
        FiniteDgCategoryBuilder(field)
        .with_name("arrow")
        .with_object("x")
        .with_object("y")
        .with_hom("x", "x", [0], ["1x"])
        .with_hom("y", "y", [0], ["1y"])
        .with_hom("x", "y", [0], ["a"])
        .build()
    )


def acyclic_pair(field: Optional[CoefficientField] = None) -> FiniteDgCategory:
    """Two objects with hom(x, y) = (u → v), du = v, deg u = 0."""
    return (
        FiniteDgCategoryBuilder(field)
        .with_name("acyclic")
        .with_object("x")
        .with_object("y")
        .with_hom("x", "x", [0], ["1x"])
        .with_hom("y", "y", [0], ["1y"])
        .with_hom("x", "y", [0, 1], ["u", "v"])
        .with_differential("x", "y", [[0, 0], [1, 0]])
        .build()
    )


def swap_functor(a: FiniteDgCategory) -> DgEndofunctor:
    """Exchange the two objects of a disjoint pair."""
    field = a.field
    return validate_functor(
        DgEndofunctor(
            a,
            {"x": "y", "y": "x"},
            {
                ("x", "x"): FieldMatrix.identity(field, 1),
                ("y", "y"): FieldMatrix.identity(field, 1),
                ("x", "y"): FieldMatrix.zeros(field, 0, 0),
                ("y", "x"): FieldMatrix.zeros(field, 0, 0),
            },
            name="swap",
        )
    )


def collapse_functor(a: FiniteDgCategory) -> DgEndofunctor:
    """Send both objects of a disjoint pair to x; not an equivalence on H⁰."""
    field = a.field
    return validate_functor(
        DgEndofunctor(
            a,
            {"x": "x", "y": "x"},
            {
                ("x", "x"): FieldMatrix.identity(field, 1),
                ("y", "y"): FieldMatrix.identity(field, 1),
                ("x", "y"): FieldMatrix.zeros(field, 1, 0),
                ("y", "x"): FieldMatrix.zeros(field, 1, 0),
            },
            name="collapse",
        )
    )


CATEGORIES = {
    "point": point_category,
    "pair": disjoint_pair,
    "dual": dual_numbers,
    "arrow": arrow_category,
    "acyclic": acyclic_pair,
}
