"""Shipped cohomology models and the factory that builds them."""

from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Tuple, Union

from .errors import InputValidationError
from .fields import Scalar
from .mukai import CohomologyModel, build_model
from .quiver import tits_form
from .quiver_presets import type_e


class ModelKind(Enum):
    """Names of the shipped models."""

    POINT = "point"
    PROJECTIVE_LINE = "projective_line"
    CURVE = "curve"
    K3_LATTICE = "k3_lattice"


def point() -> CohomologyModel:
    """Spec k: a single class in degree 0."""
    one = {"1": 1}
    return build_model(
        "point",
        ["1"],
        [0],
        {},
        [[1]],
        {"ch_L": one, "ch_E": one, "ch_omega": one, "sqrt_Td": one},
    )


def projective_line(degree: int = 1) -> CohomologyModel:
    """P¹ with basis 1, h (h² = 0) and L = O(degree)."""
    return build_model(
        f"P1(d={degree})",
        ["1", "h"],
        [0, 2],
        {},
        [[0, 1], [1, 0]],
        {
            "ch_L": {"1": 1, "h": degree},
            "ch_E": {"1": 1},
            "ch_omega": {"1": 1, "h": -2},
            "sqrt_Td": {"1": 1, "h": Fraction(1, 2)},
        },
    )


def curve(genus: int = 1, degree: int = 1) -> CohomologyModel:
    """
    A genus-g curve: 1, a_1..a_g, b_1..b_g, pt with a_i·b_i = pt = −b_i·a_i.

    The line bundle L has degree `degree`; ch_E is the class of a point.
    """
    if genus < 0:
        raise InputValidationError(f"genus {genus} must be nonnegative")
    odd = [f"a{i}" for i in range(1, genus + 1)] + [
        f"b{i}" for i in range(1, genus + 1)
    ]
    basis = ["1"] + odd + ["pt"]
    size = len(basis)
    products: Dict[Tuple[str, str], Mapping[str, Scalar]] = {}
    for i in range(1, genus + 1):
        products[(f"a{i}", f"b{i}")] = {"pt": 1}
        products[(f"b{i}", f"a{i}")] = {"pt": -1}
    pairing = [[0] * size for _ in range(size)]
    pairing[0][size - 1] = pairing[size - 1][0] = 1
    for i in range(1, genus + 1):
        a, b = basis.index(f"a{i}"), basis.index(f"b{i}")
        pairing[a][b] = pairing[b][a] = 1
    return build_model(
        f"curve(g={genus},d={degree})",
        basis,
        [0] + [1] * (2 * genus) + [2],
        products,
        pairing,
        {
            "ch_L": {"1": 1, "pt": degree},
            "ch_E": {"pt": 1},
            "ch_omega": {"1": 1, "pt": 2 * genus - 2},
            "sqrt_Td": {"1": 1, "pt": Fraction(1 - genus, 2)},
        },
    )


def _e8_cartan() -> List[List[int]]:
    form = tits_form(type_e(8))
    return [[int(2 * form[i, j]) for j in range(8)] for i in range(8)]


def k3_intersection_form() -> List[List[int]]:
    """U³ ⊕ E8(−1)², the intersection form on H² of a K3 surface."""
    blocks = [[[0, 1], [1, 0]]] * 3
    negative_e8 = [[-value for value in row] for row in _e8_cartan()]
    blocks += [negative_e8, negative_e8]
    form = [[0] * 22 for _ in range(22)]
    offset = 0
    for block in blocks:
        for i, row in enumerate(block):
            for j, value in enumerate(row):
                form[offset + i][offset + j] = value
        offset += len(block)
    return form


def k3_lattice() -> CohomologyModel:
    """
    A 24-dimensional K3-style even model: 1, e1..e22, pt.

    Cup products on H² follow the intersection form. The pairing is
    r·s′ + r′·s − c·c′, so v = ch(O_X)·sqrt_Td = 1 + pt has ⟨v, v⟩ = 2.
    """
    form = k3_intersection_form()
    middle = [f"e{i}" for i in range(1, 23)]
    basis = ["1"] + middle + ["pt"]
    products: Dict[Tuple[str, str], Mapping[str, Scalar]] = {}
    for i, left in enumerate(middle):
        for j, right in enumerate(middle):
            if form[i][j]:
                products[(left, right)] = {"pt": form[i][j]}
    pairing = [[0] * 24 for _ in range(24)]
    pairing[0][23] = pairing[23][0] = 1
    for i in range(22):
        for j in range(22):
            pairing[i + 1][j + 1] = -form[i][j]
    return build_model(
        "k3_lattice",
        basis,
        [0] + [2] * 22 + [4],
        products,
        pairing,
        {
            "ch_L": {"1": 1, "e1": 1, "e2": 1, "pt": 1},
            "ch_E": {"1": 1},
            "ch_omega": {"1": 1},
            "sqrt_Td": {"1": 1, "pt": 1},
        },
    )


class ModelFactory:
    """Factory for the shipped cohomology models."""

    _models: Dict[str, Callable[..., CohomologyModel]] = {
        ModelKind.POINT.value: point,
        ModelKind.PROJECTIVE_LINE.value: projective_line,
        ModelKind.CURVE.value: curve,
        ModelKind.K3_LATTICE.value: k3_lattice,
    }

    @classmethod
    def create(cls, kind: Union[ModelKind, str], **params: Any) -> CohomologyModel:
        """
        Create a shipped model.

        Args:
            kind: The model name (point, projective_line, curve, k3_lattice)
            **params: Builder parameters, e.g. genus and degree for curves

        Returns:
            The model

        Raises:
            InputValidationError: If the model is unknown or a parameter is
                not accepted
        """
        if isinstance(kind, ModelKind):
            kind = kind.value
        key = kind.strip().lower()
        if key not in cls._models:
            supported = ", ".join(cls._models)
            raise InputValidationError(
                f"Unsupported model: {kind}. Supported models are: {supported}"
            )
        try:
            return cls._models[key](**params)
        except TypeError as exc:
            raise InputValidationError(f"model {key}: {exc}") from None

    @classmethod
    def register_model(
        cls, kind: Union[ModelKind, str], builder: Callable[..., CohomologyModel]
    ) -> None:
        """Register a new model builder under a name."""
        if isinstance(kind, ModelKind):
            kind = kind.value
        cls._models[kind.lower()] = builder

    @classmethod
    def get_registered_models(cls) -> Dict[str, Callable[..., CohomologyModel]]:
        return cls._models.copy()
