"""Named quiver presets."""

import re
from enum import Enum
from typing import Callable, Dict, Union

from .errors import InputValidationError
from .quiver import Quiver, path_quiver, vertex_labels


class QuiverFamily(Enum):
    """Families of preset quivers."""

    A = "a"
    D = "d"
    E = "e"
    KRONECKER = "kronecker"


def type_a(s: int) -> Quiver:
    """Linear orientation 1 -> 2 -> ... -> s."""
    if s < 1:
        raise InputValidationError("A<s> needs s >= 1")
    return path_quiver(s, name=f"A{s}")


def type_d(s: int) -> Quiver:
    """Chain 1 -> ... -> s-2 forking into s-1 and s."""
    if s < 4:
        raise InputValidationError("D<s> needs s >= 4")
    labels = vertex_labels(s)
    arrows = tuple((labels[i], labels[i + 1]) for i in range(s - 3))
    arrows += ((labels[s - 3], labels[s - 2]), (labels[s - 3], labels[s - 1]))
    return Quiver(labels, arrows, f"D{s}")


def type_e(s: int) -> Quiver:
    """Chain 1 -> ... -> s-1 with vertex s attached to vertex 3."""
    if s not in (6, 7, 8):
        raise InputValidationError("E<s> needs s in 6, 7, 8")
    labels = vertex_labels(s)
    chain = tuple((labels[i], labels[i + 1]) for i in range(s - 2))
    return Quiver(labels, chain + ((labels[2], labels[s - 1]),), f"E{s}")


def kronecker(m: int) -> Quiver:
    """Two vertices joined by m parallel arrows 1 -> 2."""
    if m < 1:
        raise InputValidationError("kronecker<m> needs m >= 1")
    return Quiver(("1", "2"), (("1", "2"),) * m, f"kronecker{m}")


_PRESET_NAME = re.compile(r"^([a-z]+)-?(\d+)$")


class QuiverFactory:
    """Factory for the preset quiver families."""

    _families: Dict[str, Callable[[int], Quiver]] = {
        QuiverFamily.A.value: type_a,
        QuiverFamily.D.value: type_d,
        QuiverFamily.E.value: type_e,
        QuiverFamily.KRONECKER.value: kronecker,
    }

    @classmethod
    def create(cls, name: str) -> Quiver:
        """
        Create a preset quiver from its name.

        Args:
            name: "A<s>", "D<s>", "E6", "E7", "E8" or "kronecker<m>"
                (case-insensitive, "kronecker-3" also accepted)

        Returns:
            The preset quiver

        Raises:
            InputValidationError: If the name or family is not supported
        """
        match = _PRESET_NAME.match(name.strip().lower())
        if match is None:
            raise InputValidationError(f"cannot parse quiver preset {name!r}")
        family, size = match.group(1), int(match.group(2))
        if family not in cls._families:
            supported = ", ".join(sorted(cls._families))
            raise InputValidationError(
                f"Unsupported quiver family: {family}. "
                f"Supported families are: {supported}"
            )
        return cls._families[family](size)

    @classmethod
    def register_family(
        cls, family: Union[QuiverFamily, str], builder: Callable[[int], Quiver]
    ) -> None:
        """
        Register a new preset family.

        Args:
            family: The family enum or its lowercase name
            builder: Callable building the quiver from its size parameter
        """
        if isinstance(family, QuiverFamily):
            family = family.value
        cls._families[family.lower()] = builder

    @classmethod
    def get_registered_families(cls) -> Dict[str, Callable[[int], Quiver]]:
        """Return a copy of the family registry."""
        return cls._families.copy()
