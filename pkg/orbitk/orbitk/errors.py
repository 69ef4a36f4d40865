"""
Errors and Structured Warnings

All input and validation problems derive from OrbitError (a ValueError), so
callers can catch one type. Internal consistency failures raise
InvariantViolation instead; they indicate a bug, never bad input.
"""

from dataclasses import dataclass


class OrbitError(ValueError):
    """Base class for every invalid-input condition raised by orbitk."""


class DimensionMismatch(OrbitError):
    """Matrices, vectors or presentations have incompatible sizes."""


class IllFormedHom(OrbitError):
    """A group homomorphism does not respect the source relations."""


class NonInvertibleAuto(OrbitError):
    """An automorphism supplied by the caller is not invertible."""


class CyclicQuiver(OrbitError):
    """A quiver contains an oriented cycle."""


class InvalidQuiver(OrbitError):
    """A quiver has duplicate or unknown vertex labels."""


class DegreeOutOfWindow(OrbitError):
    """An invariant spec was queried outside its stored degrees."""


class InvalidSpec(OrbitError):
    """An invariant spec is internally inconsistent."""


class MissingClass(OrbitError):
    """A cohomology model lacks a named class."""


class InvalidModel(OrbitError):
    """A cohomology model fails its algebra or pairing checks."""


class InvalidDgData(OrbitError):
    """A dg category or dg functor fails its structural checks."""


class TruncationTooSmall(OrbitError):
    """A weight or stage bound is too small for the requested check."""


class InputValidationError(OrbitError):
    """Input data (JSON, CLI strings, environment) is malformed."""


class InvariantViolation(AssertionError):
    """Two independent computations that must agree did not."""


@dataclass(frozen=True)
class ReportWarning:
    """A warning with a stable machine-readable code."""

    code: str
    message: str

    @classmethod
    def n0_footnote(cls, quiver_name: str) -> "ReportWarning":
        """The 0-cluster category of a non-Dynkin quiver may not be triangulated."""
        return cls(
            "N0_FOOTNOTE",
            f"n = 0 with quiver {quiver_name!r}: the orbit category of a "
            "non-Dynkin quiver may not be triangulated; the cokernel is still "
            "a well-defined group",
        )

    @classmethod
    def displayed_formula_mismatch(
        cls, computed: str, displayed: str
    ) -> "ReportWarning":
        """The honest cokernel differs from the split product formula."""
        return cls(
            "DISPLAYED_FORMULA_MISMATCH",
            f"computed cokernel {computed} differs from the split formula "
            f"{displayed}; the computed group is reported",
        )

    @classmethod
    def ambiguous_extension(cls, degree: int) -> "ReportWarning":
        """The middle group of a degree is not determined by its pieces."""
        return cls(
            "AMBIGUOUS_EXTENSION",
            f"degree {degree}: extension of the kernel piece by the cokernel "
            "piece is not forced; only the pieces are reported",
        )

    @classmethod
    def regularity_assumed(cls) -> "ReportWarning":
        """The caller asserted that homotopy K-theory agrees with K-theory."""
        return cls(
            "REGULARITY_ASSUMED",
            "KH is identified with algebraic K-theory by caller assertion",
        )

    @classmethod
    def colimit_not_stabilized(cls, source: str, target: str) -> "ReportWarning":
        """A colimit approximation is still growing at the last stage."""
        return cls(
            "COLIMIT_NOT_STABILIZED",
            f"hom({source}, {target}) still grows between the last two stages",
        )

    @classmethod
    def non_symmetric_pairing(cls, model: str) -> "ReportWarning":
        """A model pairing is nondegenerate but not symmetric."""
        return cls(
            "NON_SYMMETRIC_PAIRING",
            f"pairing of model {model!r} is not symmetric; only "
            "nondegeneracy is enforced",
        )

    def to_dict(self) -> dict:
        """Return the JSON form used in reports."""
        return {"code": self.code, "message": self.message}
