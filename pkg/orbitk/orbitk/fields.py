"""
Coefficient Fields

This module demonstrates the Strategy pattern for coefficient arithmetic: the
rationals and prime fields are interchangeable strategies used by the dg engine,
the field-coefficient invariant specs and the cohomology models. Linear algebra
over the chosen field goes through sympy's DomainMatrix.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple, Union

from sympy import GF, QQ, isprime
from sympy.polys.matrices import DomainMatrix

from .errors import DimensionMismatch, InputValidationError

Scalar = Union[int, Fraction, str]
Vector = Tuple[Any, ...]


class CoefficientField(ABC):
    """Abstract base class for coefficient field strategies."""

    @property
    @abstractmethod
    def domain(self) -> Any:
        """The sympy domain carrying the arithmetic."""
        pass

    @property
    @abstractmethod
    def name(self) -> str:
        """Short name used in JSON ("Q" or the prime)."""
        pass

    @property
    @abstractmethod
    def characteristic(self) -> int:
        pass

    @abstractmethod
    def element(self, value: Scalar) -> Any:
        """
        Convert an integer, fraction or decimal string into a field element.

        Raises:
            InputValidationError: If the value has no image in the field
        """
        pass

    @abstractmethod
    def to_python(self, element: Any) -> Union[int, Fraction]:
        """Convert a field element to a plain Python number."""
        pass

    @property
    def zero(self) -> Any:
        return self.domain.zero

    @property
    def one(self) -> Any:
        return self.domain.one

    def vector(self, values: Sequence[Scalar]) -> Vector:
        return tuple(self.element(v) for v in values)

    def zero_vector(self, size: int) -> Vector:
        return (self.zero,) * size

    def unit_vector(self, size: int, index: int) -> Vector:
        return tuple(self.one if i == index else self.zero for i in range(size))

    def to_json_value(self, element: Any) -> str:
        return str(self.to_python(element))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoefficientField) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class RationalField(CoefficientField):
    """Exact rational arithmetic."""

    @property
    def domain(self) -> Any:
        return QQ

    @property
    def name(self) -> str:
        return "Q"

    @property
    def characteristic(self) -> int:
        return 0

    def element(self, value: Scalar) -> Any:
        fraction = _to_fraction(value)
        return QQ(fraction.numerator, fraction.denominator)

    def to_python(self, element: Any) -> Fraction:
        return Fraction(int(element.numerator), int(element.denominator))


class PrimeField(CoefficientField):
    """Arithmetic modulo a prime p."""

    def __init__(self, p: int) -> None:
        if p < 2 or not isprime(p):
            raise InputValidationError(f"field characteristic {p} is not a prime")
        self._p = p
        self._domain = GF(p)

    @property
    def domain(self) -> Any:
        return self._domain

    @property
    def name(self) -> str:
        return str(self._p)

    @property
    def characteristic(self) -> int:
        return self._p

    def element(self, value: Scalar) -> Any:
        fraction = _to_fraction(value)
        if fraction.denominator % self._p == 0:
            raise InputValidationError(
                f"{fraction} has no image in GF({self._p})"
            )
        return self._domain(fraction.numerator) / self._domain(fraction.denominator)

    def to_python(self, element: Any) -> int:
        return int(element) % self._p


def _to_fraction(value: Scalar) -> Fraction:
    if isinstance(value, bool):
        raise InputValidationError(f"invalid field element {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputValidationError(f"invalid field element {value!r}") from None


def field_from_name(name: Union[str, int, None]) -> CoefficientField:
    """
    Return the field strategy named by JSON data.

    Args:
        name: "Q" (default) or a prime, as an int or decimal string
    """
    if name is None or str(name).strip().upper() in ("Q", "QQ"):
        return RationalField()
    try:
        return PrimeField(int(name))
    except ValueError:
        raise InputValidationError(f"unknown coefficient field {name!r}") from None


@dataclass(frozen=True)
class FieldMatrix:
    """Dense matrix over a coefficient field."""

    field: CoefficientField
    rows: int
    cols: int
    entries: Tuple[Vector, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise DimensionMismatch(
                f"entries do not form a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_values(
        cls, field: CoefficientField, rows: Sequence[Sequence[Scalar]], cols: int = -1
    ) -> "FieldMatrix":
        """Build a matrix from numbers; cols is needed only without rows."""
        width = len(rows[0]) if rows else max(cols, 0)
        return cls(field, len(rows), width, tuple(field.vector(row) for row in rows))

    @classmethod
    def from_columns(
        cls, field: CoefficientField, columns: Sequence[Vector], rows: int
    ) -> "FieldMatrix":
        for column in columns:
            if len(column) != rows:
                raise DimensionMismatch(
                    f"column of length {len(column)} in a {rows}-row matrix"
                )
        return cls(
            field,
            rows,
            len(columns),
            tuple(tuple(column[i] for column in columns) for i in range(rows)),
        )

    @classmethod
    def zeros(cls, field: CoefficientField, rows: int, cols: int) -> "FieldMatrix":
        zero_rows = tuple(field.zero_vector(cols) for _ in range(rows))
        return cls(field, rows, cols, zero_rows)

    @classmethod
    def identity(cls, field: CoefficientField, size: int) -> "FieldMatrix":
        return cls(
            field, size, size, tuple(field.unit_vector(size, i) for i in range(size))
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def to_domain_matrix(self) -> DomainMatrix:
        return DomainMatrix(
            [list(row) for row in self.entries],
            (self.rows, self.cols),
            self.field.domain,
        )

    def _from_domain_matrix(self, matrix: DomainMatrix) -> "FieldMatrix":
        rows, cols = matrix.shape
        if rows == 0 or cols == 0:
            return FieldMatrix.zeros(self.field, rows, cols)
        return FieldMatrix(
            self.field, rows, cols, tuple(tuple(row) for row in matrix.to_list())
        )

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        if 0 in (self.rows, self.cols, other.cols):
            return FieldMatrix.zeros(self.field, self.rows, other.cols)
        return self._from_domain_matrix(
            self.to_domain_matrix().matmul(other.to_domain_matrix())
        )

    def apply(self, vector: Vector) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatch(
                f"vector of length {len(vector)} for {self.cols} columns"
            )
        zero = self.field.zero
        result = []
        for row in self.entries:
            total = zero
            for a, b in zip(row, vector):
                if a and b:
                    total += a * b
            result.append(total)
        return tuple(result)

    def _combine(self, other: "FieldMatrix", sign: int) -> "FieldMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        return FieldMatrix(
            self.field,
            self.rows,
            self.cols,
            tuple(
                tuple(a + b if sign > 0 else a - b for a, b in zip(r, s))
                for r, s in zip(self.entries, other.entries)
            ),
        )

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "FieldMatrix":
        return self.scale(-1)

    def scale(self, factor: Scalar) -> "FieldMatrix":
        value = self.field.element(factor)
        return FieldMatrix(
            self.field,
            self.rows,
            self.cols,
            tuple(tuple(value * a for a in row) for row in self.entries),
        )

    def minus_identity(self) -> "FieldMatrix":
        if self.rows != self.cols:
            raise DimensionMismatch("f − Id needs a square matrix")
        return self - FieldMatrix.identity(self.field, self.rows)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix.from_columns(self.field, list(self.entries), self.cols)

    def select(self, rows: Sequence[int], cols: Sequence[int]) -> "FieldMatrix":
        """Return the submatrix on the given row and column indices."""
        return FieldMatrix(
            self.field,
            len(rows),
            len(cols),
            tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
        )

    def is_zero(self) -> bool:
        return all(not a for row in self.entries for a in row)

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return int(self.to_domain_matrix().rank())

    def nullspace(self) -> List[Vector]:
        """Return a basis of {x : M·x = 0}."""
        if self.cols == 0:
            return []
        if self.rows == 0 or self.is_zero():
            return [self.field.unit_vector(self.cols, j) for j in range(self.cols)]
        basis = self.to_domain_matrix().nullspace()
        if basis.shape[0] == 0:
            return []
        return [tuple(row) for row in basis.to_list()]

    def solve(self, vector: Vector) -> Optional[Vector]:
        """Return some x with M·x = vector, or None when there is none."""
        if len(vector) != self.rows:
            raise DimensionMismatch(
                f"right-hand side of length {len(vector)} for {self.rows} rows"
            )
        if self.rows == 0:
            return self.field.zero_vector(self.cols)
        augmented = FieldMatrix(
            self.field,
            self.rows,
            self.cols + 1,
            tuple(row + (value,) for row, value in zip(self.entries, vector)),
        )
        reduced, pivots = augmented.to_domain_matrix().rref()
        if self.cols in pivots:
            return None
        rows = reduced.to_list()
        solution = list(self.field.zero_vector(self.cols))
        for i, pivot in enumerate(pivots):
            solution[pivot] = rows[i][self.cols]
        return tuple(solution)

    def to_json(self) -> List[List[str]]:
        return [[self.field.to_json_value(a) for a in row] for row in self.entries]


def span_rank(field: CoefficientField, vectors: Sequence[Vector], length: int) -> int:
    """Return the dimension of the span of the vectors."""
    if not vectors:
        return 0
    return FieldMatrix.from_columns(field, vectors, length).rank()
