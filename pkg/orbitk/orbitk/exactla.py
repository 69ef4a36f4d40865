"""
Exact Integer Linear Algebra

This module provides the immutable IntMatrix carrier together with Smith and
Hermite normal forms (with transformation matrices), integer kernels, lattice
bases, integer solving and cokernel presentations. All arithmetic is exact: the
normal forms come from sympy.polys.matrices.normalforms and products,
determinants and ranks from sympy DomainMatrix over ZZ and QQ.
"""

import logging
import random
from dataclasses import dataclass
from math import gcd
from typing import Any, Iterable, List, Optional, Sequence, Tuple, TYPE_CHECKING

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import (
    hermite_normal_form,
    invariant_factors,
    smith_normal_decomp,
)

from .errors import DimensionMismatch, InputValidationError

if TYPE_CHECKING:
    from .abgroup import FgAbGroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        for value in self.entries:
            if isinstance(value, bool) or not isinstance(value, int):
                raise InputValidationError(f"non-integer matrix entry {value!r}")

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None
    ) -> "IntMatrix":
        """
        Build a matrix from a list of rows.

        Args:
            rows: The rows, all of the same length
            cols: Column count, required only when there are no rows

        Returns:
            The matrix

        Raises:
            DimensionMismatch: If the rows are ragged
        """
        width = len(rows[0]) if rows else (cols or 0)
        if cols is not None and rows and cols != width:
            raise DimensionMismatch(f"expected {cols} columns, got {width}")
        flat: List[int] = []
        for index, row in enumerate(rows):
            if len(row) != width:
                raise DimensionMismatch(
                    f"row {index} has {len(row)} entries, expected {width}"
                )
            flat.extend(int(value) for value in row)
        return cls(len(rows), width, tuple(flat))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        """Build a matrix whose columns are the given vectors."""
        for column in columns:
            if len(column) != rows:
                raise DimensionMismatch(
                    f"column of length {len(column)} in a {rows}-row matrix"
                )
        return cls.from_rows(
            [[column[i] for column in columns] for i in range(rows)],
            cols=len(columns),
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        """Return the zero matrix."""
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        """Return the identity matrix."""
        return cls.diagonal([1] * size)

    @classmethod
    def diagonal(
        cls,
        values: Sequence[int],
        rows: Optional[int] = None,
        cols: Optional[int] = None,
    ) -> "IntMatrix":
        """Return a (possibly rectangular) matrix with the given diagonal."""
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        flat = [0] * (rows * cols)
        for i, value in enumerate(values):
            flat[i * cols + i] = int(value)
        return cls(rows, cols, tuple(flat))

    @classmethod
    def from_json(cls, data: Any) -> "IntMatrix":
        """
        Parse an array of arrays of decimal strings (or integers).

        Raises:
            InputValidationError: If the data is not a matrix of integers
        """
        if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
            raise InputValidationError("a matrix must be a JSON array of arrays")
        rows: List[List[int]] = []
        for row in data:
            parsed = []
            for value in row:
                if isinstance(value, bool):
                    raise InputValidationError(f"invalid matrix entry {value!r}")
                try:
                    parsed.append(int(value))
                except (TypeError, ValueError):
                    raise InputValidationError(
                        f"invalid matrix entry {value!r}"
                    ) from None
            rows.append(parsed)
        return cls.from_rows(rows)

    def to_json(self) -> List[List[str]]:
        """Return rows of decimal strings."""
        return [[str(value) for value in row] for row in self.to_rows()]

    def to_rows(self) -> List[List[int]]:
        """Return a list of mutable rows."""
        return [
            list(self.entries[i * self.cols : (i + 1) * self.cols])
            for i in range(self.rows)
        ]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, key: Tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [list(self.column(j)) for j in range(self.cols)], cols=self.rows
        )

    def to_domain_matrix(self) -> DomainMatrix:
        """Return the sympy DomainMatrix over ZZ."""
        return DomainMatrix(
            [[ZZ(value) for value in row] for row in self.to_rows()],
            (self.rows, self.cols),
            ZZ,
        )

    @classmethod
    def from_domain_matrix(cls, matrix: DomainMatrix) -> "IntMatrix":
        rows, cols = matrix.shape
        if rows == 0 or cols == 0:
            return cls.zeros(rows, cols)
        return cls.from_rows(
            [[int(value) for value in row] for row in matrix.to_list()], cols=cols
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}"
            )
        if 0 in (self.rows, self.cols, other.cols):
            return IntMatrix.zeros(self.rows, other.cols)
        product = self.to_domain_matrix().matmul(other.to_domain_matrix())
        return IntMatrix.from_domain_matrix(product)

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Multiply the matrix by a column vector."""
        if len(vector) != self.cols:
            raise DimensionMismatch(
                f"vector of length {len(vector)} for {self.cols} columns"
            )
        return tuple(
            sum(a * b for a, b in zip(self.row(i), vector)) for i in range(self.rows)
        )

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(a - b for a, b in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, factor: int) -> "IntMatrix":
        return IntMatrix(
            self.rows, self.cols, tuple(factor * value for value in self.entries)
        )

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        """Concatenate matrices with the same number of rows side by side."""
        blocks = (self,) + others
        for block in others:
            if block.rows != self.rows:
                raise DimensionMismatch(
                    f"cannot stack {block.rows} rows next to {self.rows}"
                )
        rows = [
            [value for block in blocks for value in block.row(i)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(rows, cols=sum(block.cols for block in blocks))

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        """Concatenate matrices with the same number of columns vertically."""
        for block in others:
            if block.cols != self.cols:
                raise DimensionMismatch(
                    f"cannot stack {block.cols} columns under {self.cols}"
                )
        rows = self.to_rows()
        for block in others:
            rows.extend(block.to_rows())
        return IntMatrix.from_rows(rows, cols=self.cols)

    def det(self) -> int:
        """Return the determinant of a square matrix."""
        if not self.is_square:
            raise DimensionMismatch(f"determinant of a {self.rows}x{self.cols} matrix")
        if self.rows == 0:
            return 1
        return int(self.to_domain_matrix().det())

    def kronecker_identity(self, size: int) -> "IntMatrix":
        """Return self ⊗ Id_size with generators ordered block by block."""
        rows: List[List[int]] = []
        for i in range(self.rows):
            for a in range(size):
                row = [0] * (self.cols * size)
                for j in range(self.cols):
                    row[j * size + a] = self[i, j]
                rows.append(row)
        return IntMatrix.from_rows(rows, cols=self.cols * size)

    def __str__(self) -> str:
        return "[" + ", ".join(
            "[" + ", ".join(str(v) for v in row) + "]" for row in self.to_rows()
        ) + "]"


@dataclass(frozen=True)
class SnfDecomposition:
    """U·A·V = D with U, V unimodular and D in Smith normal form."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.d[i, i] for i in range(min(self.d.rows, self.d.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for value in self.diagonal if value != 0)


@dataclass(frozen=True)
class HnfDecomposition:
    """U·A = H with U unimodular and H in row Hermite normal form."""

    u: IntMatrix
    h: IntMatrix


def _rotated(a: IntMatrix) -> IntMatrix:
    """Reverse both the row and the column order."""
    return IntMatrix.from_rows([row[::-1] for row in a.to_rows()[::-1]], cols=a.cols)


def snf(a: IntMatrix) -> SnfDecomposition:
    """
    Compute the Smith normal form of an integer matrix with transforms.

    The reduction is sympy's smith_normal_decomp over ZZ. The diagonal is
    nonnegative, ordered by divisibility, with zeros last.

    Args:
        a: Any integer matrix, including empty ones

    Returns:
        The decomposition U·A·V = D
    """
    if a.rows == 0 or a.cols == 0:
        return SnfDecomposition(
            u=IntMatrix.identity(a.rows), d=a, v=IntMatrix.identity(a.cols)
        )
    d, s, t = smith_normal_decomp(a.to_domain_matrix())
    u = IntMatrix.from_domain_matrix(s).to_rows()
    d_rows = IntMatrix.from_domain_matrix(d).to_rows()
    for i in range(min(a.rows, a.cols)):
        if d_rows[i][i] < 0:
            d_rows[i] = [-value for value in d_rows[i]]
            u[i] = [-value for value in u[i]]
    logger.debug("snf of %dx%d matrix finished", a.rows, a.cols)
    return SnfDecomposition(
        u=IntMatrix.from_rows(u, cols=a.rows),
        d=IntMatrix.from_rows(d_rows, cols=a.cols),
        v=IntMatrix.from_domain_matrix(t),
    )


def smith_diagonal(a: IntMatrix) -> Tuple[int, ...]:
    """Return the Smith diagonal without accumulating transforms."""
    size = min(a.rows, a.cols)
    if size == 0:
        return ()
    factors = [abs(int(value)) for value in invariant_factors(a.to_domain_matrix())]
    return tuple(factors + [0] * (size - len(factors)))


def hnf(a: IntMatrix) -> HnfDecomposition:
    """
    Compute the row-style Hermite normal form U·A = H.

    H is in row echelon form with positive pivots, entries above each pivot
    reduced into [0, pivot), and zero rows last.

    sympy's hermite_normal_form is column-style with its pivots in the last
    columns. Applied to [A | Id] with the columns reversed and transposed, it
    returns the row form of [A | Id] = [H | U] rotated by a half turn.
    """
    if a.rows == 0:
        return HnfDecomposition(u=IntMatrix.identity(0), h=a)
    augmented = a.hstack(IntMatrix.identity(a.rows))
    flipped = IntMatrix.from_rows(
        [row[::-1] for row in augmented.to_rows()], cols=augmented.cols
    ).transpose()
    w = IntMatrix.from_domain_matrix(hermite_normal_form(flipped.to_domain_matrix()))
    full = _rotated(w.transpose()).to_rows()
    return HnfDecomposition(
        u=IntMatrix.from_rows([row[a.cols :] for row in full], cols=a.rows),
        h=IntMatrix.from_rows([row[: a.cols] for row in full], cols=a.cols),
    )


def rank(a: IntMatrix) -> int:
    """Return the rank of the matrix over the rationals."""
    if a.rows == 0 or a.cols == 0:
        return 0
    return int(a.to_domain_matrix().convert_to(QQ).rank())


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """
    Return a basis of the integer kernel {x : A·x = 0} as matrix columns.

    The basis is given by the columns of V matching zero diagonal entries of
    the Smith form, so it spans the full (saturated) kernel lattice.
    """
    decomposition = snf(a)
    r = decomposition.rank
    basis = [decomposition.v.column(j) for j in range(r, a.cols)]
    return IntMatrix.from_columns(basis, rows=a.cols)


def solve_integer(a: IntMatrix, b: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """
    Solve A·x = b over the integers.

    Returns:
        One integer solution, or None when b is not in the column lattice
    """
    if len(b) != a.rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {a.rows} rows")
    decomposition = snf(a)
    ub = decomposition.u.apply(b)
    diagonal = decomposition.diagonal
    y = [0] * a.cols
    for i, value in enumerate(ub):
        divisor = diagonal[i] if i < len(diagonal) else 0
        if divisor == 0:
            if value != 0:
                return None
            continue
        if value % divisor:
            return None
        y[i] = value // divisor
    return decomposition.v.apply(y)


def lattice_basis(a: IntMatrix) -> IntMatrix:
    """Return a basis of the column lattice of A: the columns of its Hermite form."""
    if a.rows == 0 or a.cols == 0:
        return IntMatrix.zeros(a.rows, 0)
    return IntMatrix.from_domain_matrix(hermite_normal_form(a.to_domain_matrix()))


def cokernel_presentation(a: IntMatrix) -> "FgAbGroup":
    """
    Return Z^rows / column-span(A) in canonical invariant-factor form.

    Args:
        a: The relation matrix; its row count is the number of generators

    Returns:
        The canonical FgAbGroup
    """
    from .abgroup import FgAbGroup

    diagonal = smith_diagonal(a)
    nonzero = [value for value in diagonal if value != 0]
    return FgAbGroup(
        rank=a.rows - len(nonzero),
        invariant_factors=tuple(value for value in nonzero if value >= 2),
    )


def cokernel_generators(a: IntMatrix) -> List[Tuple[int, Tuple[int, ...]]]:
    """
    Return (order, generator) for each nontrivial cyclic factor of the cokernel.

    Order 0 marks an infinite cyclic factor. Generators are expressed in the
    original coordinates as columns of U⁻¹, torsion factors first in
    divisibility order, then the free generators.
    """
    decomposition = snf(a)
    u_inverse = _unimodular_inverse(decomposition.u)
    diagonal = decomposition.diagonal
    torsion: List[Tuple[int, Tuple[int, ...]]] = []
    free: List[Tuple[int, Tuple[int, ...]]] = []
    for i in range(a.rows):
        order = diagonal[i] if i < len(diagonal) else 0
        if order == 1:
            continue
        target = torsion if order else free
        target.append((order, u_inverse.column(i)))
    return torsion + free


def _unimodular_inverse(u: IntMatrix) -> IntMatrix:
    if u.rows == 0:
        return u
    inverse = u.to_domain_matrix().convert_to(QQ).inv()
    return IntMatrix.from_rows(
        [[int(value) for value in row] for row in inverse.to_list()], cols=u.cols
    )


def gcd_of(values: Iterable[int]) -> int:
    result = 0
    for value in values:
        result = gcd(result, value)
    return result


def random_matrix(rng: random.Random, max_dim: int = 6, bound: int = 9) -> IntMatrix:
    """A matrix with 1..max_dim rows and columns and entries in [−bound, bound]."""
    rows, cols = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)],
        cols=cols,
    )


def snf_problems(a: IntMatrix) -> List[str]:
    """
    Check the Smith normal form invariants on a; return the failures.

    Checked: U·A·V = D, unimodular U and V, a nonnegative diagonal D with a
    divisibility chain and trailing zeros, coker(A) ≅ coker(Aᵀ) for square A,
    and |torsion| = |det A| for square nonsingular A.
    """
    result = snf(a)
    problems: List[str] = []
    if result.u @ a @ result.v != result.d:
        problems.append("U·A·V differs from D")
    if abs(result.u.det()) != 1 or abs(result.v.det()) != 1:
        problems.append("a transform is not unimodular")
    off_diagonal = any(
        result.d[i, j] for i in range(a.rows) for j in range(a.cols) if i != j
    )
    if off_diagonal:
        problems.append("D is not diagonal")
    diagonal = result.diagonal
    if any(value < 0 for value in diagonal):
        problems.append("D has a negative entry")
    nonzero = [value for value in diagonal if value != 0]
    if list(diagonal[: len(nonzero)]) != nonzero:
        problems.append("zeros of D are not trailing")
    if any(later % earlier for earlier, later in zip(nonzero, nonzero[1:])):
        problems.append("diagonal of D is not a divisibility chain")
    if a.is_square:
        if cokernel_presentation(a) != cokernel_presentation(a.transpose()):
            problems.append("coker(A) and coker(Aᵀ) differ")
        det = a.det()
        if det and cokernel_presentation(a).torsion_order() != abs(det):
            problems.append("torsion order differs from |det A|")
    if problems:
        logger.debug("snf problems for %s: %s", a, problems)
    return problems
