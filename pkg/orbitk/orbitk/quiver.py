"""
Quivers

Finite quivers without oriented cycles, their Cartan, Coxeter and Euler
matrices, and the Tits form used to recognise Dynkin quivers. Matrices are
indexed by the vertex declaration order.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
from sympy import QQ, Matrix, Rational
from sympy.polys.matrices import DomainMatrix

from .errors import (
    CyclicQuiver,
    InputValidationError,
    InvalidQuiver,
    InvariantViolation,
)
from .exactla import IntMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with named vertices; parallel arrows are allowed."""

    vertices: Tuple[str, ...]
    arrows: Tuple[Tuple[str, str], ...] = ()
    name: Optional[str] = None

    def __post_init__(self) -> None:
        repeated = [v for v, count in Counter(self.vertices).items() if count > 1]
        if repeated:
            raise InvalidQuiver(f"vertex label {repeated[0]!r} is used twice")
        known = set(self.vertices)
        for source, target in self.arrows:
            for label in (source, target):
                if label not in known:
                    raise InvalidQuiver(
                        f"arrow {source}->{target} uses unknown vertex {label!r}"
                    )
        graph = self.to_graph()
        if not nx.is_directed_acyclic_graph(graph):
            cycle = [edge[0] for edge in nx.find_cycle(graph)]
            raise CyclicQuiver(
                "quiver has an oriented cycle through " + " -> ".join(cycle)
            )

    @property
    def label(self) -> str:
        return self.name or f"quiver({len(self.vertices)} vertices)"

    def to_graph(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.arrows)
        return graph

    def index(self, label: str) -> int:
        return self.vertices.index(label)

    @classmethod
    def from_json(cls, data: Mapping[str, Any], name: Optional[str] = None) -> "Quiver":
        """
        Parse {"vertices": [...], "arrows": [[source, target], ...]}.

        Raises:
            InputValidationError: If the shape of the data is wrong
        """
        if not isinstance(data, Mapping) or "vertices" not in data:
            raise InputValidationError("quiver JSON needs a 'vertices' list")
        vertices = data["vertices"]
        arrows = data.get("arrows", [])
        if not isinstance(vertices, list) or not isinstance(arrows, list):
            raise InputValidationError("'vertices' and 'arrows' must be lists")
        parsed: List[Tuple[str, str]] = []
        for arrow in arrows:
            if not isinstance(arrow, list) or len(arrow) != 2:
                raise InputValidationError(
                    f"arrow {arrow!r} is not a [source, target] pair"
                )
            parsed.append((str(arrow[0]), str(arrow[1])))
        labels = tuple(str(v) for v in vertices)
        return cls(labels, tuple(parsed), name or data.get("name"))

    def to_json(self) -> Dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "arrows": [[s, t] for s, t in self.arrows],
        }


def _topological_order(q: Quiver) -> List[str]:
    graph = q.to_graph()
    try:
        return list(nx.lexicographical_topological_sort(graph, key=q.index))
    except nx.NetworkXUnfeasible:
        raise CyclicQuiver(f"{q.label} has an oriented cycle") from None


def adjacency_matrix(q: Quiver) -> IntMatrix:
    """Entry (i, j) counts the arrows i -> j."""
    size = len(q.vertices)
    counts = [[0] * size for _ in range(size)]
    for source, target in q.arrows:
        counts[q.index(source)][q.index(target)] += 1
    return IntMatrix.from_rows(counts, cols=size)


def cartan_matrix(q: Quiver) -> IntMatrix:
    """
    Count directed paths, including the trivial ones.

    Entry (i, j) is the number of paths i -> j, computed by dynamic programming
    in reverse topological order.

    Raises:
        CyclicQuiver: If the quiver has an oriented cycle
    """
    order = _topological_order(q)
    size = len(q.vertices)
    paths: Dict[str, List[int]] = {}
    successors: Dict[str, List[str]] = {v: [] for v in q.vertices}
    for source, target in q.arrows:
        successors[source].append(target)
    for vertex in reversed(order):
        row = [0] * size
        row[q.index(vertex)] = 1
        for target in successors[vertex]:
            row = [a + b for a, b in zip(row, paths[target])]
        paths[vertex] = row
    return IntMatrix.from_rows([paths[v] for v in q.vertices], cols=size)


def cartan_inverse(q: Quiver) -> IntMatrix:
    """Return C⁻¹ = Id − adjacency, checked against the Cartan matrix."""
    cartan = cartan_matrix(q)
    inverse = IntMatrix.identity(len(q.vertices)) - adjacency_matrix(q)
    if cartan @ inverse != IntMatrix.identity(len(q.vertices)):
        raise InvariantViolation(f"Cartan inverse check failed for {q.label}")
    return inverse


def coxeter_matrix(q: Quiver) -> IntMatrix:
    """
    Return Φ = −C⁻ᵀ·C.

    Raises:
        CyclicQuiver: If the quiver has an oriented cycle
    """
    cartan = cartan_matrix(q)
    return -(cartan_inverse(q).transpose() @ cartan)


def euler_form(q: Quiver) -> IntMatrix:
    """Return C⁻ᵀ."""
    return cartan_inverse(q).transpose()


def tits_form(q: Quiver) -> Matrix:
    """Symmetric matrix of Σ x_i² − Σ_arrows x_s·x_t."""
    size = len(q.vertices)
    form = Matrix.eye(size)
    for source, target in q.arrows:
        i, j = q.index(source), q.index(target)
        form[i, j] -= Rational(1, 2)
        form[j, i] -= Rational(1, 2)
    return form


def is_dynkin(q: Quiver) -> bool:
    """
    A quiver is of Dynkin type A/D/E iff its Tits form is positive definite.

    Definiteness is read off the pivots of an LU factorization over QQ: all
    leading principal minors are positive iff no row exchange is needed and
    every pivot is positive.
    """
    if not q.vertices:
        return True
    form = DomainMatrix.from_Matrix(tits_form(q)).convert_to(QQ)
    _, upper, swaps = form.lu()
    pivots = upper.to_list()
    return not swaps and all(pivots[i][i] > 0 for i in range(len(q.vertices)))


def vertex_labels(count: int) -> Tuple[str, ...]:
    return tuple(str(i) for i in range(1, count + 1))


def path_quiver(
    count: int, extra: Sequence[Tuple[str, str]] = (), name: Optional[str] = None
) -> Quiver:
    """Linear quiver 1 -> 2 -> ... -> count plus extra arrows."""
    labels = vertex_labels(count)
    arrows = tuple((labels[i], labels[i + 1]) for i in range(count - 1))
    return Quiver(labels, arrows + tuple(extra), name)
