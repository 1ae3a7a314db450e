"""
One-inclusion hypergraphs and orientations.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Tuple

from src.core.classes import ConceptClass, Word
from src.core.errors import EmptyClassError, IndexOutOfRangeError, InvalidOrientationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    direction: int
    members: Tuple[int, ...]  # vertex ids, ascending

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def is_singleton(self) -> bool:
        return len(self.members) == 1


@dataclass(frozen=True)
class OneInclusionGraph:
    """Vertices are the words of ``concept_class`` (vertex id = sorted position).

    ``incidence[v][i]`` is the id of the direction-i edge containing v. Directions
    listed in ``frozen`` carry only singleton edges.
    """
    concept_class: ConceptClass
    edges: Tuple[Edge, ...]
    incidence: Tuple[Tuple[int, ...], ...]
    frozen: FrozenSet[int] = frozenset()

    @property
    def num_vertices(self) -> int:
        return len(self.concept_class)

    @property
    def num_directions(self) -> int:
        return self.concept_class.domain_size

    def word(self, v: int) -> Word:
        return self.concept_class.hypotheses[v]

    def edge_at(self, v: int, direction: int) -> Edge:
        return self.edges[self.incidence[v][direction]]

    def nonsingleton_degree(self, v: int) -> int:
        return sum(1 for e in self.incidence[v] if not self.edges[e].is_singleton)

    def nonsingleton_edges(self) -> List[int]:
        return [k for k, e in enumerate(self.edges) if not e.is_singleton]


def build_oig(concept_class: ConceptClass, frozen: Iterable[int] = ()) -> OneInclusionGraph:
    """Group words by direction, then by the pattern off that direction."""
    if concept_class.is_empty:
        raise EmptyClassError("cannot build the one-inclusion graph of an empty class")
    n = concept_class.domain_size
    frozen = frozenset(frozen)
    for i in frozen:
        if not 0 <= i < n:
            raise IndexOutOfRangeError(f"frozen direction {i} outside 0..{n - 1}")
    words = concept_class.hypotheses
    edges: List[Edge] = []
    incidence: List[List[int]] = [[0] * n for _ in words]
    for i in range(n):
        if i in frozen:
            groups = {(v,): [v] for v in range(len(words))}
        else:
            groups: Dict[Word, List[int]] = defaultdict(list)
            for v, word in enumerate(words):
                groups[word[:i] + word[i + 1:]].append(v)
        for key in sorted(groups):
            edge_id = len(edges)
            members = tuple(groups[key])
            edges.append(Edge(i, members))
            for v in members:
                incidence[v][i] = edge_id
    return OneInclusionGraph(
        concept_class=concept_class,
        edges=tuple(edges),
        incidence=tuple(tuple(row) for row in incidence),
        frozen=frozen,
    )


@dataclass(frozen=True)
class Orientation:
    """``choice[e]`` is the vertex edge e points to."""
    choice: Tuple[int, ...]

    def validate(self, g: OneInclusionGraph) -> None:
        if len(self.choice) != len(g.edges):
            raise InvalidOrientationError(
                f"orientation covers {len(self.choice)} edges, graph has {len(g.edges)}"
            )
        for k, (edge, v) in enumerate(zip(g.edges, self.choice)):
            if v not in edge.members:
                raise InvalidOrientationError(
                    f"edge {k} points to vertex {v} outside its members {list(edge.members)}",
                    details={"edge": k, "chosen": v},
                )


def out_degrees(g: OneInclusionGraph, sigma: Orientation) -> List[int]:
    """Per-vertex count of incident edges oriented elsewhere."""
    sigma.validate(g)
    return [
        sum(1 for e in g.incidence[v] if sigma.choice[e] != v)
        for v in range(g.num_vertices)
    ]


def max_out_degree(g: OneInclusionGraph, sigma: Orientation) -> int:
    return max(out_degrees(g, sigma), default=0)


def avg_degree(g: OneInclusionGraph) -> Fraction:
    """Sum of non-singleton edge sizes over the vertex count."""
    total = sum(e.size for e in g.edges if not e.is_singleton)
    return Fraction(total, g.num_vertices)


def shifting_avg_degree(g: OneInclusionGraph) -> Fraction:
    """Sum of (|e| - 1) over all edges, over the vertex count."""
    total = sum(e.size - 1 for e in g.edges)
    return Fraction(total, g.num_vertices)
