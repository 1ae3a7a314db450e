"""
Colorful simplicial complexes, good-complex checks, the dictionary between
good complexes and pseudo-cubes, and square detection in the 1-skeleton.
"""
import logging
from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import categorical_node_match

from src.core.classes import ConceptClass
from src.core.errors import ParseError, PreconditionError, VerificationError
from src.core.loaders import read_model
from src.core.schemas import BipartiteFile, ComplexFile, ComplexReportModel
from src.dims.dimensions import is_pseudo_cube

logger = logging.getLogger(__name__)

Face = FrozenSet[int]
Square = Tuple[int, int, int, int]


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex given by its maximal faces, with an optional vertex coloring."""
    num_vertices: int
    maximal_faces: Tuple[Face, ...]
    coloring: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        faces = set()
        for k, face in enumerate(self.maximal_faces):
            face = frozenset(int(v) for v in face)
            if not face:
                raise ParseError(f"maximal_faces[{k}] is empty", details={"record": f"maximal_faces[{k}]"})
            if any(not 0 <= v < self.num_vertices for v in face):
                raise ParseError(
                    f"maximal_faces[{k}] uses a vertex outside 0..{self.num_vertices - 1}",
                    details={"record": f"maximal_faces[{k}]"},
                )
            faces.add(face)
        # keep only faces not contained in another
        maximal = [f for f in faces if not any(f < g for g in faces)]
        object.__setattr__(self, "maximal_faces", tuple(sorted(maximal, key=lambda f: sorted(f))))
        if self.coloring is not None:
            coloring = tuple(int(c) for c in self.coloring)
            if len(coloring) != self.num_vertices:
                raise ParseError(f"coloring has {len(coloring)} entries for {self.num_vertices} vertices")
            object.__setattr__(self, "coloring", coloring)

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.maximal_faces), default=0) - 1

    def with_coloring(self, coloring: Sequence[int]) -> "SimplicialComplex":
        return SimplicialComplex(self.num_vertices, self.maximal_faces, tuple(coloring))

    def contains_face(self, face: Iterable[int]) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.maximal_faces)


def one_skeleton(C: SimplicialComplex) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(C.num_vertices))
    for face in C.maximal_faces:
        graph.add_edges_from(combinations(sorted(face), 2))
    return graph


def complex_from_model(model: ComplexFile) -> SimplicialComplex:
    return SimplicialComplex(
        model.vertices,
        tuple(frozenset(face) for face in model.maximal_faces),
        tuple(model.coloring) if model.coloring is not None else None,
    )


def complex_to_model(C: SimplicialComplex) -> ComplexFile:
    return ComplexFile(
        vertices=C.num_vertices,
        maximal_faces=[sorted(face) for face in C.maximal_faces],
        coloring=list(C.coloring) if C.coloring is not None else None,
    )


def load_complex(path) -> SimplicialComplex:
    return complex_from_model(read_model(path, ComplexFile))


# ---------------------------------------------------------------------------
# Colorings and goodness
# ---------------------------------------------------------------------------

def coloring_conflict(C: SimplicialComplex, coloring: Sequence[int]) -> Optional[Face]:
    """First maximal face whose colors are not exactly 0..dim, or None."""
    colors = set(range(C.dimension + 1))
    for face in C.maximal_faces:
        if sorted(coloring[v] for v in face) != sorted(colors):
            return face
    return None


def find_proper_coloring(C: SimplicialComplex) -> Optional[Tuple[int, ...]]:
    """Backtracking coloring of the 1-skeleton with dim + 1 colors; unused vertices get 0."""
    graph = one_skeleton(C)
    k = C.dimension + 1
    order: List[int] = []
    seen: Set[int] = set()
    for start in range(C.num_vertices):
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            order.append(v)
            for u in sorted(graph.adj[v]):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    colors: Dict[int, int] = {}

    def assign(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        taken = {colors[u] for u in graph.adj[v] if u in colors}
        for c in range(k):
            if c not in taken:
                colors[v] = c
                if assign(pos + 1):
                    return True
                del colors[v]
        return False

    if k <= 0 or not assign(0):
        return None
    coloring = tuple(colors.get(v, 0) for v in range(C.num_vertices))
    return coloring if coloring_conflict(C, coloring) is None else None


@dataclass
class GoodnessReport:
    good: bool
    failed_property: Optional[str] = None
    witness: Optional[List[int]] = None
    coloring: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.good


def replacement_failure(C: SimplicialComplex) -> Optional[Tuple[Face, int]]:
    """A (face, vertex) whose ridge lies in no other maximal face, or None."""
    ridges: Counter = Counter()
    for face in C.maximal_faces:
        for v in face:
            ridges[face - {v}] += 1
    for face in C.maximal_faces:
        for v in sorted(face):
            if ridges[face - {v}] < 2:
                return face, v
    return None


def is_good(C: SimplicialComplex) -> GoodnessReport:
    """Check purity, a proper (dim + 1)-coloring and replacement, naming the first failure."""
    if not C.maximal_faces:
        return GoodnessReport(False, "non_empty")
    size = len(C.maximal_faces[0])
    odd = next((f for f in C.maximal_faces if len(f) != size), None)
    if odd is not None:
        return GoodnessReport(False, "pure", sorted(odd))
    if C.coloring is not None:
        conflict = coloring_conflict(C, C.coloring)
        if conflict is not None:
            return GoodnessReport(False, "coloring", sorted(conflict))
        coloring = C.coloring
    else:
        coloring = find_proper_coloring(C)
        if coloring is None:
            return GoodnessReport(False, "coloring")
    failure = replacement_failure(C)
    if failure is not None:
        face, v = failure
        return GoodnessReport(False, "replacement", sorted(face) + [v], coloring)
    return GoodnessReport(True, coloring=coloring)


# ---------------------------------------------------------------------------
# Pseudo-cube dictionary
# ---------------------------------------------------------------------------

def complex_to_pseudocube(C: SimplicialComplex, coloring: Optional[Sequence[int]] = None) -> ConceptClass:
    """Each maximal face becomes the word listing its color-0, ..., color-d vertices."""
    coloring = tuple(coloring) if coloring is not None else C.coloring
    report = is_good(C if coloring is None else C.with_coloring(coloring))
    if not report.good:
        raise PreconditionError(
            f"complex is not good: {report.failed_property} fails",
            details={"property": report.failed_property, "witness": report.witness},
        )
    coloring = report.coloring
    words = []
    for face in C.maximal_faces:
        by_color = {coloring[v]: v for v in face}
        words.append(tuple(by_color[c] for c in range(C.dimension + 1)))
    result = ConceptClass(C.dimension + 1, tuple(words))
    if not is_pseudo_cube(result):
        raise VerificationError("good complex produced a class that is not a pseudo-cube")
    return result


def pseudocube_to_complex(B: ConceptClass) -> SimplicialComplex:
    """Vertices are the used (coordinate, label) pairs colored by coordinate; words are faces."""
    if not is_pseudo_cube(B):
        raise PreconditionError("class is not a pseudo-cube")
    if B.domain_size == 0:
        # its single empty word would be an empty maximal face
        raise PreconditionError("a 0-dimensional pseudo-cube has no complex", details={"domain_size": 0})
    pairs = sorted({(i, v) for word in B.hypotheses for i, v in enumerate(word)})
    ids = {pair: k for k, pair in enumerate(pairs)}
    faces = tuple(frozenset(ids[(i, v)] for i, v in enumerate(word)) for word in B.hypotheses)
    C = SimplicialComplex(len(pairs), faces, tuple(i for i, _ in pairs))
    if not is_good(C).good:
        raise VerificationError("pseudo-cube produced a complex that is not good")
    return C


def complexes_isomorphic(C1: SimplicialComplex, C2: SimplicialComplex) -> bool:
    """Color-respecting isomorphism via the vertex-face incidence graph."""
    def incidence(C: SimplicialComplex) -> nx.Graph:
        graph = nx.Graph()
        for v in range(C.num_vertices):
            graph.add_node(("v", v), kind="vertex", color=C.coloring[v] if C.coloring else 0)
        for k, face in enumerate(C.maximal_faces):
            graph.add_node(("f", k), kind="face", color=-1)
            graph.add_edges_from((("f", k), ("v", v)) for v in face)
        return graph

    if C1.num_vertices != C2.num_vertices or len(C1.maximal_faces) != len(C2.maximal_faces):
        return False
    match = categorical_node_match(["kind", "color"], [None, None])
    return nx.is_isomorphic(incidence(C1), incidence(C2), node_match=match)


# ---------------------------------------------------------------------------
# Squares
# ---------------------------------------------------------------------------

def _squares(graph: nx.Graph, accept) -> Iterable[Square]:
    """4-cycles (a, b, c, d) with a < c, b < d accepted by ``accept``."""
    nodes = sorted(graph.nodes)
    for a_pos, a in enumerate(nodes):
        for c in nodes[a_pos + 1:]:
            common = sorted(set(graph.adj[a]) & set(graph.adj[c]))
            for b_pos, b in enumerate(common):
                for d in common[b_pos + 1:]:
                    if accept(a, b, c, d):
                        yield (a, b, c, d)


def _distinct(squares: Iterable[Square]) -> List[Square]:
    seen, out = set(), []
    for a, b, c, d in squares:
        key = frozenset({frozenset({a, c}), frozenset({b, d})})
        if key not in seen:
            seen.add(key)
            out.append((a, b, c, d))
    return out


def alternating_squares(C: SimplicialComplex, coloring: Optional[Sequence[int]] = None) -> List[Square]:
    coloring = coloring if coloring is not None else C.coloring
    if coloring is None:
        raise PreconditionError("alternating squares need a coloring")
    graph = one_skeleton(C)
    return _distinct(_squares(
        graph, lambda a, b, c, d: coloring[a] == coloring[c] and coloring[b] == coloring[d]
    ))


def empty_squares(C: SimplicialComplex) -> List[Square]:
    graph = one_skeleton(C)
    return _distinct(_squares(
        graph, lambda a, b, c, d: not graph.has_edge(a, c) and not graph.has_edge(b, d)
    ))


def find_alternating_square(C: SimplicialComplex, coloring: Optional[Sequence[int]] = None) -> Optional[Square]:
    """First 4-cycle whose opposite vertices share colors."""
    coloring = coloring if coloring is not None else C.coloring
    if coloring is None:
        raise PreconditionError("alternating squares need a coloring")
    graph = one_skeleton(C)
    return next(
        _squares(graph, lambda a, b, c, d: coloring[a] == coloring[c] and coloring[b] == coloring[d]),
        None,
    )


def find_empty_square(C: SimplicialComplex) -> Optional[Square]:
    """First 4-cycle with neither diagonal an edge."""
    graph = one_skeleton(C)
    return next(_squares(graph, lambda a, b, c, d: not graph.has_edge(a, c) and not graph.has_edge(b, d)), None)


def complex_report(C: SimplicialComplex) -> ComplexReportModel:
    report = is_good(C)
    coloring = report.coloring if report.coloring is not None else C.coloring
    return ComplexReportModel(
        good=report.good,
        failed_property=report.failed_property,
        witness=report.witness,
        dimension=C.dimension,
        vertices=C.num_vertices,
        maximal_faces=len(C.maximal_faces),
        alternating_squares=len(alternating_squares(C, coloring)) if coloring is not None else None,
        empty_squares=len(empty_squares(C)),
    )


# ---------------------------------------------------------------------------
# Bipartite graphs
# ---------------------------------------------------------------------------

@dataclass
class BipartiteResult:
    """The class B(G), or the leaf that keeps it from being a pseudo-cube."""
    concept_class: ConceptClass
    leaf: Optional[Tuple[str, int]] = None

    @property
    def ok(self) -> bool:
        return self.leaf is None


def has_four_cycle(edges: Iterable[Tuple[int, int]]) -> bool:
    """True iff the bipartite graph has two left vertices sharing two right neighbours."""
    right_of: Dict[int, Set[int]] = defaultdict(set)
    for u, v in edges:
        right_of[u].add(v)
    lefts = sorted(right_of)
    return any(
        len(right_of[a] & right_of[b]) >= 2 for a_pos, a in enumerate(lefts) for b in lefts[a_pos + 1:]
    )


def bipartite_to_pseudocube(edges: Iterable[Tuple[int, int]]) -> BipartiteResult:
    """B(G) = {(u, v) : uv an edge}; a pseudo-cube iff no touched vertex is a leaf."""
    edges = sorted({(int(u), int(v)) for u, v in edges})
    concept_class = ConceptClass(2, tuple(edges))
    left, right = Counter(u for u, _ in edges), Counter(v for _, v in edges)
    leaf = next((("left", u) for u in sorted(left) if left[u] <= 1), None)
    if leaf is None:
        leaf = next((("right", v) for v in sorted(right) if right[v] <= 1), None)
    if leaf is not None or not edges:
        logger.info(f"Bipartite graph is not leafless: {leaf}")
        return BipartiteResult(concept_class, leaf or ("left", -1))
    return BipartiteResult(concept_class)


def load_bipartite(path) -> List[Tuple[int, int]]:
    return [tuple(e) for e in read_model(path, BipartiteFile).left_right_edges]
