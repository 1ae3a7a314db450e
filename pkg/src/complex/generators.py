"""
Named constructions: the hexagon, Boolean cubes, the 3-colored torus, the
tree class, and the star union of several classes.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import List, Sequence, Tuple

from config.settings import BUDGET_CONFIG
from src.core.classes import ConceptClass
from src.core.errors import BudgetExceededError, PreconditionError, VerificationError
from src.dims.dimensions import ds_dimension, natarajan_dimension
from .simplicial import SimplicialComplex, complex_to_pseudocube, find_alternating_square, is_good

logger = logging.getLogger(__name__)

HEXAGON_WORDS = ((1, 2), (3, 2), (3, 4), (5, 4), (5, 6), (1, 6))

# (a, s, c): the lattice spanned by (a, s) and (0, c); a * c = 27 and 3 divides a - s and c
TORUS_LATTICES = ((3, 3, 9), (3, 6, 9), (3, 0, 9))


def gen_hexagon() -> ConceptClass:
    """The 2-dimensional pseudo-cube {12, 32, 34, 54, 56, 16}."""
    return ConceptClass(2, HEXAGON_WORDS)


def gen_boolean_cube(d: int) -> ConceptClass:
    return ConceptClass(d, tuple(product((0, 1), repeat=d)))


def gen_cycle_complex(length: int = 6) -> SimplicialComplex:
    """Even cycle as a 1-dimensional complex, 2-colored by parity."""
    if length < 4 or length % 2:
        raise PreconditionError(f"cycle length must be even and at least 4, got {length}")
    faces = tuple(frozenset({k, (k + 1) % length}) for k in range(length))
    return SimplicialComplex(length, faces, tuple(k % 2 for k in range(length)))


@dataclass
class TorusConstruction:
    complex: SimplicialComplex
    coloring: Tuple[int, ...]
    concept_class: ConceptClass
    lattice: Tuple[int, int, int]


def _torus_complex(a: int, s: int, c: int) -> SimplicialComplex:
    """Triangular lattice modulo <(a, s), (0, c)>, colored by (i - j) mod 3."""
    def vertex(i: int, j: int) -> int:
        q, r = divmod(i, a)
        return r * c + (j - s * q) % c

    faces = []
    for i in range(a):
        for j in range(c):
            faces.append(frozenset({vertex(i, j), vertex(i + 1, j), vertex(i, j + 1)}))
            faces.append(frozenset({vertex(i + 1, j), vertex(i, j + 1), vertex(i + 1, j + 1)}))
    coloring = tuple((i - j) % 3 for i in range(a) for j in range(c))
    return SimplicialComplex(a * c, tuple(faces), coloring)


def gen_torus_pseudocube() -> TorusConstruction:
    """27-vertex 3-colored torus with 54 triangles and no alternating square.

    Each candidate quotient is verified exhaustively; the first that passes is returned.
    """
    for a, s, c in TORUS_LATTICES:
        C = _torus_complex(a, s, c)
        if len(C.maximal_faces) != 54 or any(len(f) != 3 for f in C.maximal_faces):
            logger.info(f"Torus lattice {(a, s, c)} collapses triangles, trying the next")
            continue
        if not is_good(C).good:
            logger.info(f"Torus lattice {(a, s, c)} is not a good complex")
            continue
        square = find_alternating_square(C)
        if square is not None:
            logger.info(f"Torus lattice {(a, s, c)} has alternating square {square}")
            continue
        B = complex_to_pseudocube(C)
        if len(B) != 54 or ds_dimension(B).value != 3 or natarajan_dimension(B).value != 1:
            continue
        return TorusConstruction(C, C.coloring, B, (a, s, c))
    raise VerificationError("no candidate torus quotient passed verification")


def gen_tree_class(k: int, m: int, max_nodes: int = None) -> ConceptClass:
    """Depth-m truncation of the tree class over k points; every child gets a fresh label."""
    if k < 1 or m < 1:
        raise PreconditionError(f"branching and depth must be positive, got k={k}, m={m}")
    max_nodes = BUDGET_CONFIG["max_tree_nodes"] if max_nodes is None else max_nodes
    total = sum(k ** level for level in range(m + 1))
    if total > max_nodes:
        raise BudgetExceededError(f"tree with {total} nodes exceeds {max_nodes}", details={"nodes": total})
    words: List[Tuple[int, ...]] = [(0,) * k]
    frontier = list(words)
    fresh = 1
    for _ in range(m):
        children = []
        for word in frontier:
            for x in range(k):
                children.append(word[:x] + (fresh,) + word[x + 1:])
                fresh += 1
        words.extend(children)
        frontier = children
    return ConceptClass(k, tuple(words))


def star_union(classes: Sequence[ConceptClass]) -> ConceptClass:
    """Disjoint union over concatenated domains; each word is the star label 0 off its own block."""
    if not classes:
        raise PreconditionError("star union needs at least one class")
    total = sum(c.domain_size for c in classes)
    words = []
    start, offset = 0, 1
    for c in classes:
        for word in c.hypotheses:
            padded = [0] * total
            padded[start:start + c.domain_size] = [v + offset for v in word]
            words.append(tuple(padded))
        start += c.domain_size
        offset += max(c.alphabet(), default=0) + 1
    return ConceptClass(total, tuple(words))
