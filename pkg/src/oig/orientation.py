"""
Orientation solvers: greedy peeling, exact minimum max out-degree via
maximum flow, and an exhaustive oracle for small graphs.
"""
import logging
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from config.settings import ORIENTATION_CONFIG
from src.core.classes import ConceptClass
from src.core.errors import PreconditionError
from src.core.schemas import OrientationReportModel, OrientedEdgeModel
from .graph import OneInclusionGraph, Orientation, avg_degree, build_oig, max_out_degree, shifting_avg_degree

logger = logging.getLogger(__name__)


def greedy_orientation(g: OneInclusionGraph, d: int) -> Optional[Orientation]:
    """Peel a vertex with at most d live non-singleton edges, smallest id first.

    Each edge points to its member removed last. Returns None when some stage
    has no removable vertex.
    """
    alive_count = [e.size for e in g.edges]
    degree = [g.nonsingleton_degree(v) for v in range(g.num_vertices)]
    alive = [True] * g.num_vertices
    choice = [-1] * len(g.edges)
    for _ in range(g.num_vertices):
        v = next((u for u in range(g.num_vertices) if alive[u] and degree[u] <= d), None)
        if v is None:
            stuck = [u for u in range(g.num_vertices) if alive[u]]
            logger.info(f"Greedy orientation stuck at bound {d} with {len(stuck)} vertices left")
            return None
        alive[v] = False
        for e in g.incidence[v]:
            if alive_count[e] == 1:
                choice[e] = v
            elif alive_count[e] == 2:
                # the last remaining member loses this edge from its degree
                other = next(u for u in g.edges[e].members if alive[u])
                degree[other] -= 1
            alive_count[e] -= 1
    return Orientation(tuple(choice))


def _lower_bounds(g: OneInclusionGraph, k: int) -> List[int]:
    return [max(0, g.nonsingleton_degree(v) - k) for v in range(g.num_vertices)]


def _assign_by_flow(
    g: OneInclusionGraph, need: List[int], free_edges: List[int]
) -> Optional[Dict[int, int]]:
    """Assign free edges to members so vertex v receives at least need[v] of them.

    Network: source -> edge (1) -> member vertex (1) -> sink (need[v]).
    """
    total = sum(need)
    if total == 0:
        return {}
    num_edges = len(free_edges)
    source, sink = 0, 1 + num_edges + g.num_vertices
    rows, cols, caps = [], [], []
    for slot, e in enumerate(free_edges):
        rows.append(source)
        cols.append(1 + slot)
        caps.append(1)
        for v in g.edges[e].members:
            if need[v] > 0:
                rows.append(1 + slot)
                cols.append(1 + num_edges + v)
                caps.append(1)
    for v, amount in enumerate(need):
        if amount > 0:
            rows.append(1 + num_edges + v)
            cols.append(sink)
            caps.append(amount)
    size = sink + 1
    network = csr_matrix(
        (np.array(caps, dtype=np.int32), (np.array(rows), np.array(cols))), shape=(size, size)
    )
    result = maximum_flow(network, source, sink)
    if result.flow_value < total:
        return None
    flow = result.flow.tocoo()
    assignment = {}
    for r, c, amount in zip(flow.row, flow.col, flow.data):
        if amount > 0 and 1 <= r <= num_edges and c > num_edges and c != sink:
            assignment[free_edges[r - 1]] = int(c - 1 - num_edges)
    return assignment


def _feasible(
    g: OneInclusionGraph, k: int, fixed: Dict[int, int]
) -> Optional[Orientation]:
    """An orientation with max out-degree at most k respecting ``fixed``, or None."""
    need = _lower_bounds(g, k)
    for e, v in fixed.items():
        if not g.edges[e].is_singleton and need[v] > 0:
            need[v] -= 1
    free = [e for e in g.nonsingleton_edges() if e not in fixed]
    assignment = _assign_by_flow(g, need, free)
    if assignment is None:
        return None
    choice = []
    for e, edge in enumerate(g.edges):
        if e in fixed:
            choice.append(fixed[e])
        else:
            choice.append(assignment.get(e, edge.members[0]))
    return Orientation(tuple(choice))


def optimal_orientation(g: OneInclusionGraph) -> Tuple[Orientation, int]:
    """Exact minimum max out-degree with the lexicographically smallest choice vector."""
    low, high = 0, max((g.nonsingleton_degree(v) for v in range(g.num_vertices)), default=0)
    witness = _feasible(g, high, {})
    while low < high:
        mid = (low + high) // 2
        candidate = _feasible(g, mid, {})
        if candidate is None:
            low = mid + 1
        else:
            high, witness = mid, candidate
    k = high
    # fix edges in id order, re-solving only for candidates below the witness choice
    fixed: Dict[int, int] = {}
    for e, edge in enumerate(g.edges):
        if edge.is_singleton:
            fixed[e] = edge.members[0]
            continue
        for u in edge.members:
            if u == witness.choice[e]:
                fixed[e] = u
                break
            trial = _feasible(g, k, {**fixed, e: u})
            if trial is not None:
                fixed[e] = u
                witness = trial
                break
    sigma = Orientation(tuple(fixed[e] for e in range(len(g.edges))))
    logger.debug(f"Optimal orientation of {g.num_vertices} vertices has max out-degree {k}")
    return sigma, k


def brute_force_orientation(g: OneInclusionGraph, max_edges: Optional[int] = None) -> Tuple[Orientation, int]:
    """Exhaustive minimum over all orientations (small graphs only)."""
    max_edges = ORIENTATION_CONFIG["brute_force_max_edges"] if max_edges is None else max_edges
    nontrivial = g.nonsingleton_edges()
    if len(nontrivial) > max_edges:
        raise PreconditionError(
            f"brute force limited to {max_edges} non-singleton edges, graph has {len(nontrivial)}"
        )
    base = [edge.members[0] for edge in g.edges]
    best: Optional[Tuple[Orientation, int]] = None
    for picks in product(*(g.edges[e].members for e in nontrivial)):
        choice = list(base)
        for e, v in zip(nontrivial, picks):
            choice[e] = v
        sigma = Orientation(tuple(choice))
        value = max_out_degree(g, sigma)
        if best is None or value < best[1]:
            best = (sigma, value)
    return best


@lru_cache(maxsize=4096)
def oriented_graph(
    concept_class: ConceptClass, frozen: FrozenSet[int] = frozenset()
) -> Tuple[OneInclusionGraph, Orientation, int]:
    """Cached optimal orientation keyed by (class, frozen directions)."""
    g = build_oig(concept_class, frozen)
    sigma, k = optimal_orientation(g)
    return g, sigma, k


def orientation_to_model(
    g: OneInclusionGraph, sigma: Orientation, optimal: Optional[int] = None
) -> OrientationReportModel:
    return OrientationReportModel(
        edges=[
            OrientedEdgeModel(dir=edge.direction, members=list(edge.members), chosen=v)
            for edge, v in zip(g.edges, sigma.choice)
        ],
        max_outdeg=max_out_degree(g, sigma),
        optimal_max_outdeg=optimal,
        avg_degree=str(avg_degree(g)),
        shifting_avg_degree=str(shifting_avg_degree(g)),
    )
