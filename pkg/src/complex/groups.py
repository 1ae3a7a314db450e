"""
Permutation groups with distinguished subgroups, and their coset complexes.

Elements are array-form tuples; (g * h)(i) = g(h(i)). Cosets are left cosets
gH. Enumeration uses sympy's permutation groups.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation, PermutationGroup

from config.settings import BUDGET_CONFIG
from src.core.classes import ConceptClass
from src.core.errors import BudgetExceededError, ParseError, PreconditionError
from src.core.loaders import class_to_model, read_model
from src.core.schemas import CosetReportModel, GroupFile
from src.dims.dimensions import natarajan_dimension
from .simplicial import (
    GoodnessReport,
    SimplicialComplex,
    complex_report,
    complex_to_pseudocube,
    find_empty_square,
    is_good,
)

logger = logging.getLogger(__name__)

Element = Tuple[int, ...]
Cycles = Sequence[Sequence[int]]


def compose(g: Element, h: Element) -> Element:
    return tuple(g[i] for i in h)


def _permutation(cycles: Cycles, degree: int) -> Permutation:
    for cycle in cycles:
        if any(not 0 <= v < degree for v in cycle) or len(set(cycle)) != len(cycle):
            raise ParseError(f"cycle {list(cycle)} is not a valid cycle on 0..{degree - 1}")
    return Permutation([list(c) for c in cycles if c], size=degree)


@dataclass
class FiniteGroup:
    """Group generated by permutations of 0..degree-1."""
    degree: int
    generators: List[Permutation]
    max_order: int = field(default_factory=lambda: BUDGET_CONFIG["max_group_order"])

    @cached_property
    def group(self) -> PermutationGroup:
        gens = self.generators or [Permutation(list(range(self.degree)))]
        return PermutationGroup(gens)

    @property
    def order(self) -> int:
        return int(self.group.order())

    @cached_property
    def elements(self) -> Tuple[Element, ...]:
        if self.order > self.max_order:
            raise BudgetExceededError(
                f"group order {self.order} exceeds the enumeration budget {self.max_order}",
                details={"order": self.order, "limit": self.max_order},
            )
        logger.info(f"Enumerating group of order {self.order} on {self.degree} points")
        return tuple(sorted(tuple(p.array_form) for p in self.group.generate()))

    def contains(self, p: Permutation) -> bool:
        return bool(self.group.contains(p))

    @classmethod
    def from_cycles(cls, degree: int, generators: Sequence[Cycles]) -> "FiniteGroup":
        return cls(degree, [_permutation(g, degree) for g in generators])


@dataclass
class SubgroupSpec:
    generators: List[Permutation]

    @classmethod
    def from_cycles(cls, degree: int, generators: Sequence[Cycles]) -> "SubgroupSpec":
        return cls([_permutation(g, degree) for g in generators])


def subgroup_elements(F: FiniteGroup, H: SubgroupSpec) -> FrozenSet[Element]:
    for p in H.generators:
        if not F.contains(p):
            raise PreconditionError(
                f"subgroup generator {p.cyclic_form} is not in the group",
                details={"generator": p.cyclic_form},
            )
    return frozenset(FiniteGroup(F.degree, H.generators, F.max_order).elements)


def load_group(path) -> Tuple[FiniteGroup, List[SubgroupSpec]]:
    model = read_model(path, GroupFile)
    F = FiniteGroup.from_cycles(model.degree, model.generators)
    subs = [SubgroupSpec.from_cycles(model.degree, s.generators) for s in model.subgroups]
    return F, subs


@dataclass
class CosetComplex:
    complex: SimplicialComplex
    cosets: List[Tuple[int, FrozenSet[Element]]]  # (subgroup index, elements) per vertex
    subgroups: List[FrozenSet[Element]]


def coset_complex(F: FiniteGroup, subs: Sequence[SubgroupSpec]) -> CosetComplex:
    """Nerve of the cosets gH_i; maximal faces {gH_1, ..., gH_d}, colored by i."""
    if not subs:
        raise PreconditionError("at least one subgroup is required")
    elements = F.elements
    subgroups = [subgroup_elements(F, H) for H in subs]
    vertex_of: Dict[FrozenSet[Element], int] = {}
    cosets: List[Tuple[int, FrozenSet[Element]]] = []
    member: List[Dict[Element, int]] = []
    for i, H in enumerate(subgroups):
        lookup: Dict[Element, int] = {}
        for g in elements:
            if g in lookup:
                continue
            coset = frozenset(compose(g, h) for h in H)
            if coset in vertex_of:
                raise PreconditionError(
                    f"subgroups {cosets[vertex_of[coset]][0]} and {i} share a coset",
                    details={"subgroups": [cosets[vertex_of[coset]][0], i]},
                )
            vertex_of[coset] = len(cosets)
            cosets.append((i, coset))
            for e in coset:
                lookup[e] = vertex_of[coset]
        member.append(lookup)
    faces = {frozenset(member[i][g] for i in range(len(subgroups))) for g in elements}
    coloring = tuple(i for i, _ in cosets)
    C = SimplicialComplex(len(cosets), tuple(faces), coloring)
    logger.info(f"Coset complex: {len(cosets)} vertices, {len(C.maximal_faces)} maximal faces")
    return CosetComplex(C, cosets, subgroups)


@dataclass
class PolishReport:
    """Verdicts on the two group conditions and the certified coset complex."""
    condition_intersections: bool
    failing_index: Optional[int]
    condition_no_empty_square: bool
    empty_square: Optional[Tuple[int, int, int, int]]
    goodness: GoodnessReport
    coset_complex: CosetComplex
    group_order: int
    pseudo_cube: Optional[ConceptClass] = None
    natarajan: Optional[int] = None

    def to_model(self) -> CosetReportModel:
        return CosetReportModel(
            group_order=self.group_order,
            condition_intersections=self.condition_intersections,
            condition_no_empty_square=self.condition_no_empty_square,
            failing_index=self.failing_index,
            complex=complex_report(self.coset_complex.complex),
            pseudo_cube=class_to_model(self.pseudo_cube) if self.pseudo_cube is not None else None,
            natarajan=self.natarajan,
        )


def intersection_condition(F: FiniteGroup, subgroups: Sequence[FrozenSet[Element]]) -> Optional[int]:
    """First i with (intersection of H_j, j != i) minus H_i empty, or None."""
    for i, H_i in enumerate(subgroups):
        others = [H for j, H in enumerate(subgroups) if j != i]
        common = frozenset(F.elements) if not others else frozenset.intersection(*others)
        if not common - H_i:
            return i
    return None


def check_polish_conditions(F: FiniteGroup, subs: Sequence[SubgroupSpec]) -> PolishReport:
    """Check both group conditions, certify the coset complex, and emit its pseudo-cube."""
    cc = coset_complex(F, subs)
    failing = intersection_condition(F, cc.subgroups)
    square = find_empty_square(cc.complex)
    goodness = is_good(cc.complex)
    report = PolishReport(
        condition_intersections=failing is None,
        failing_index=failing,
        condition_no_empty_square=square is None,
        empty_square=square,
        goodness=goodness,
        coset_complex=cc,
        group_order=F.order,
    )
    if goodness.good:
        report.pseudo_cube = complex_to_pseudocube(cc.complex)
        report.natarajan = natarajan_dimension(report.pseudo_cube).value
    logger.info(
        f"Group conditions: intersections={report.condition_intersections} "
        f"no_empty_square={report.condition_no_empty_square} good={goodness.good}"
    )
    return report
