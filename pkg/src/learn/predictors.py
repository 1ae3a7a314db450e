"""
The one-inclusion learner, its menu-restricted variant, and the list learner.

Every prediction works on the canonical projection of (x_1, ..., x_n, x):
the distinct points in ascending order, where points occurring more than once
become frozen directions (only singleton edges). The oriented graph then
depends on the multiset of points alone, so all leave-one-out indices of a
sample share one orientation.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Optional, Tuple

from src.core.classes import ConceptClass, Menu, Sample, check_indices, consistent_words, is_menu_realizable, project
from src.core.errors import EmptyClassError, NotRealizableError, PreconditionError
from src.dims.dimensions import ds_dimension
from src.oig.orientation import oriented_graph

logger = logging.getLogger(__name__)

ONE_INCLUSION = "one-inclusion"
MENU_ONE_INCLUSION = "menu-one-inclusion"
LIST = "list"


def canonical_points(S: Sample, x: int) -> Tuple[Tuple[int, ...], FrozenSet[int]]:
    """Distinct points of (S, x) ascending, and the positions of repeated ones."""
    counts = Counter(S.points() + (x,))
    points = tuple(sorted(counts))
    frozen = frozenset(pos for pos, p in enumerate(points) if counts[p] >= 2)
    return points, frozen


def _predict_on_projection(
    projected: ConceptClass, points: Tuple[int, ...], frozen: FrozenSet[int], S: Sample, x: int
) -> int:
    known = {e.x: e.y for e in S}
    pos_x = points.index(x)
    if x in known:
        # the test edge is a singleton
        return known[x]
    anchor = next(
        (
            v
            for v, word in enumerate(projected.hypotheses)
            if all(word[pos] == known[p] for pos, p in enumerate(points) if p != x)
        ),
        None,
    )
    if anchor is None:
        raise NotRealizableError("no word is consistent with the sample on the projected points")
    g, sigma, _ = oriented_graph(projected, frozen)
    chosen = sigma.choice[g.incidence[anchor][pos_x]]
    return g.word(chosen)[pos_x]


def _check_consistent_labels(S: Sample) -> None:
    seen: Dict[int, int] = {}
    for e in S:
        if seen.setdefault(e.x, e.y) != e.y:
            raise NotRealizableError(
                f"sample labels point {e.x} both {seen[e.x]} and {e.y}", details={"point": e.x}
            )


def oig_predict(concept_class: ConceptClass, S: Sample, x: int) -> int:
    """Label chosen by the minimum max out-degree orientation of the projection onto (S, x)."""
    check_indices(concept_class.domain_size, S.points() + (x,))
    _check_consistent_labels(S)
    if not consistent_words(concept_class, S):
        raise NotRealizableError("sample is not realizable by the class")
    points, frozen = canonical_points(S, x)
    return _predict_on_projection(project(concept_class, points), points, frozen, S, x)


def menu_oig_predict(concept_class: ConceptClass, mu: Menu, S: Sample, x: int) -> int:
    """As oig_predict, on the projection filtered to words allowed by the menu at every point."""
    check_indices(concept_class.domain_size, S.points() + (x,))
    _check_consistent_labels(S)
    if not is_menu_realizable(S, mu):
        raise NotRealizableError("sample is not realizable by the menu")
    points, frozen = canonical_points(S, x)
    projected = project(concept_class, points)
    allowed = [
        word for word in projected.hypotheses
        if all(word[pos] in mu.options(p) for pos, p in enumerate(points))
    ]
    if not allowed:
        raise EmptyClassError(
            "no word of the projection is allowed by the menu",
            details={"points": list(points)},
        )
    filtered = ConceptClass(len(points), tuple(allowed))
    try:
        return _predict_on_projection(filtered, points, frozen, S, x)
    except NotRealizableError as e:
        raise PreconditionError(f"menu-filtered class has no edge consistent with the sample: {e.message}")


def list_predict(concept_class: ConceptClass, t: int, S: Sample, x: int, d: Optional[int] = None) -> FrozenSet[int]:
    """Labels predicted at x by the one-inclusion learner on every size-d subsample of S."""
    d = ds_dimension(concept_class).value if d is None else d
    if len(S) != d + t:
        raise PreconditionError(
            f"list learner needs exactly d + t = {d + t} examples, got {len(S)}",
            details={"d": d, "t": t, "size": len(S)},
        )
    return frozenset(
        oig_predict(concept_class, S.subsample(keep), x)
        for keep in combinations(range(len(S)), d)
    )


def list_learn(concept_class: ConceptClass, t: int, S: Sample, d: Optional[int] = None) -> Menu:
    """Menu over the whole domain from the C(d + t, t) subsample predictions."""
    d = ds_dimension(concept_class).value if d is None else d
    if t < 0:
        raise PreconditionError(f"t must be non-negative, got {t}")
    check_indices(concept_class.domain_size, S.points())
    if not consistent_words(concept_class, S):
        raise NotRealizableError("sample is not realizable by the class")
    entries = {x: list_predict(concept_class, t, S, x, d) for x in range(concept_class.domain_size)}
    return Menu.from_sets(entries, p=comb(d + t, t))


@dataclass(frozen=True)
class Predictor:
    """A deterministic predictor bound to its class (and menu, or list parameters)."""
    kind: str
    concept_class: ConceptClass
    menu: Optional[Menu] = None
    t: Optional[int] = None
    d: Optional[int] = None

    def __call__(self, S: Sample, x: int) -> int:
        if self.kind == ONE_INCLUSION:
            return oig_predict(self.concept_class, S, x)
        if self.kind == MENU_ONE_INCLUSION:
            return menu_oig_predict(self.concept_class, self.menu, S, x)
        if self.kind == LIST:
            raise PreconditionError("the list learner predicts label sets, not a single label")
        raise PreconditionError(f"unknown predictor kind {self.kind!r}")

    def options(self, S: Sample, x: int) -> FrozenSet[int]:
        """Labels offered at x: one label for point predictors, the learned list otherwise."""
        if self.kind == LIST:
            return list_predict(self.concept_class, self.t, S, x, self.d)
        return frozenset({self(S, x)})

    def realizes(self, S: Sample) -> bool:
        if not consistent_words(self.concept_class, S):
            return False
        return self.menu is None or is_menu_realizable(S, self.menu)

    @classmethod
    def one_inclusion(cls, concept_class: ConceptClass) -> "Predictor":
        return cls(ONE_INCLUSION, concept_class)

    @classmethod
    def menu_one_inclusion(cls, concept_class: ConceptClass, mu: Menu) -> "Predictor":
        return cls(MENU_ONE_INCLUSION, concept_class, mu)

    @classmethod
    def list_learner(cls, concept_class: ConceptClass, t: int, d: Optional[int] = None) -> "Predictor":
        if t < 0:
            raise PreconditionError(f"t must be non-negative, got {t}")
        d = ds_dimension(concept_class).value if d is None else d
        return cls(LIST, concept_class, t=t, d=d)
