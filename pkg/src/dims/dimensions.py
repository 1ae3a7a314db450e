"""
Exact VC, Natarajan, DS and exponential dimensions, and the pseudo-cube core.

All searches run the sequence length n upward and stop at the first length
without a witness; each dimension is monotone in n. Only strictly increasing
index sequences are tried: a repeated index forces equal symbols in two
coordinates of every projected word, so no sequence with a repeat is N-, DS-
or E-shattered, and permuting a sequence permutes the projection.
"""
import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, islice
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, TypeVar

from src.core.budget import CheckBudget, ensure_budget
from src.core.classes import ConceptClass, Word, project
from src.core.errors import EmptyClassError, PreconditionError
from src.core.schemas import DimensionReportModel

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class DimensionWitness:
    """A dimension value with the lexicographically first witness sequence."""
    value: int
    indices: Optional[Tuple[int, ...]]
    f: Optional[Tuple[int, ...]] = None
    g: Optional[Tuple[int, ...]] = None


@dataclass
class DimensionReport:
    vc: Optional[int]
    natarajan: int
    ds: int
    exponential: int
    witnesses: Dict[str, DimensionWitness] = field(default_factory=dict)

    def to_model(self) -> DimensionReportModel:
        nat = self.witnesses.get("natarajan")
        return DimensionReportModel(
            vc=self.vc,
            natarajan=self.natarajan,
            ds=self.ds,
            exponential=self.exponential,
            witnesses={
                name: list(w.indices) if w.indices is not None else None
                for name, w in self.witnesses.items()
            },
            natarajan_functions=(
                {"f": list(nat.f), "g": list(nat.g)} if nat is not None and nat.f is not None else None
            ),
        )


# ---------------------------------------------------------------------------
# Pseudo-cubes
# ---------------------------------------------------------------------------

def _lonely_words(words: Iterable[Word], n: int) -> Set[Word]:
    """Words with no i-neighbour for some direction i."""
    words = list(words)
    lonely: Set[Word] = set()
    for i in range(n):
        groups: Dict[Word, List[Word]] = defaultdict(list)
        for word in words:
            groups[word[:i] + word[i + 1:]].append(word)
        for members in groups.values():
            if len(members) == 1:
                lonely.add(members[0])
    return lonely


def is_pseudo_cube(concept_class: ConceptClass) -> bool:
    """True iff the class is non-empty and every word has an i-neighbour for every i."""
    if concept_class.is_empty:
        return False
    return not _lonely_words(concept_class.hypotheses, concept_class.domain_size)


def pseudo_cube_core(concept_class: ConceptClass) -> ConceptClass:
    """Largest pseudo-cube sub-class, by peeling lonely words until stable."""
    alive = set(concept_class.hypotheses)
    n = concept_class.domain_size
    while alive:
        lonely = _lonely_words(alive, n)
        if not lonely:
            break
        alive -= lonely
    return ConceptClass(n, tuple(alive))


# ---------------------------------------------------------------------------
# Shattering predicates
# ---------------------------------------------------------------------------

def is_ds_shattered(concept_class: ConceptClass, S: Sequence[int]) -> bool:
    return not pseudo_cube_core(project(concept_class, S)).is_empty


def is_e_shattered(concept_class: ConceptClass, S: Sequence[int]) -> bool:
    return len(project(concept_class, S)) >= 2 ** len(S)


def is_vc_shattered(concept_class: ConceptClass, S: Sequence[int]) -> bool:
    projected = project(concept_class, S)
    return projected.is_binary() and len(projected) == 2 ** len(S)


def natarajan_functions(
    concept_class: ConceptClass, S: Sequence[int], budget: Optional[CheckBudget] = None
) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Return (f, g) N-shattering S, choosing f(i) < g(i) lexicographically first, or None."""
    budget = ensure_budget(budget)
    words = project(concept_class, S).hypotheses
    n = len(S)
    if not words:
        return None
    # next labels available after each prefix
    extensions: Dict[Word, Set[int]] = defaultdict(set)
    for word in words:
        for k in range(n):
            extensions[word[:k]].add(word[k])

    def search(k: int, mixtures: List[Word], f: Word, g: Word):
        if k == n:
            return f, g
        common = None
        for prefix in mixtures:
            budget.spend()
            nxt = extensions.get(prefix, set())
            common = set(nxt) if common is None else common & nxt
            if len(common) < 2:
                return None
        labels = sorted(common)
        for a_pos, a in enumerate(labels):
            for b in labels[a_pos + 1:]:
                found = search(
                    k + 1,
                    [m + (a,) for m in mixtures] + [m + (b,) for m in mixtures],
                    f + (a,),
                    g + (b,),
                )
                if found is not None:
                    return found
        return None

    return search(0, [()], (), ())


def is_n_shattered(concept_class: ConceptClass, S: Sequence[int]) -> bool:
    return natarajan_functions(concept_class, S) is not None


# ---------------------------------------------------------------------------
# Dimension searches
# ---------------------------------------------------------------------------

def _first_match(
    candidates: Iterator[T], test: Callable[[T], R], threads: int = 1, batch: int = 64
) -> Optional[Tuple[T, R]]:
    """First candidate (in order) whose test result is truthy."""
    if threads <= 1:
        for candidate in candidates:
            result = test(candidate)
            if result:
                return candidate, result
        return None
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while True:
            chunk = list(islice(candidates, batch * threads))
            if not chunk:
                return None
            for candidate, result in zip(chunk, pool.map(test, chunk)):
                if result:
                    return candidate, result


def _search_upward(
    concept_class: ConceptClass,
    test: Callable[[Tuple[int, ...]], R],
    max_length: int,
    threads: int,
) -> Tuple[int, Tuple[int, ...], Optional[R]]:
    value, witness, payload = 0, (), None
    for length in range(1, max_length + 1):
        found = _first_match(combinations(range(concept_class.domain_size), length), test, threads)
        if found is None:
            break
        value, (witness, payload) = length, found
    return value, witness, payload


def ds_dimension(
    concept_class: ConceptClass, budget: Optional[CheckBudget] = None, threads: int = 1
) -> DimensionWitness:
    """Largest n such that some length-n sequence contains an n-dimensional pseudo-cube."""
    if concept_class.is_empty:
        raise EmptyClassError("DS dimension is undefined for the empty class")
    budget = ensure_budget(budget)

    def test(S):
        budget.spend(len(concept_class) * max(1, len(S)))
        return is_ds_shattered(concept_class, S)

    value, witness, _ = _search_upward(concept_class, test, concept_class.domain_size, threads)
    return DimensionWitness(value, witness)


def natarajan_dimension(
    concept_class: ConceptClass, budget: Optional[CheckBudget] = None, threads: int = 1
) -> DimensionWitness:
    """Largest n with pointwise-distinct f, g whose 2^n mixtures all lie in the projection."""
    budget = ensure_budget(budget)
    if concept_class.is_empty:
        return DimensionWitness(0, None)
    # 2^n mixtures need at least 2^n words
    limit = min(concept_class.domain_size, len(concept_class).bit_length() - 1)

    def test(S):
        budget.spend(len(concept_class))
        return natarajan_functions(concept_class, S, budget)

    value, witness, payload = _search_upward(concept_class, test, limit, threads)
    if value == 0:
        return DimensionWitness(0, (), (), ())
    f, g = payload
    return DimensionWitness(value, witness, f, g)


def exponential_dimension(
    concept_class: ConceptClass, budget: Optional[CheckBudget] = None, threads: int = 1
) -> DimensionWitness:
    """Largest n with some length-n projection of size at least 2^n."""
    budget = ensure_budget(budget)
    if concept_class.is_empty:
        return DimensionWitness(0, None)
    limit = min(concept_class.domain_size, len(concept_class).bit_length() - 1)

    def test(S):
        budget.spend(len(concept_class))
        return is_e_shattered(concept_class, S)

    value, witness, _ = _search_upward(concept_class, test, limit, threads)
    return DimensionWitness(value, witness)


def vc_dimension(
    concept_class: ConceptClass, budget: Optional[CheckBudget] = None, threads: int = 1
) -> DimensionWitness:
    """Largest n with a fully shattered sequence; binary classes only."""
    if not concept_class.is_binary():
        raise PreconditionError(
            "VC dimension requires labels in {0, 1}",
            details={"alphabet": list(concept_class.alphabet())},
        )
    budget = ensure_budget(budget)
    if concept_class.is_empty:
        return DimensionWitness(0, None)
    limit = min(concept_class.domain_size, len(concept_class).bit_length() - 1)

    def test(S):
        budget.spend(len(concept_class))
        return is_vc_shattered(concept_class, S)

    value, witness, _ = _search_upward(concept_class, test, limit, threads)
    return DimensionWitness(value, witness)


def dimension_report(
    concept_class: ConceptClass, budget: Optional[CheckBudget] = None, threads: int = 1
) -> DimensionReport:
    """All four dimensions with witnesses; vc is None for non-binary classes."""
    budget = ensure_budget(budget)
    nat = natarajan_dimension(concept_class, budget, threads)
    ds = ds_dimension(concept_class, budget, threads)
    exp = exponential_dimension(concept_class, budget, threads)
    witnesses = {"natarajan": nat, "ds": ds, "exponential": exp}
    vc = None
    if concept_class.is_binary():
        vc_w = vc_dimension(concept_class, budget, threads)
        vc = vc_w.value
        witnesses["vc"] = vc_w
    logger.info(
        f"Dimensions of class ({len(concept_class)} words): "
        f"vc={vc} natarajan={nat.value} ds={ds.value} exponential={exp.value}"
    )
    return DimensionReport(vc=vc, natarajan=nat.value, ds=ds.value, exponential=exp.value, witnesses=witnesses)
