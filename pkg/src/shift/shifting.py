"""
Shifting: push every direction-i edge down onto the symbols 0..s-1.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence

from src.core.budget import CheckBudget, ensure_budget
from src.core.classes import ConceptClass, Word, check_indices
from src.core.errors import IndexOutOfRangeError
from src.core.loaders import class_to_model
from src.core.schemas import ShiftStepModel, ShiftTraceModel
from src.dims.dimensions import exponential_dimension
from src.oig.graph import build_oig, shifting_avg_degree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShiftStep:
    direction: int
    avd_prime_before: Fraction
    avd_prime_after: Fraction
    exponential_before: int
    exponential_after: int
    changed: bool


@dataclass
class ShiftTrace:
    steps: List[ShiftStep] = field(default_factory=list)
    final: Optional[ConceptClass] = None

    def to_model(self) -> ShiftTraceModel:
        return ShiftTraceModel(
            steps=[
                ShiftStepModel(
                    direction=s.direction,
                    avd_prime_before=str(s.avd_prime_before),
                    avd_prime_after=str(s.avd_prime_after),
                    exponential_before=s.exponential_before,
                    exponential_after=s.exponential_after,
                    changed=s.changed,
                )
                for s in self.steps
            ],
            final=class_to_model(self.final),
            downward_closed=is_downward_closed(self.final),
        )


def shift_once(concept_class: ConceptClass, i: int) -> ConceptClass:
    """Replace each direction-i edge of size s by its words with symbols 0..s-1 at i."""
    if not 0 <= i < concept_class.domain_size:
        raise IndexOutOfRangeError(
            f"direction {i} outside 0..{concept_class.domain_size - 1}",
            details={"direction": i},
        )
    groups: Dict[Word, int] = defaultdict(int)
    for word in concept_class.hypotheses:
        groups[word[:i] + word[i + 1:]] += 1
    shifted = [
        off[:i] + (symbol,) + off[i:]
        for off, size in groups.items()
        for symbol in range(size)
    ]
    return ConceptClass(concept_class.domain_size, tuple(shifted))


def label_sum(concept_class: ConceptClass) -> int:
    """Sum of all entries; strictly decreases whenever a shift changes the class."""
    return sum(sum(word) for word in concept_class.hypotheses)


def is_downward_closed(concept_class: ConceptClass) -> bool:
    """True iff lowering any positive coordinate by one stays inside the class."""
    words = concept_class.word_set
    for word in concept_class.hypotheses:
        for i, v in enumerate(word):
            if v > 0 and word[:i] + (v - 1,) + word[i + 1:] not in words:
                return False
    return True


def _avd_prime(concept_class: ConceptClass) -> Fraction:
    return shifting_avg_degree(build_oig(concept_class)) if not concept_class.is_empty else Fraction(0)


def shift_to_fixed_point(
    concept_class: ConceptClass,
    policy: Optional[Sequence[int]] = None,
    budget: Optional[CheckBudget] = None,
) -> ShiftTrace:
    """Round-robin over ``policy`` (default 0..n-1) until a full round changes nothing.

    The class is first re-interned onto 0..p-1. Directions the policy leaves
    out are appended in ascending order, so the result is fixed in every direction.
    """
    budget = ensure_budget(budget)
    current = concept_class.reinterned()
    schedule = list(range(current.domain_size)) if policy is None else list(policy)
    check_indices(current.domain_size, schedule)
    missing = sorted(set(range(current.domain_size)) - set(schedule))
    if missing:
        logger.debug(f"Shift policy omits directions {missing}, appending them")
        schedule += missing
    trace = ShiftTrace(final=current)
    if current.is_empty or not schedule:
        return trace
    avd = _avd_prime(current)
    dim_e = exponential_dimension(current, budget).value
    rounds = 0
    while True:
        rounds += 1
        round_changed = False
        for i in schedule:
            shifted = shift_once(current, i)
            changed = shifted != current
            if changed:
                new_avd = _avd_prime(shifted)
                new_dim = exponential_dimension(shifted, budget).value
            else:
                new_avd, new_dim = avd, dim_e
            trace.steps.append(ShiftStep(i, avd, new_avd, dim_e, new_dim, changed))
            current, avd, dim_e = shifted, new_avd, new_dim
            round_changed = round_changed or changed
        if not round_changed:
            break
    trace.final = current
    logger.info(f"Shifting reached a fixed point after {rounds} rounds ({len(trace.steps)} steps)")
    return trace


def downward_closure(words: Iterable[Word]) -> ConceptClass:
    """Smallest downward-closed class containing the given words."""
    words = [tuple(w) for w in words]
    n = len(words[0]) if words else 0
    closure = set()
    for word in words:
        closure.update(product(*(range(v + 1) for v in word)))
    return ConceptClass(n, tuple(closure))
