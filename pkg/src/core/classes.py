"""
Canonical concept classes, samples, menus and finite distributions.

Domain indices are 0-based. Labels are non-negative integers kept as given;
``ConceptClass.reinterned`` maps them onto 0..p-1 when an operation needs a
dense alphabet.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import IndexOutOfRangeError, ParseError

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
Probability = Union[Fraction, float]

PROBABILITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ConceptClass:
    """A finite set of words of length ``domain_size`` (sorted, deduplicated)."""

    domain_size: int
    hypotheses: Tuple[Word, ...]

    def __post_init__(self):
        if self.domain_size < 0:
            raise ParseError(f"domain_size must be non-negative, got {self.domain_size}")
        words = set()
        for k, word in enumerate(self.hypotheses):
            word = tuple(int(v) for v in word)
            if len(word) != self.domain_size:
                raise ParseError(
                    f"hypotheses[{k}] has length {len(word)}, expected {self.domain_size}",
                    details={"record": f"hypotheses[{k}]"},
                )
            if any(v < 0 for v in word):
                raise ParseError(
                    f"hypotheses[{k}] contains a negative label",
                    details={"record": f"hypotheses[{k}]"},
                )
            words.add(word)
        object.__setattr__(self, "hypotheses", tuple(sorted(words)))

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.domain_size, self.hypotheses))

    def __len__(self) -> int:
        return len(self.hypotheses)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.hypotheses)

    def __contains__(self, word) -> bool:
        return tuple(word) in self.word_set

    @cached_property
    def word_set(self) -> FrozenSet[Word]:
        return frozenset(self.hypotheses)

    @cached_property
    def vertex_index(self) -> Dict[Word, int]:
        """Position of every word in the sorted hypothesis tuple."""
        return {word: k for k, word in enumerate(self.hypotheses)}

    @property
    def is_empty(self) -> bool:
        return not self.hypotheses

    def alphabet(self) -> Tuple[int, ...]:
        """Labels actually used, ascending."""
        return tuple(sorted({v for word in self.hypotheses for v in word}))

    def num_labels(self) -> int:
        return len(self.alphabet())

    def is_binary(self) -> bool:
        return set(self.alphabet()) <= {0, 1}

    def reinterned(self) -> "ConceptClass":
        """Order-preserving relabelling of the used alphabet onto 0..p-1."""
        mapping = {label: k for k, label in enumerate(self.alphabet())}
        return ConceptClass(
            self.domain_size,
            tuple(tuple(mapping[v] for v in word) for word in self.hypotheses),
        )

    def restrict(self, words: Iterable[Sequence[int]]) -> "ConceptClass":
        """Sub-class keeping only the given words that are members."""
        keep = [tuple(w) for w in words if tuple(w) in self.word_set]
        return ConceptClass(self.domain_size, tuple(keep))

    @classmethod
    def from_words(cls, words: Iterable[Sequence[int]], domain_size: Optional[int] = None) -> "ConceptClass":
        words = [tuple(w) for w in words]
        if domain_size is None:
            if not words:
                raise ParseError("domain_size is required for an empty class")
            domain_size = len(words[0])
        return cls(domain_size, tuple(words))

    @classmethod
    def empty(cls, domain_size: int) -> "ConceptClass":
        return cls(domain_size, ())


@dataclass(frozen=True)
class LabeledExample:
    x: int
    y: int

    def __post_init__(self):
        if self.x < 0 or self.y < 0:
            raise ParseError(f"example ({self.x}, {self.y}) has a negative entry")


@dataclass(frozen=True)
class Sample:
    """An ordered sequence of labeled examples; repeats allowed."""

    examples: Tuple[LabeledExample, ...] = ()

    def __len__(self) -> int:
        return len(self.examples)

    def __iter__(self) -> Iterator[LabeledExample]:
        return iter(self.examples)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return Sample(self.examples[k])
        return self.examples[k]

    def points(self) -> Tuple[int, ...]:
        return tuple(e.x for e in self.examples)

    def labels(self) -> Tuple[int, ...]:
        return tuple(e.y for e in self.examples)

    def without(self, i: int) -> "Sample":
        """The sample with its i-th example removed."""
        return Sample(self.examples[:i] + self.examples[i + 1:])

    def subsample(self, positions: Sequence[int]) -> "Sample":
        return Sample(tuple(self.examples[k] for k in positions))

    def __add__(self, other: "Sample") -> "Sample":
        return Sample(self.examples + other.examples)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "Sample":
        return cls(tuple(LabeledExample(int(x), int(y)) for x, y in pairs))


@dataclass(frozen=True)
class Menu:
    """Per-point label sets of cardinality at most ``p``; absent points map to the empty set."""

    entries: Tuple[Tuple[int, FrozenSet[int]], ...]
    p: int

    def __post_init__(self):
        if self.p < 1:
            raise ParseError(f"menu size p must be positive, got {self.p}")
        normalized = {}
        for x, labels in self.entries:
            labels = frozenset(int(v) for v in labels)
            if len(labels) > self.p:
                raise ParseError(
                    f"menu entry for point {x} has {len(labels)} labels, more than p={self.p}",
                    details={"record": f"entries[{x}]"},
                )
            normalized[int(x)] = normalized.get(int(x), frozenset()) | labels
        object.__setattr__(self, "entries", tuple(sorted(normalized.items())))

    @cached_property
    def _lookup(self) -> Dict[int, FrozenSet[int]]:
        return dict(self.entries)

    def options(self, x: int) -> FrozenSet[int]:
        return self._lookup.get(x, frozenset())

    def points(self) -> Tuple[int, ...]:
        return tuple(x for x, _ in self.entries)

    def list_size(self) -> int:
        """Largest stored set (0 for an empty menu)."""
        return max((len(labels) for _, labels in self.entries), default=0)

    def to_dict(self) -> Dict[int, List[int]]:
        return {x: sorted(labels) for x, labels in self.entries}

    @classmethod
    def from_sets(cls, sets: Mapping[int, Iterable[int]], p: Optional[int] = None) -> "Menu":
        entries = tuple((int(x), frozenset(labels)) for x, labels in sets.items())
        if p is None:
            p = max((len(labels) for _, labels in entries), default=1) or 1
        return cls(entries, p)


@dataclass(frozen=True)
class FiniteDistribution:
    """Finitely supported distribution over labeled examples."""

    atoms: Tuple[Tuple[LabeledExample, Probability], ...]
    exact: bool = field(default=False, compare=False)

    def __post_init__(self):
        merged: Dict[LabeledExample, Probability] = {}
        exact = all(isinstance(p, (Fraction, int)) for _, p in self.atoms)
        for k, (example, prob) in enumerate(self.atoms):
            prob = Fraction(prob) if exact else float(prob)
            if prob < 0:
                raise ParseError(f"atoms[{k}] has negative probability", details={"record": f"atoms[{k}]"})
            merged[example] = merged.get(example, 0) + prob
        total = sum(merged.values())
        if exact and total != 1:
            raise ParseError(f"probabilities sum to {total}, expected 1")
        if not exact and abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise ParseError(f"probabilities sum to {total!r}, expected 1 within {PROBABILITY_TOLERANCE}")
        ordered = tuple(sorted(merged.items(), key=lambda item: (item[0].x, item[0].y)))
        object.__setattr__(self, "atoms", ordered)
        object.__setattr__(self, "exact", exact)

    def support(self) -> Tuple[LabeledExample, ...]:
        return tuple(example for example, prob in self.atoms if prob > 0)

    def positive_atoms(self) -> Tuple[Tuple[LabeledExample, Probability], ...]:
        return tuple((example, prob) for example, prob in self.atoms if prob > 0)

    def probabilities(self) -> List[float]:
        return [float(prob) for _, prob in self.positive_atoms()]

    @classmethod
    def uniform(cls, examples: Sequence[LabeledExample]) -> "FiniteDistribution":
        share = Fraction(1, len(examples))
        return cls(tuple((e, share) for e in examples))


def check_indices(domain_size: int, indices: Iterable[int]) -> None:
    """Raise IndexOutOfRangeError for any index outside ``0..domain_size-1``."""
    for k, x in enumerate(indices):
        if not 0 <= x < domain_size:
            raise IndexOutOfRangeError(
                f"index {x} at position {k} is outside the domain of size {domain_size}",
                details={"index": x, "position": k, "domain_size": domain_size},
            )


def project(concept_class: ConceptClass, S: Sequence[int]) -> ConceptClass:
    """Return the deduplicated projection {h|_S : h in H} over len(S) coordinates."""
    S = tuple(S)
    check_indices(concept_class.domain_size, S)
    return ConceptClass(len(S), tuple(tuple(word[i] for i in S) for word in concept_class.hypotheses))


def consistent_words(concept_class: ConceptClass, S: Sample) -> List[Word]:
    """Words of the class that agree with every example of S."""
    check_indices(concept_class.domain_size, S.points())
    return [word for word in concept_class.hypotheses if all(word[e.x] == e.y for e in S)]


def is_realizable(concept_class: ConceptClass, S: Sample) -> bool:
    check_indices(concept_class.domain_size, S.points())
    return any(all(word[e.x] == e.y for e in S) for word in concept_class.hypotheses)


def is_menu_realizable(S: Sample, mu: Menu, domain_size: Optional[int] = None) -> bool:
    if domain_size is not None:
        check_indices(domain_size, S.points())
    return all(e.y in mu.options(e.x) for e in S)


def distribution_is_realizable(concept_class: ConceptClass, D: FiniteDistribution) -> bool:
    """True iff some hypothesis has zero error on every positive-probability atom."""
    support = Sample(D.support())
    if any(e.x >= concept_class.domain_size for e in support):
        return False
    return is_realizable(concept_class, support)


def agnostic_risk(concept_class: ConceptClass, D: FiniteDistribution) -> Probability:
    """Smallest D-weighted error over the class (exact when D is rational)."""
    atoms = D.positive_atoms()
    check_indices(concept_class.domain_size, [e.x for e, _ in atoms])
    zero: Probability = Fraction(0) if D.exact else 0.0
    best: Optional[Probability] = None
    for word in concept_class.hypotheses:
        risk = sum((prob for e, prob in atoms if word[e.x] != e.y), zero)
        if best is None or risk < best:
            best = risk
    return zero if best is None else best
