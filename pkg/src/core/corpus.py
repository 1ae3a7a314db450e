"""
Deterministic generator of random concept classes, pseudo-cubes, menus,
samples and distributions for property checks and fixtures.
"""
import json
import logging
import random
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Optional, Tuple

from config.settings import CORPUS_CONFIG_PATH
from .classes import ConceptClass, FiniteDistribution, LabeledExample, Menu, Sample, Word

logger = logging.getLogger(__name__)


def load_corpus_config() -> Dict[str, Any]:
    with open(CORPUS_CONFIG_PATH, "r", encoding="utf-8") as handle:
        return json.load(handle)["corpus_config"]


class ClassCorpusGenerator:
    """Seeded generator; equal seeds give equal corpora."""

    def __init__(self, seed: int = 42):
        self.seed = seed
        self.rng = random.Random(seed)

    # -- classes -----------------------------------------------------------

    def random_class(
        self, max_domain_size: int = 4, max_alphabet: int = 5, max_words: int = 40
    ) -> ConceptClass:
        n = self.rng.randint(1, max_domain_size)
        p = self.rng.randint(2, max_alphabet)
        cube = list(product(range(p), repeat=n))
        size = self.rng.randint(1, min(max_words, len(cube)))
        return ConceptClass(n, tuple(self.rng.sample(cube, size)))

    def _cycle_factor(self) -> List[Word]:
        """Leafless bipartite graph as a union of one or two even cycles."""
        edges = set()
        for _ in range(self.rng.randint(1, 2)):
            k = self.rng.randint(2, 3)
            lefts = self.rng.sample(range(5), k)
            rights = self.rng.sample(range(5), k)
            for j in range(k):
                edges.add((lefts[j], rights[j]))
                edges.add((lefts[(j + 1) % k], rights[j]))
        return sorted(edges)

    def _factor(self, dim: int) -> List[Word]:
        if dim == 1:
            return [(a,) for a in range(self.rng.randint(2, 3))]
        return self._cycle_factor()

    def random_pseudo_cube(self, max_dimension: int = 4, max_words: int = 60) -> Tuple[ConceptClass, int]:
        """A pseudo-cube over d coordinates built from products and unions of small pieces."""
        while True:
            d = self.rng.randint(1, max_dimension)
            dims, left = [], d
            while left:
                piece = 2 if left >= 2 and self.rng.random() < 0.5 else 1
                dims.append(piece)
                left -= piece
            words: List[Word] = [()]
            for piece in dims:
                factor = self._factor(piece)
                words = [w + f for w in words for f in factor]
            if self.rng.random() < 0.3:
                # a shifted copy keeps the union a pseudo-cube
                shift = 1 + max(v for w in words for v in w)
                words = words + [tuple(v + shift for v in w) for w in words]
            order = list(range(d))
            self.rng.shuffle(order)
            words = [tuple(w[i] for i in order) for w in words]
            if len(set(words)) <= max_words:
                return ConceptClass(d, tuple(words)), d

    def random_bipartite(self, left: int = 4, right: int = 4, edges: int = 8) -> List[Tuple[int, int]]:
        pairs = list(product(range(left), range(right)))
        return sorted(self.rng.sample(pairs, min(edges, len(pairs))))

    # -- samples, menus, distributions --------------------------------------

    def random_realizable_sample(
        self, concept_class: ConceptClass, size: int, word: Optional[Word] = None
    ) -> Sample:
        word = word if word is not None else self.rng.choice(concept_class.hypotheses)
        points = [self.rng.randrange(concept_class.domain_size) for _ in range(size)]
        return Sample(tuple(LabeledExample(x, word[x]) for x in points))

    def random_menu(self, concept_class: ConceptClass, word: Word, p: int) -> Menu:
        """Menu of size p containing ``word`` pointwise."""
        alphabet = concept_class.alphabet()
        entries = {}
        for x in range(concept_class.domain_size):
            extra = [v for v in alphabet if v != word[x]]
            picks = self.rng.sample(extra, min(len(extra), self.rng.randint(0, p - 1)))
            entries[x] = {word[x], *picks}
        return Menu.from_sets(entries, p=p)

    def random_menu_triple(
        self, max_domain_size: int = 4, max_alphabet: int = 4, max_sample_size: int = 5
    ) -> Tuple[ConceptClass, Menu, Sample]:
        """(class, menu, sample) with the sample realizable by both."""
        concept_class = self.random_class(max_domain_size, max_alphabet, max_words=30)
        word = self.rng.choice(concept_class.hypotheses)
        mu = self.random_menu(concept_class, word, self.rng.randint(2, max(2, max_alphabet)))
        sample = self.random_realizable_sample(concept_class, self.rng.randint(1, max_sample_size), word)
        return concept_class, mu, sample

    def random_distribution(self, concept_class: ConceptClass, support: int = 3) -> FiniteDistribution:
        """Exact distribution supported on examples of one word."""
        word = self.rng.choice(concept_class.hypotheses)
        points = self.rng.sample(range(concept_class.domain_size), min(support, concept_class.domain_size))
        weights = [self.rng.randint(1, 4) for _ in points]
        total = sum(weights)
        return FiniteDistribution(tuple(
            (LabeledExample(x, word[x]), Fraction(w, total)) for x, w in zip(points, weights)
        ))
