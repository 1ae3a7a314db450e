"""
Zero-sum game between block mixtures (Minnie) and sample examples (Max).

The payoff of block T against example (x, y) is 1 when the menu-restricted
one-inclusion learner trained on T mispredicts x. Blocks are size-m sequences
drawn from S with repetition. The learner only sees which examples occur in T
and whether they occur more than once, so blocks are memoized by that profile.
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from config.settings import COMPRESSION_CONFIG
from src.core.classes import ConceptClass, LabeledExample, Menu, Sample
from src.core.errors import CompressionError, NotRealizableError, PreconditionError
from src.learn.predictors import menu_oig_predict
from .bounds import menu_block_size

logger = logging.getLogger(__name__)

Positions = Tuple[int, ...]
GAME_VALUE_TARGET = 0.25
LP_MAX_PROFILES = 20000


@dataclass
class GameSolution:
    """Mixture over blocks (positions into S) with its certified worst-case error."""
    mixture: List[Tuple[Positions, float]]
    value_bound: float
    method: str
    rounds: int = 0
    history: List[float] = field(default_factory=list)

    def probabilities(self) -> np.ndarray:
        return np.array([p for _, p in self.mixture], dtype=float)


class BlockLearner:
    """Memoized menu-restricted predictions keyed by block profile."""

    def __init__(self, concept_class: ConceptClass, mu: Menu, S: Sample):
        self.concept_class = concept_class
        self.mu = mu
        self.S = S
        self._cache: Dict[Tuple, int] = {}

    def profile(self, block: Positions) -> Tuple[Tuple[LabeledExample, int], ...]:
        counts = Counter(self.S[k] for k in block)
        return tuple(sorted(((e, min(c, 2)) for e, c in counts.items()), key=lambda item: (item[0].x, item[0].y)))

    def predict(self, block: Positions, x: int) -> int:
        profile = self.profile(block)
        key = (profile, x)
        if key not in self._cache:
            training = Sample(tuple(e for e, c in profile for _ in range(c)))
            self._cache[key] = menu_oig_predict(self.concept_class, self.mu, training, x)
        return self._cache[key]

    def vote(self, block: Positions, x: int) -> Optional[int]:
        """Prediction at x, or None when the menu leaves no word consistent with the block."""
        try:
            return self.predict(block, x)
        except PreconditionError:
            return None

    def losses(self, block: Positions, examples: Sequence[LabeledExample]) -> np.ndarray:
        return np.array([self.predict(block, e.x) != e.y for e in examples], dtype=float)


def _distinct_examples(S: Sample) -> Tuple[List[LabeledExample], Dict[LabeledExample, int]]:
    first: Dict[LabeledExample, int] = {}
    for k, e in enumerate(S):
        first.setdefault(e, k)
    return list(first), first


def certify(learner: BlockLearner, mixture: List[Tuple[Positions, float]], examples: Sequence[LabeledExample]) -> float:
    """Largest mixture error over the given examples."""
    if not examples:
        return 0.0
    total = np.zeros(len(examples))
    for block, prob in mixture:
        total += prob * learner.losses(block, examples)
    return float(total.max())


def _solve_mwu(
    learner: BlockLearner, examples: List[LabeledExample], S: Sample, m: int, rng: np.random.Generator
) -> GameSolution:
    rounds = COMPRESSION_CONFIG["game_rounds"]
    candidates = COMPRESSION_CONFIG["game_candidates"]
    eta = math.sqrt(8 * math.log(max(len(examples), 2)) / rounds)
    weights = np.ones(len(examples))
    # positions of each distinct example, for drawing blocks from example weights
    where: Dict[LabeledExample, List[int]] = {}
    for k, e in enumerate(S):
        where.setdefault(e, []).append(k)
    picks: List[Positions] = []
    history: List[float] = []
    for r in range(rounds):
        dist = weights / weights.sum()
        best: Optional[Tuple[float, Positions]] = None
        for _ in range(candidates):
            drawn = rng.choice(len(examples), size=m, p=dist)
            block = tuple(sorted(where[examples[int(j)]][0] for j in drawn))
            loss = float(dist @ learner.losses(block, examples))
            if best is None or loss < best[0]:
                best = (loss, block)
        picks.append(best[1])
        weights = weights * np.exp(eta * learner.losses(best[1], examples))
        mixture = [(block, c / len(picks)) for block, c in Counter(picks).items()]
        value = certify(learner, mixture, examples)
        history.append(value)
        if value == 0.0 or ((r + 1) % 10 == 0 and value <= GAME_VALUE_TARGET):
            return GameSolution(sorted(mixture), value, "mwu", r + 1, history)
    mixture = [(block, c / len(picks)) for block, c in Counter(picks).items()]
    return GameSolution(sorted(mixture), certify(learner, mixture, examples), "mwu", rounds, history)


def _profile_block(profile: Sequence[int], examples: List[LabeledExample], first: Dict[LabeledExample, int], m: int) -> Optional[Positions]:
    """A concrete size-m block with multiplicity class 0, 1 or 2+ per example."""
    ones = [first[examples[j]] for j, c in enumerate(profile) if c == 1]
    twos = [first[examples[j]] for j, c in enumerate(profile) if c == 2]
    used = len(ones) + 2 * len(twos)
    if used > m or (used < m and not twos):
        return None
    block = ones + [k for k in twos for _ in range(2)]
    block += [twos[0]] * (m - used) if twos else []
    return tuple(sorted(block))


def _solve_lp(
    learner: BlockLearner, examples: List[LabeledExample], first: Dict[LabeledExample, int], m: int
) -> Optional[GameSolution]:
    blocks = []
    for profile in product((0, 1, 2), repeat=len(examples)):
        block = _profile_block(profile, examples, first, m)
        if block is not None:
            blocks.append(block)
    if not blocks:
        return None
    payoff = np.array([learner.losses(block, examples) for block in blocks]).T
    rows, cols = payoff.shape
    # variables: block probabilities then the value v; minimise v
    c = np.zeros(cols + 1)
    c[-1] = 1.0
    a_ub = np.hstack([payoff, -np.ones((rows, 1))])
    a_eq = np.hstack([np.ones((1, cols)), np.zeros((1, 1))])
    result = linprog(
        c, A_ub=a_ub, b_ub=np.zeros(rows), A_eq=a_eq, b_eq=[1.0],
        bounds=[(0, None)] * cols + [(None, None)], method="highs",
    )
    if not result.success:
        logger.warning(f"Game LP failed: {result.message}")
        return None
    probs = np.clip(result.x[:cols], 0.0, None)
    keep = probs > 1e-12
    probs = probs[keep] / probs[keep].sum()
    mixture = sorted(zip([b for b, k in zip(blocks, keep) if k], probs.tolist()))
    return GameSolution(mixture, certify(learner, mixture, examples), "lp", 1)


def solve_menu_game(
    concept_class: ConceptClass,
    mu: Menu,
    S: Sample,
    m: int,
    d_n: Optional[int] = None,
    seed: int = 0,
    method: str = "auto",
) -> GameSolution:
    """Mixture over size-m blocks whose worst-case example error is at most 1/4 + tolerance.

    ``method`` is "mwu", "lp" or "auto" (LP for samples of at most
    ``lp_max_examples`` examples, multiplicative weights otherwise).
    """
    if d_n is not None and m < menu_block_size(d_n, mu.p):
        raise PreconditionError(
            f"block size {m} is below ceil(100 * d_N * log2(p)) = {menu_block_size(d_n, mu.p)}"
        )
    solution = play_menu_game(concept_class, mu, S, m, seed, method)
    tolerance = COMPRESSION_CONFIG["game_tolerance"]
    logger.info(f"Menu game solved by {solution.method}: value {solution.value_bound:.4f} with {len(solution.mixture)} blocks")
    if solution.value_bound > GAME_VALUE_TARGET + tolerance:
        raise CompressionError(
            f"game value {solution.value_bound:.4f} not certified below {GAME_VALUE_TARGET} + {tolerance}",
            details={"method": solution.method, "rounds": solution.rounds},
        )
    return solution


def play_menu_game(
    concept_class: ConceptClass, mu: Menu, S: Sample, m: int, seed: int = 0, method: str = "auto"
) -> GameSolution:
    """Best mixture found by the chosen solver, with no target on its value."""
    if any(e.y not in mu.options(e.x) for e in S):
        raise NotRealizableError("sample is not realizable by the menu")
    learner = BlockLearner(concept_class, mu, S)
    examples, first = _distinct_examples(S)
    if not examples:
        return GameSolution([((), 1.0)], 0.0, "trivial")
    use_lp = method == "lp" or (
        method == "auto"
        and len(S) <= COMPRESSION_CONFIG["lp_max_examples"]
        and 3 ** len(examples) <= LP_MAX_PROFILES
    )
    solution = None
    if use_lp:
        solution = _solve_lp(learner, examples, first, m)
    if solution is None:
        solution = _solve_mwu(learner, examples, S, m, np.random.default_rng(seed))
    return solution
