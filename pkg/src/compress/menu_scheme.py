"""
Menu compression: a plurality vote of menu-restricted learners trained on
blocks drawn from the game mixture.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from config.settings import COMPRESSION_CONFIG
from src.core.classes import ConceptClass, Menu, Sample, consistent_words
from src.core.errors import CompressionError, NotRealizableError, PreconditionError
from src.dims.dimensions import natarajan_dimension
from .bounds import menu_stage_bound, menu_stage_params
from .game import BlockLearner, solve_menu_game
from .list_scheme import CompressionResult

logger = logging.getLogger(__name__)


def plurality(labels: Iterable[int]) -> int:
    """Most frequent label; the smallest one wins ties."""
    counts = Counter(labels)
    if not counts:
        raise PreconditionError("plurality of an empty vote")
    top = max(counts.values())
    return min(label for label, c in counts.items() if c == top)


@dataclass(frozen=True)
class Hypothesis:
    """A total function on the domain, stored as one label per point."""
    values: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.values[x]

    def errors_on(self, S: Sample) -> List[int]:
        return [k for k, e in enumerate(S) if self.values[e.x] != e.y]


def reconstruct_hypothesis(
    concept_class: ConceptClass, mu: Menu, kept: Sample, params: Dict[str, int]
) -> Hypothesis:
    """Plurality over consecutive size-m blocks of ``kept`` of the menu-restricted learner."""
    m, blocks = params["m"], params["menu_blocks"]
    if len(kept) != m * blocks:
        raise PreconditionError(f"menu stage expects {m * blocks} kept examples, got {len(kept)}")
    learner = BlockLearner(concept_class, mu, kept)
    chunks = [tuple(range(j * m, (j + 1) * m)) for j in range(max(blocks, 1))]
    values = []
    for x in range(concept_class.domain_size):
        votes = [v for v in (learner.vote(chunk, x) for chunk in chunks) if v is not None]
        # points the menu-restricted class cannot reach fall back to the smallest menu label
        values.append(plurality(votes) if votes else min(mu.options(x), default=0))
    return Hypothesis(tuple(values))


def menu_compress(
    concept_class: ConceptClass,
    mu: Menu,
    S: Sample,
    d_n: Optional[int] = None,
    seed: int = 0,
) -> CompressionResult:
    """Draw blocks from the game mixture until their plurality is correct on all of S."""
    if not consistent_words(concept_class, S):
        raise NotRealizableError("sample is not realizable by the class")
    d_n = natarajan_dimension(concept_class).value if d_n is None else d_n
    n = len(S)
    stage = menu_stage_params(d_n, mu.p, n)
    params = {"d_n": d_n, "p": mu.p, "m": stage.m, "menu_blocks": stage.blocks, "n": n}
    bound = menu_stage_bound(d_n, mu.p, n)
    name = "menu stage: 1000*d_N*log2(p)*log2(2n)"
    if n == 0:
        return CompressionResult(Sample(), (), "menu", {**params, "menu_blocks": 0}, 0, bound, name, verified=True)
    game = solve_menu_game(concept_class, mu, S, stage.m, d_n, seed)
    probs = game.probabilities()
    for attempt in range(COMPRESSION_CONFIG["menu_retries"]):
        rng = np.random.default_rng([seed, attempt])
        picks = rng.choice(len(game.mixture), size=stage.blocks, p=probs / probs.sum())
        positions = tuple(k for j in picks for k in game.mixture[int(j)][0])
        kept = S.subsample(positions)
        h = reconstruct_hypothesis(concept_class, mu, kept, params)
        wrong = h.errors_on(S)
        if not wrong:
            logger.info(f"Menu stage accepted on attempt {attempt + 1} with {len(positions)} examples")
            return CompressionResult(
                kept=kept,
                positions=positions,
                stage="menu",
                params=params,
                r_achieved=len(positions),
                r_bound=bound,
                bound_name=name,
                verified=len(positions) <= bound,
            )
        logger.debug(f"Menu attempt {attempt + 1} wrong on {len(wrong)} examples")
    raise CompressionError(
        f"no plurality vote was correct on the sample after {COMPRESSION_CONFIG['menu_retries']} draws",
        details={"game_value": game.value_bound},
    )
