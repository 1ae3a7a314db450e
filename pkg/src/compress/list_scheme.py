"""
List compression: greedy cover of the sample by list-learner menus.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations, cycle, islice
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import COMPRESSION_CONFIG
from src.core.classes import ConceptClass, LabeledExample, Menu, Sample, consistent_words
from src.core.errors import CompressionError, NotRealizableError, PreconditionError
from src.core.schemas import CompressionReportModel
from src.dims.dimensions import ds_dimension
from src.learn.predictors import list_predict
from .bounds import list_block_count, list_coverage_fraction, list_menu_size_bound, list_stage_bound

logger = logging.getLogger(__name__)

Positions = Tuple[int, ...]


@dataclass
class CompressionResult:
    """A kept subsample of S with the header its reconstruction needs."""
    kept: Sample
    positions: Positions
    stage: str
    params: Dict[str, int]
    r_achieved: int
    r_bound: float
    bound_name: str
    verified: bool = False
    menu: Optional[Menu] = None
    history: List[int] = field(default_factory=list)

    def to_model(self) -> CompressionReportModel:
        return CompressionReportModel(
            stage=self.stage,
            kept=[(e.x, e.y) for e in self.kept],
            kept_positions=list(self.positions),
            params=dict(self.params),
            r_achieved=self.r_achieved,
            r_bound=self.r_bound,
            bound_name=self.bound_name,
            verified=self.verified,
        )


class BlockMenus:
    """Memoized list-learner predictions keyed by block content."""

    def __init__(self, concept_class: ConceptClass, t: int, d: int):
        self.concept_class = concept_class
        self.t = t
        self.d = d
        self._cache: Dict[Tuple[Tuple[LabeledExample, ...], int], FrozenSet[int]] = {}

    def options(self, block: Sample, x: int) -> FrozenSet[int]:
        key = (tuple(sorted(block.examples, key=lambda e: (e.x, e.y))), x)
        if key not in self._cache:
            self._cache[key] = list_predict(self.concept_class, self.t, Sample(key[0]), x, self.d)
        return self._cache[key]

    def covers(self, block: Sample, example: LabeledExample) -> bool:
        return example.y in self.options(block, example.x)


def reconstruct_menu(concept_class: ConceptClass, kept: Sample, params: Dict[str, int]) -> Menu:
    """Union of the list-learner menus of the consecutive kept blocks."""
    d, t = params["d"], params["t"]
    block_size, blocks = d + t, params["list_blocks"]
    if len(kept) < block_size * blocks:
        raise PreconditionError(
            f"kept sample has {len(kept)} examples, header needs {block_size * blocks}"
        )
    menus = BlockMenus(concept_class, t, d)
    entries: Dict[int, set] = {x: set() for x in range(concept_class.domain_size)}
    for j in range(blocks):
        block = kept[j * block_size:(j + 1) * block_size]
        for x in entries:
            entries[x] |= menus.options(block, x)
    return Menu.from_sets(entries, p=max(1, blocks * comb(d + t, t)))


def _candidate_pool(
    uncovered: Sequence[int], covered: Sequence[int], size: int, rng: np.random.Generator, exhaustive: bool
) -> Iterable[Positions]:
    if len(uncovered) <= size:
        # pad with covered positions, repeating the sample when it is shorter than a block
        padding = list(islice(cycle(list(covered) + list(uncovered)), size - len(uncovered)))
        yield tuple(sorted(list(uncovered) + padding))
        return
    if exhaustive:
        yield from combinations(uncovered, size)
        return
    for _ in range(COMPRESSION_CONFIG["pool_size"]):
        yield tuple(sorted(int(k) for k in rng.choice(uncovered, size=size, replace=False)))


def list_compress(
    concept_class: ConceptClass,
    S: Sample,
    t: int,
    d: Optional[int] = None,
    seed: int = 0,
) -> CompressionResult:
    """Keep blocks whose menus cover the sample; every example ends up covered."""
    if not consistent_words(concept_class, S):
        raise NotRealizableError("sample is not realizable by the class")
    d = ds_dimension(concept_class).value if d is None else d
    n, size = len(S), d + t
    alpha = list_coverage_fraction(d, t)
    max_blocks = list_block_count(d, t, n)
    rng = np.random.default_rng(seed)
    menus = BlockMenus(concept_class, t, d)
    uncovered = list(range(n))
    chosen: List[Positions] = []
    history = [n]
    while uncovered:
        if len(chosen) >= max_blocks:
            raise CompressionError(
                f"list stage used all {max_blocks} blocks with {len(uncovered)} examples uncovered",
                details={"uncovered": uncovered[:10]},
            )
        open_set = set(uncovered)
        covered = [k for k in range(n) if k not in open_set]
        exhaustive = comb(len(uncovered), size) <= COMPRESSION_CONFIG["exhaustive_pool_limit"]
        best: Optional[Tuple[int, Positions]] = None
        for attempt in range(COMPRESSION_CONFIG["max_pool_rounds"]):
            seen_content = set()
            for block in _candidate_pool(uncovered, covered, size, rng, exhaustive):
                content = tuple(sorted((S[k].x, S[k].y) for k in block))
                if content in seen_content:
                    continue
                seen_content.add(content)
                block_sample = S.subsample(block)
                gain = sum(1 for k in uncovered if menus.covers(block_sample, S[k]))
                if best is None or gain > best[0]:
                    best = (gain, block)
            if best is not None and best[0] >= alpha * len(uncovered):
                break
            if exhaustive:
                break
            logger.debug(f"Candidate pool {attempt} reached coverage {best[0] if best else 0}, resampling")
        if best is None or best[0] < alpha * len(uncovered):
            raise CompressionError(
                f"no block covers {alpha:.3f} of the {len(uncovered)} uncovered examples",
                details={"best_gain": best[0] if best else 0, "exhaustive": exhaustive},
            )
        gain, block = best
        block_sample = S.subsample(block)
        chosen.append(block)
        uncovered = [k for k in uncovered if not menus.covers(block_sample, S[k])]
        history.append(len(uncovered))
        logger.info(f"List round {len(chosen)}: covered {gain}, {len(uncovered)} left")
    positions = tuple(k for block in chosen for k in block)
    params = {"d": d, "t": t, "list_blocks": len(chosen), "n": n}
    result = CompressionResult(
        kept=S.subsample(positions),
        positions=positions,
        stage="list",
        params=params,
        r_achieved=len(positions),
        r_bound=list_stage_bound(d, t, n),
        bound_name="list stage: (d+t+1)/(t+1)*(d+t)*log2(2n)",
        history=history,
    )
    result.menu = reconstruct_menu(concept_class, result.kept, params)
    missing = [k for k, e in enumerate(S) if e.y not in result.menu.options(e.x)]
    if missing:
        raise CompressionError("reconstructed menu misses sample examples", details={"positions": missing[:10]})
    menu_ok = not chosen or result.menu.p <= list_menu_size_bound(d, t, n)
    result.verified = result.r_achieved <= result.r_bound and menu_ok
    return result
