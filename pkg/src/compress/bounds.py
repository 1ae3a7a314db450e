"""
Size formulas for the two-stage compression scheme. Logarithms are base two.
"""
import math
from dataclasses import dataclass
from math import comb


def log2_2n(n: int) -> float:
    return math.log2(2 * n) if n > 0 else 0.0


def list_block_count(d: int, t: int, n: int) -> int:
    """Number of size-(d + t) blocks the list stage may keep."""
    return math.floor((d + t + 1) / (t + 1) * log2_2n(n))


def list_coverage_fraction(d: int, t: int) -> float:
    return (t + 1) / (d + t + 1)


def list_stage_bound(d: int, t: int, n: int) -> float:
    """Bound on the list-stage subsample size."""
    return (d + t + 1) / (t + 1) * (d + t) * log2_2n(n)


def list_menu_size_bound(d: int, t: int, n: int) -> float:
    return comb(d + t + 1, t + 1) * log2_2n(n)


@dataclass(frozen=True)
class MenuStageParams:
    m: int        # block size
    blocks: int   # number of blocks in the plurality vote

    @property
    def size(self) -> int:
        return self.m * self.blocks


def menu_block_size(d_n: int, p: int) -> int:
    if p <= 1 or d_n == 0:
        return 0
    return math.ceil(100 * d_n * math.log2(p))


def menu_stage_params(d_n: int, p: int, n: int) -> MenuStageParams:
    return MenuStageParams(m=menu_block_size(d_n, p), blocks=math.floor(8 * log2_2n(n)))


def menu_stage_bound(d_n: int, p: float, n: int) -> float:
    if p <= 1:
        return 0.0
    return 1000 * d_n * math.log2(p) * log2_2n(n)


def compute_r_bound(d_ds: int, d_n: int, n: int, t: int) -> float:
    """Combined subsample-size bound of the two-stage scheme."""
    if n <= 0:
        return 0.0
    inner = comb(d_ds + t + 1, t + 1) * log2_2n(n)
    menu_term = 1000 * d_n * math.log2(inner) if inner > 1 else 0.0
    return ((d_ds + t + 1) / (t + 1) * (d_ds + t) + menu_term) * log2_2n(n)


def default_t(d_ds: int) -> int:
    """The t = ceil(sqrt(d)) choice."""
    return math.ceil(math.sqrt(d_ds))
