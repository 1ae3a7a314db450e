"""
Two-stage sample compression: a list stage producing a menu, then a menu
stage producing a single hypothesis. ``reconstruct`` needs only the kept
examples and the header.
"""
import logging
from math import comb
from typing import Dict, Optional

from src.core.classes import ConceptClass, Sample, consistent_words
from src.core.errors import NotRealizableError, PreconditionError, VerificationError
from src.dims.dimensions import ds_dimension, natarajan_dimension
from .bounds import compute_r_bound, default_t, menu_stage_params
from .list_scheme import CompressionResult, list_compress, reconstruct_menu
from .menu_scheme import Hypothesis, menu_compress, reconstruct_hypothesis

logger = logging.getLogger(__name__)

HEADER_KEYS = ("d", "t", "d_n", "list_blocks", "menu_blocks", "m", "n")


def _check_header(params: Dict[str, int]) -> None:
    missing = [k for k in HEADER_KEYS if k not in params]
    if missing:
        raise PreconditionError(f"compression header lacks {missing}")
    p = max(1, params["list_blocks"] * comb(params["d"] + params["t"], params["t"]))
    expected = menu_stage_params(params["d_n"], p, params["n"])
    if params["m"] != expected.m:
        raise VerificationError(
            f"header block size {params['m']} disagrees with {expected.m} derived from (d_N, p)",
            details={"p": p},
        )


def reconstruct(concept_class: ConceptClass, kept: Sample, params: Dict[str, int]) -> Hypothesis:
    """Replay the list stage on the first r1 examples, then the menu stage on the rest."""
    _check_header(params)
    r1 = params["list_blocks"] * (params["d"] + params["t"])
    mu = reconstruct_menu(concept_class, kept[:r1], params)
    return reconstruct_hypothesis(concept_class, mu, kept[r1:], params)


def compress_end_to_end(
    concept_class: ConceptClass,
    S: Sample,
    t: Optional[int] = None,
    seed: int = 0,
    d: Optional[int] = None,
    d_n: Optional[int] = None,
) -> CompressionResult:
    """Compose both stages and certify the reconstruction on every example of S."""
    if not consistent_words(concept_class, S):
        raise NotRealizableError("sample is not realizable by the class")
    d = ds_dimension(concept_class).value if d is None else d
    d_n = natarajan_dimension(concept_class).value if d_n is None else d_n
    t = default_t(d) if t is None else t
    n = len(S)
    first = list_compress(concept_class, S, t, d, seed)
    second = menu_compress(concept_class, first.menu, S, d_n, seed)
    params = {
        "d": d,
        "t": t,
        "d_n": d_n,
        "list_blocks": first.params["list_blocks"],
        "menu_blocks": second.params["menu_blocks"],
        "m": second.params["m"],
        "n": n,
    }
    positions = first.positions + second.positions
    result = CompressionResult(
        kept=S.subsample(positions),
        positions=positions,
        stage="combined",
        params=params,
        r_achieved=len(positions),
        r_bound=compute_r_bound(d, d_n, n, t),
        bound_name="combined: ((d+t+1)/(t+1)*(d+t) + 1000*d_N*log2(C(d+t+1,t+1)*log2(2n)))*log2(2n)",
        menu=first.menu,
        history=first.history,
    )
    h = reconstruct(concept_class, result.kept, params)
    wrong = h.errors_on(S)
    if wrong:
        raise VerificationError("reconstruction disagrees with the sample", details={"positions": wrong[:10]})
    if result.r_achieved > result.r_bound:
        raise VerificationError(
            f"kept {result.r_achieved} examples, bound is {result.r_bound:.1f}",
            details={"r_achieved": result.r_achieved, "r_bound": result.r_bound},
        )
    result.verified = True
    logger.info(f"Compressed {n} examples to {result.r_achieved} (bound {result.r_bound:.1f})")
    return result
