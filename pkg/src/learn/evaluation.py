"""
Leave-one-out counting and expected-error estimation for the learners.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from config.settings import BUDGET_CONFIG
from src.core.classes import ConceptClass, FiniteDistribution, Sample, agnostic_risk, distribution_is_realizable
from src.core.errors import BudgetExceededError, NotRealizableError, PreconditionError
from .predictors import LIST, Predictor

logger = logging.getLogger(__name__)


def loo_bad_count(predict: Predictor, Sprime: Sample, threads: int = 1) -> int:
    """Number of indices i whose deleted example is mispredicted from the rest."""
    if not predict.realizes(Sprime):
        raise NotRealizableError("leave-one-out sample is not realizable")

    def is_bad(i: int) -> bool:
        e = Sprime[i]
        return e.y not in predict.options(Sprime.without(i), e.x)

    indices = range(len(Sprime))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(is_bad, indices))
    else:
        verdicts = [is_bad(i) for i in indices]
    return sum(verdicts)


def loo_list_good_count(concept_class: ConceptClass, t: int, Sprime: Sample, d: int) -> int:
    """Indices i whose label lies in the list learned from the other d + t examples."""
    return len(Sprime) - loo_bad_count(Predictor.list_learner(concept_class, t, d), Sprime)


def _check_distribution(predict: Predictor, D: FiniteDistribution) -> None:
    if not distribution_is_realizable(predict.concept_class, D):
        raise NotRealizableError("distribution is not realizable by the class")
    if predict.menu is not None and any(e.y not in predict.menu.options(e.x) for e in D.support()):
        raise NotRealizableError("distribution is not realizable by the menu")


def exact_expected_error(
    predict: Predictor, D: FiniteDistribution, n: int, max_outcomes: Optional[int] = None
) -> Union[Fraction, float]:
    """Probability that the learner trained on n draws errs on a fresh draw, by enumeration."""
    _check_distribution(predict, D)
    atoms = D.positive_atoms()
    limit = BUDGET_CONFIG["max_exact_outcomes"] if max_outcomes is None else max_outcomes
    outcomes = len(atoms) ** (n + 1)
    if outcomes > limit:
        raise BudgetExceededError(
            f"exact enumeration needs {outcomes} outcomes, budget is {limit}",
            details={"outcomes": outcomes, "limit": limit},
        )
    memo: Dict[Tuple, bool] = {}
    error: Union[Fraction, float] = Fraction(0) if D.exact else 0.0
    for draw in product(range(len(atoms)), repeat=n + 1):
        *train, test = draw
        key = (tuple(sorted(train)), test)
        if key not in memo:
            S = Sample(tuple(atoms[k][0] for k in train))
            e = atoms[test][0]
            memo[key] = e.y not in predict.options(S, e.x)
        if memo[key]:
            weight = Fraction(1) if D.exact else 1.0
            for k in draw:
                weight *= atoms[k][1]
            error += weight
    return error


def mc_error(predict: Predictor, D: FiniteDistribution, n: int, trials: int, seed: int) -> float:
    """Seeded Monte-Carlo estimate of the expected error."""
    _check_distribution(predict, D)
    atoms = D.positive_atoms()
    probs = np.array([float(p) for _, p in atoms], dtype=float)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    draws = rng.choice(len(atoms), size=(trials, n + 1), p=probs)
    memo: Dict[Tuple, bool] = {}
    mistakes = 0
    for row in draws:
        train, test = tuple(sorted(int(k) for k in row[:-1])), int(row[-1])
        key = (train, test)
        if key not in memo:
            S = Sample(tuple(atoms[k][0] for k in train))
            e = atoms[test][0]
            memo[key] = e.y not in predict.options(S, e.x)
        mistakes += memo[key]
    return mistakes / trials


def mc_standard_error(estimate: float, trials: int) -> float:
    return math.sqrt(max(estimate * (1 - estimate), 0.0) / trials)


@dataclass(frozen=True)
class CurvePoint:
    n: int
    error: float
    bound: float
    bound_name: str


def error_bound(predict: Predictor, n: int, d_ds: int, d_n: int) -> Tuple[float, str]:
    """Learner bound on the expected error with n training examples."""
    if predict.kind == LIST:
        return predict.d / (n + 1), "list: d_DS/(n+1) at n = d_DS + t"
    if predict.menu is not None:
        p = max(predict.menu.p, 1)
        return 20 * d_n * math.log2(p) / (n + 1), "menu one-inclusion: 20*d_N*log2(p)/(n+1)"
    return d_ds / (n + 1), "one-inclusion: d_DS/(n+1)"


def learning_curve(
    predict: Predictor,
    D: FiniteDistribution,
    ns: Sequence[int],
    d_ds: int,
    d_n: int,
    mode: str = "exact",
    trials: int = 10000,
    seed: int = 0,
) -> List[CurvePoint]:
    """Observed error next to the learner bound for each training size."""
    rows = []
    for n in ns:
        if mode == "exact":
            error = float(exact_expected_error(predict, D, n))
        elif mode == "mc":
            error = mc_error(predict, D, n, trials, seed + n)
        else:
            raise PreconditionError(f"unknown curve mode {mode!r}")
        bound, name = error_bound(predict, n, d_ds, d_n)
        rows.append(CurvePoint(n, error, bound, name))
        logger.info(f"Curve point n={n}: error={error:.4f} bound={bound:.4f}")
    return rows


def agnostic_report(concept_class: ConceptClass, D: FiniteDistribution) -> Dict[str, object]:
    """Empirical agnostic risk of the class under D and whether D is realizable."""
    risk = agnostic_risk(concept_class, D)
    return {
        "agnostic_risk": str(risk) if isinstance(risk, Fraction) else risk,
        "realizable": distribution_is_realizable(concept_class, D),
    }
