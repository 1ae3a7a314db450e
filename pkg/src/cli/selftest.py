"""
Bundled invariant suite: each claim recomputes a known fact about the named
constructions and reports PASSED or FAILED.
"""
import logging
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, List, Tuple

from src.core.classes import ConceptClass, Sample, project
from src.core.corpus import ClassCorpusGenerator, load_corpus_config
from src.core.schemas import ClaimVerdictModel
from src.dims.dimensions import ds_dimension, exponential_dimension, is_pseudo_cube, natarajan_dimension
from src.oig.graph import build_oig, shifting_avg_degree
from src.shift.shifting import is_downward_closed, shift_once, shift_to_fixed_point
from src.learn.predictors import Predictor
from src.learn.evaluation import loo_bad_count, loo_list_good_count
from src.compress.scheme import compress_end_to_end, reconstruct
from src.complex.simplicial import find_alternating_square, find_empty_square, is_good
from src.complex.groups import FiniteGroup, SubgroupSpec, check_polish_conditions
from src.complex.generators import gen_hexagon, gen_torus_pseudocube, gen_tree_class

logger = logging.getLogger(__name__)

Claim = Callable[[], Tuple[bool, str]]

EXAMPLE_32 = ConceptClass(2, ((1, 1), (1, 0), (0, 1), (2, 0), (0, 2)))
EXAMPLE_32_SHIFTED = ConceptClass(2, ((1, 1), (0, 0), (0, 1), (1, 0), (0, 2)))
EXAMPLE_33 = ConceptClass(2, ((2, 2), (1, 1), (1, 0), (2, 0)))


def _nonsingleton_size_sum(concept_class: ConceptClass) -> int:
    g = build_oig(concept_class)
    return sum(g.edges[k].size for k in g.nonsingleton_edges())


def realizable_samples(concept_class: ConceptClass, size: int) -> List[Sample]:
    """Every distinct realizable sample of the given length."""
    seen = set()
    for word in concept_class.hypotheses:
        for points in product(range(concept_class.domain_size), repeat=size):
            seen.add(tuple((x, word[x]) for x in points))
    return [Sample.from_pairs(pairs) for pairs in sorted(seen)]


def claim_hexagon_dimensions() -> Tuple[bool, str]:
    H = gen_hexagon()
    values = (is_pseudo_cube(H), ds_dimension(H).value, natarajan_dimension(H).value, exponential_dimension(H).value)
    return values == (True, 2, 1, 2), f"pseudo_cube={values[0]} ds={values[1]} natarajan={values[2]} exp={values[3]}"


def claim_torus() -> Tuple[bool, str]:
    torus = gen_torus_pseudocube()
    B = torus.concept_class
    labels = len({v for word in B.hypotheses for v in word})
    square = find_alternating_square(torus.complex)
    ok = (
        len(B) == 54
        and labels == 27
        and is_good(torus.complex).good
        and square is None
        and ds_dimension(B).value == 3
        and natarajan_dimension(B).value == 1
    )
    return ok, f"words={len(B)} labels={labels} lattice={torus.lattice} alternating_square={square}"


def claim_example_32() -> Tuple[bool, str]:
    shifted = shift_once(EXAMPLE_32, 0)
    before = (natarajan_dimension(EXAMPLE_32).value, ds_dimension(EXAMPLE_32).value)
    after = (natarajan_dimension(shifted).value, ds_dimension(shifted).value)
    ok = shifted == EXAMPLE_32_SHIFTED and before == (1, 1) and after == (2, 2)
    return ok, f"(natarajan, ds) {before} -> {after}"


def claim_example_33() -> Tuple[bool, str]:
    shifted = shift_once(EXAMPLE_33, 0)
    sums = (_nonsingleton_size_sum(EXAMPLE_33), _nonsingleton_size_sum(shifted))
    avd = (shifting_avg_degree(build_oig(EXAMPLE_33)), shifting_avg_degree(build_oig(shifted)))
    ok = sums == (6, 5) and avd == (Fraction(3, 4), Fraction(3, 4))
    return ok, f"edge sizes {sums[0]} -> {sums[1]}, avd' {avd[0]} -> {avd[1]}"


def claim_coset_s3() -> Tuple[bool, str]:
    F = FiniteGroup.from_cycles(3, [[[0, 1]], [[0, 1, 2]]])
    subs = [SubgroupSpec.from_cycles(3, [[[0, 1]]]), SubgroupSpec.from_cycles(3, [[[0, 2]]])]
    report = check_polish_conditions(F, subs)
    C = report.coset_complex.complex
    ok = (
        report.condition_intersections
        and report.condition_no_empty_square
        and report.goodness.good
        and C.num_vertices == 6
        and len(C.maximal_faces) == 6
        and report.natarajan == 1
    )
    return ok, f"vertices={C.num_vertices} faces={len(C.maximal_faces)} natarajan={report.natarajan}"


def claim_coset_z2z2() -> Tuple[bool, str]:
    F = FiniteGroup.from_cycles(4, [[[0, 1]], [[2, 3]]])
    subs = [SubgroupSpec.from_cycles(4, [[[0, 1]]]), SubgroupSpec.from_cycles(4, [[[2, 3]]])]
    report = check_polish_conditions(F, subs)
    ok = report.condition_intersections and not report.condition_no_empty_square
    return ok, f"empty_square={report.empty_square}"


def claim_tree() -> Tuple[bool, str]:
    T = gen_tree_class(3, 2)
    ds = ds_dimension(T).value
    return len(T) == 13 and ds == 1, f"words={len(T)} ds={ds}"


def claim_hexagon_leave_one_out() -> Tuple[bool, str]:
    H = gen_hexagon()
    predict = Predictor.one_inclusion(H)
    worst_bad = max(loo_bad_count(predict, S) for S in realizable_samples(H, 3))
    fewest_good = min(loo_list_good_count(H, 1, S, 2) for S in realizable_samples(H, 4))
    return worst_bad <= 2 and fewest_good >= 2, f"max bad of 3={worst_bad}, min list-good of 4={fewest_good}"


def claim_shifting_corpus() -> Tuple[bool, str]:
    config = load_corpus_config()["selftest"]
    generator = ClassCorpusGenerator(seed=config["seed"])
    violations = []
    for k in range(config["random_classes"]):
        H = generator.random_class().reinterned()
        trace = shift_to_fixed_point(H)
        current = H
        for step in trace.steps:
            nxt = shift_once(current, step.direction)
            subsets = (
                T for r in range(1, H.domain_size + 1) for T in combinations(range(H.domain_size), r)
            )
            if len(nxt) != len(current) or any(len(project(nxt, T)) > len(project(current, T)) for T in subsets):
                violations.append(k)
            if step.avd_prime_after < step.avd_prime_before or step.exponential_after > step.exponential_before:
                violations.append(k)
            current = nxt
        if not is_downward_closed(trace.final):
            violations.append(k)
    return not violations, f"classes={config['random_classes']} violations={sorted(set(violations))}"


def claim_compression() -> Tuple[bool, str]:
    config = load_corpus_config()["selftest"]
    H = gen_hexagon()
    generator = ClassCorpusGenerator(seed=config["seed"])
    for run in range(config["compression_runs"]):
        S = generator.random_realizable_sample(H, 20)
        result = compress_end_to_end(H, S, t=1, seed=config["seed"] + run)
        h = reconstruct(H, result.kept, result.params)
        if h.errors_on(S) or result.r_achieved > result.r_bound:
            return False, f"run {run}: r={result.r_achieved} bound={result.r_bound:.1f}"
    return True, f"runs={config['compression_runs']}"


CLAIMS: List[Tuple[str, Claim]] = [
    ("hexagon.dimensions", claim_hexagon_dimensions),
    ("torus.facts", claim_torus),
    ("example32.shift", claim_example_32),
    ("example33.edges", claim_example_33),
    ("coset.s3", claim_coset_s3),
    ("coset.z2z2", claim_coset_z2z2),
    ("tree.size", claim_tree),
    ("hexagon.leave_one_out", claim_hexagon_leave_one_out),
    ("shifting.corpus", claim_shifting_corpus),
    ("compression.hexagon", claim_compression),
]


def run_selftest(claims: List[Tuple[str, Claim]] = None) -> List[ClaimVerdictModel]:
    """Run every claim, print a verdict table and return the verdicts."""
    claims = CLAIMS if claims is None else claims
    verdicts = []
    print("mclab self-test")
    print("=" * 50)
    for name, check in claims:
        try:
            passed, detail = check()
        except Exception as e:
            logger.error(f"Claim {name} raised", exc_info=True)
            passed, detail = False, f"error: {e}"
        verdicts.append(ClaimVerdictModel(claim=name, passed=passed, detail=detail))
        print(f"{'+' if passed else '-'} {name}: {'PASSED' if passed else 'FAILED'} ({detail})")
    passed = sum(1 for v in verdicts if v.passed)
    print("=" * 50)
    print(f"Overall: {passed}/{len(verdicts)} claims passed")
    return verdicts
