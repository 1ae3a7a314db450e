"""
Tests for the one-inclusion, menu and list learners and their evaluation.
"""
import math
import pytest
import sys
from fractions import Fraction
from collections import Counter
from itertools import combinations_with_replacement, product
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from src.core.classes import ConceptClass, FiniteDistribution, LabeledExample, Menu, Sample, project
from src.core.corpus import ClassCorpusGenerator, load_corpus_config
from src.core.errors import EmptyClassError, NotRealizableError, PreconditionError
from src.dims.dimensions import ds_dimension, natarajan_dimension
from src.oig.orientation import oriented_graph
from src.learn.predictors import (
    Predictor,
    canonical_points,
    list_learn,
    list_predict,
    menu_oig_predict,
    oig_predict,
)
from src.learn.evaluation import (
    agnostic_report,
    error_bound,
    exact_expected_error,
    learning_curve,
    loo_bad_count,
    loo_list_good_count,
    mc_error,
    mc_standard_error,
)
from src.complex.generators import gen_hexagon


def realizable_samples(concept_class, size):
    """Every distinct realizable sample of the given length."""
    seen = set()
    for word in concept_class.hypotheses:
        for points in product(range(concept_class.domain_size), repeat=size):
            seen.add(tuple((x, word[x]) for x in points))
    return [Sample.from_pairs(pairs) for pairs in sorted(seen)]


def realizable_multisets(concept_class, size):
    """Realizable samples of the given length, one per multiset of examples."""
    seen = set()
    for word in concept_class.hypotheses:
        for points in combinations_with_replacement(range(concept_class.domain_size), size):
            seen.add(tuple((x, word[x]) for x in points))
    return [Sample.from_pairs(pairs) for pairs in sorted(seen)]


def filtered_projection_degree(concept_class, mu, S):
    """Optimal max out-degree of the menu-filtered projection the leave-one-out rounds share."""
    counts = Counter(S.points())
    points = tuple(sorted(counts))
    frozen = frozenset(pos for pos, p in enumerate(points) if counts[p] >= 2)
    allowed = tuple(
        word for word in project(concept_class, points).hypotheses
        if all(word[pos] in mu.options(p) for pos, p in enumerate(points))
    )
    return oriented_graph(ConceptClass(len(points), allowed), frozen)[2]


@pytest.fixture
def hexagon():
    return gen_hexagon()


@pytest.fixture
def hexagon_distribution():
    return FiniteDistribution.uniform([LabeledExample(0, 1), LabeledExample(1, 2)])


class TestOneInclusionLearner:
    """Point predictions from the optimal orientation."""

    def test_consistent_extension(self, hexagon):
        """After seeing label 1 at point 0, only words 12 and 16 remain."""
        assert oig_predict(hexagon, Sample.from_pairs([(0, 1)]), 1) in {2, 6}

    def test_empty_sample(self, hexagon):
        """Without examples the prediction is still a fixed label of the first coordinate."""
        label = oig_predict(hexagon, Sample(), 0)
        assert label in {1, 3, 5}
        assert oig_predict(hexagon, Sample(), 0) == label

    def test_singleton_class(self):
        """A one-word class is predicted exactly."""
        one = ConceptClass(3, ((4, 5, 6),))
        S = Sample.from_pairs([(0, 4), (2, 6)])
        assert [oig_predict(one, S, x) for x in range(3)] == [4, 5, 6]

    def test_known_point(self, hexagon):
        """A point already in the sample keeps its label."""
        assert oig_predict(hexagon, Sample.from_pairs([(0, 3), (1, 4)]), 1) == 4

    def test_not_realizable(self, hexagon):
        """Samples outside the class are rejected."""
        with pytest.raises(NotRealizableError):
            oig_predict(hexagon, Sample.from_pairs([(0, 1), (1, 4)]), 0)

    def test_contradictory_labels(self, hexagon):
        """Two labels for one point are rejected."""
        with pytest.raises(NotRealizableError):
            oig_predict(hexagon, Sample.from_pairs([(0, 1), (0, 3)]), 1)

    def test_order_invariance(self, hexagon):
        """Predictions depend on the multiset of examples only."""
        a = Sample.from_pairs([(0, 3), (0, 3)])
        assert oig_predict(hexagon, a, 1) == oig_predict(hexagon, a.subsample([1, 0]), 1)

    def test_leave_one_out_at_most_ds_dimension(self):
        """On generated classes no sample of size d_DS + 1 has more than d_DS bad indices."""
        generator = ClassCorpusGenerator(seed=3)
        for _ in range(15):
            H = generator.random_class(max_domain_size=3, max_alphabet=4, max_words=20)
            d = ds_dimension(H).value
            predict = Predictor.one_inclusion(H)
            for S in realizable_multisets(H, d + 1):
                assert loo_bad_count(predict, S) <= d

    def test_canonical_points(self):
        """Distinct points come back sorted; repeated ones are frozen."""
        points, frozen = canonical_points(Sample.from_pairs([(2, 0), (0, 1), (2, 0)]), 1)
        assert points == (0, 1, 2)
        assert frozen == frozenset({2})


class TestMenuLearner:
    """Menu-restricted predictions."""

    def test_full_menu_matches_plain_learner(self, hexagon):
        mu = Menu.from_sets({0: {1, 3, 5}, 1: {2, 4, 6}})
        for S in realizable_samples(hexagon, 1):
            for x in range(2):
                assert menu_oig_predict(hexagon, mu, S, x) == oig_predict(hexagon, S, x)

    def test_restrictive_menu(self, hexagon):
        """With labels {1, 2} everywhere only word 12 survives."""
        mu = Menu.from_sets({0: {1, 2}, 1: {1, 2}})
        assert menu_oig_predict(hexagon, mu, Sample(), 0) == 1
        assert menu_oig_predict(hexagon, mu, Sample(), 1) == 2
        assert menu_oig_predict(hexagon, mu, Sample.from_pairs([(0, 1)]), 1) == 2

    def test_menu_not_realizable(self, hexagon):
        """A sample label outside the menu is rejected."""
        mu = Menu.from_sets({0: {1}, 1: {2}})
        with pytest.raises(NotRealizableError):
            menu_oig_predict(hexagon, mu, Sample.from_pairs([(0, 3)]), 1)

    def test_empty_filtered_class(self, hexagon):
        """A menu that excludes every projected word leaves nothing to predict."""
        mu = Menu.from_sets({0: {2}, 1: {1}})
        with pytest.raises(EmptyClassError):
            menu_oig_predict(hexagon, mu, Sample(), 0)

    def test_leave_one_out_bound_on_triples(self):
        """Per-sample bad fraction is at most 20 d_N log2(p) / (n + 1)."""
        generator = ClassCorpusGenerator(seed=2024)
        for _ in range(40):
            H, mu, S = generator.random_menu_triple()
            bad = loo_bad_count(Predictor.menu_one_inclusion(H, mu), S)
            d_n = natarajan_dimension(H).value
            assert bad <= 20 * d_n * math.log2(mu.p)

    def test_leave_one_out_within_filtered_orientation(self):
        """Bad indices never exceed the optimal out-degree of the menu-filtered projection."""
        generator = ClassCorpusGenerator(seed=2024)
        for _ in range(40):
            H, mu, S = generator.random_menu_triple()
            bad = loo_bad_count(Predictor.menu_one_inclusion(H, mu), S)
            assert bad <= filtered_projection_degree(H, mu, S)

    @pytest.mark.slow
    def test_leave_one_out_bound_corpus(self):
        config = load_corpus_config()["menu_triples"]
        generator = ClassCorpusGenerator(seed=config["seed"])
        for _ in range(config["count"]):
            H, mu, S = generator.random_menu_triple(
                config["max_domain_size"], config["max_alphabet"], config["max_sample_size"]
            )
            bad = loo_bad_count(Predictor.menu_one_inclusion(H, mu), S)
            d_n = natarajan_dimension(H).value
            assert bad <= 20 * d_n * math.log2(mu.p)


class TestListLearner:
    """List learner menus and leave-one-out coverage."""

    def test_list_size(self, hexagon):
        """Lists hold at most C(d + t, t) labels and cover the training sample."""
        for S in realizable_samples(hexagon, 3)[:20]:
            mu = list_learn(hexagon, 1, S, d=2)
            assert mu.p == 3
            assert mu.list_size() <= 3
            for e in S:
                assert e.y in mu.options(e.x)

    def test_t_zero_is_point_learner(self, hexagon):
        """With t = 0 the list is the one-inclusion prediction."""
        S = Sample.from_pairs([(0, 3), (1, 4)])
        mu = list_learn(hexagon, 0, S, d=2)
        assert mu.p == 1
        for x in range(2):
            assert mu.options(x) == frozenset({oig_predict(hexagon, S, x)})

    def test_wrong_sample_size(self, hexagon):
        """The list learner needs exactly d + t examples."""
        with pytest.raises(PreconditionError):
            list_predict(hexagon, 1, Sample.from_pairs([(0, 1)]), 1, d=2)

    def test_not_realizable(self, hexagon):
        """Lists need a realizable sample."""
        with pytest.raises(NotRealizableError):
            list_learn(hexagon, 1, Sample.from_pairs([(0, 1), (1, 4), (0, 1)]), d=2)

    def test_hexagon_list_coverage(self, hexagon):
        """Every realizable sample of size 4 has at least 2 list-covered indices."""
        for S in realizable_samples(hexagon, 4):
            assert loo_list_good_count(hexagon, 1, S, 2) >= 2

    def test_hexagon_point_coverage(self, hexagon):
        """Every realizable sample of size 3 has at least one correctly predicted index."""
        predict = Predictor.one_inclusion(hexagon)
        for S in realizable_samples(hexagon, 3):
            assert loo_bad_count(predict, S) <= 2

    def test_list_predictor_options(self, hexagon):
        """The list kind offers the learned list and counts uncovered indices as bad."""
        predict = Predictor.list_learner(hexagon, 1, d=2)
        S = Sample.from_pairs([(0, 3), (1, 4), (0, 3)])
        assert predict.kind == "list"
        assert predict.options(S, 1) == list_predict(hexagon, 1, S, 1, d=2)
        Sprime = Sample.from_pairs([(0, 3), (1, 4), (0, 3), (1, 4)])
        missed = sum(
            e.y not in list_predict(hexagon, 1, Sprime.without(i), e.x, d=2) for i, e in enumerate(Sprime)
        )
        assert loo_bad_count(predict, Sprime) == missed <= 2

    def test_list_predictor_has_no_point_label(self, hexagon):
        """The list kind has no single-label prediction."""
        with pytest.raises(PreconditionError):
            Predictor.list_learner(hexagon, 1, d=2)(Sample.from_pairs([(0, 3), (1, 4), (0, 3)]), 1)

    def test_list_predictor_negative_t(self, hexagon):
        """Negative t is rejected when building the predictor."""
        with pytest.raises(PreconditionError):
            Predictor.list_learner(hexagon, -1, d=2)

    def test_list_expected_error(self, hexagon, hexagon_distribution):
        """With n = d + t draws the list misses with probability at most d/(n + 1)."""
        predict = Predictor.list_learner(hexagon, 1, d=2)
        error = exact_expected_error(predict, hexagon_distribution, 3)
        bound, name = error_bound(predict, 3, d_ds=2, d_n=1)
        assert error <= Fraction(2, 4)
        assert bound == pytest.approx(0.5)
        assert name.startswith("list")

    def test_singleton_loo(self):
        """A one-word class makes no leave-one-out mistakes."""
        one = ConceptClass(2, ((0, 1),))
        assert loo_bad_count(Predictor.one_inclusion(one), Sample.from_pairs([(0, 0), (1, 1)])) == 0

    def test_loo_threads(self, hexagon):
        """Threaded counting matches the sequential count."""
        predict = Predictor.one_inclusion(hexagon)
        S = Sample.from_pairs([(0, 3), (1, 4), (1, 4)])
        assert loo_bad_count(predict, S, threads=3) == loo_bad_count(predict, S)


class TestErrorEstimation:
    """Exact and Monte-Carlo expected error."""

    def test_singleton_error_zero(self):
        """A one-word class never errs."""
        one = ConceptClass(2, ((0, 1),))
        D = FiniteDistribution.uniform([LabeledExample(0, 0), LabeledExample(1, 1)])
        assert exact_expected_error(Predictor.one_inclusion(one), D, 2) == 0

    def test_hexagon_error_bound(self, hexagon, hexagon_distribution):
        """Exact error is a fraction within d_DS over n + 1."""
        error = exact_expected_error(Predictor.one_inclusion(hexagon), hexagon_distribution, 2)
        assert isinstance(error, Fraction)
        assert error <= Fraction(2, 3)

    def test_exact_error_within_orientation_bound(self):
        """Error with n draws is at most k*/(n + 1), k* taken over the (n + 1)-point projections."""
        generator = ClassCorpusGenerator(seed=7)
        n = 2
        for _ in range(20):
            H = generator.random_class(max_domain_size=3, max_alphabet=4, max_words=20)
            D = generator.random_distribution(H, support=3)
            atoms = [e for e, _ in D.positive_atoms()]
            k_star = 0
            for draw in combinations_with_replacement(range(len(atoms)), n + 1):
                points, frozen = canonical_points(Sample(tuple(atoms[k] for k in draw[:-1])), atoms[draw[-1]].x)
                k_star = max(k_star, oriented_graph(project(H, points), frozen)[2])
            error = exact_expected_error(Predictor.one_inclusion(H), D, n)
            assert error <= Fraction(k_star, n + 1)

    def test_exact_and_mc_agree(self, hexagon, hexagon_distribution):
        predict = Predictor.one_inclusion(hexagon)
        exact = float(exact_expected_error(predict, hexagon_distribution, 2))
        trials = 100000
        estimate = mc_error(predict, hexagon_distribution, 2, trials, seed=9)
        se = max(mc_standard_error(exact, trials), 1e-9)
        assert abs(estimate - exact) <= 3 * se + 1e-12

    def test_mc_is_seeded(self, hexagon, hexagon_distribution):
        """Equal seeds give equal estimates."""
        predict = Predictor.one_inclusion(hexagon)
        a = mc_error(predict, hexagon_distribution, 3, 500, seed=4)
        b = mc_error(predict, hexagon_distribution, 3, 500, seed=4)
        assert a == b

    def test_non_realizable_distribution(self, hexagon):
        """Distributions outside the class are rejected."""
        D = FiniteDistribution.uniform([LabeledExample(0, 1), LabeledExample(1, 4)])
        with pytest.raises(NotRealizableError):
            exact_expected_error(Predictor.one_inclusion(hexagon), D, 1)

    def test_learning_curve(self, hexagon, hexagon_distribution):
        """Each curve row stays within its bound."""
        rows = learning_curve(Predictor.one_inclusion(hexagon), hexagon_distribution, [1, 2], d_ds=2, d_n=1)
        assert [r.n for r in rows] == [1, 2]
        for r in rows:
            assert r.error <= r.bound
            assert r.bound == 2 / (r.n + 1)

    def test_agnostic_report(self, hexagon):
        """Non-realizable distributions report their best achievable risk."""
        D = FiniteDistribution.uniform([LabeledExample(0, 1), LabeledExample(1, 4)])
        report = agnostic_report(hexagon, D)
        assert report == {"agnostic_risk": "1/2", "realizable": False}


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
