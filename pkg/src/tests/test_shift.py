"""
Tests for the shifting operator and its invariants.
"""
import pytest
import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from hypothesis import given, settings, strategies as st

# Add project root to path
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from src.core.classes import ConceptClass, project
from src.core.corpus import ClassCorpusGenerator, load_corpus_config
from src.core.errors import IndexOutOfRangeError
from src.dims.dimensions import exponential_dimension
from src.oig.graph import avg_degree, build_oig, shifting_avg_degree
from src.shift.shifting import (
    downward_closure,
    is_downward_closed,
    label_sum,
    shift_once,
    shift_to_fixed_point,
)
from src.complex.generators import gen_boolean_cube, gen_hexagon

EXAMPLE_32 = ConceptClass(2, ((1, 1), (1, 0), (0, 1), (2, 0), (0, 2)))
EXAMPLE_33 = ConceptClass(2, ((2, 2), (1, 1), (1, 0), (2, 0)))


@st.composite
def small_classes(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    words = draw(st.lists(st.tuples(*[st.integers(0, 4)] * n), min_size=1, max_size=15))
    return ConceptClass(n, tuple(words)).reinterned()


def _index_subsets(n):
    return [T for r in range(1, n + 1) for T in combinations(range(n), r)]


class TestShiftOnce:
    """Single shifts on the worked examples."""

    def test_example_32(self):
        expected = ConceptClass(2, ((1, 1), (0, 0), (0, 1), (1, 0), (0, 2)))
        assert shift_once(EXAMPLE_32, 0) == expected

    def test_example_33(self):
        expected = ConceptClass(2, ((0, 2), (0, 1), (0, 0), (1, 0)))
        assert shift_once(EXAMPLE_33, 0) == expected

    def test_example_33_degrees(self):
        """Non-singleton edge sizes go 6 -> 5 while avd' stays 3/4."""
        before, after = build_oig(EXAMPLE_33), build_oig(shift_once(EXAMPLE_33, 0))
        assert avg_degree(before) * 4 == 6
        assert avg_degree(after) * 4 == 5
        assert shifting_avg_degree(before) == shifting_avg_degree(after) == Fraction(3, 4)

    def test_downward_closed_fixed(self):
        H = ConceptClass(2, ((0, 0), (0, 1), (1, 0)))
        assert shift_once(H, 0) == H
        assert shift_once(H, 1) == H

    def test_direction_out_of_range(self):
        with pytest.raises(IndexOutOfRangeError):
            shift_once(EXAMPLE_32, 2)

    def test_label_sum_decreases(self):
        shifted = shift_once(EXAMPLE_32, 0)
        assert label_sum(shifted) < label_sum(EXAMPLE_32)


class TestFixedPoint:
    """Round-robin shifting to a downward-closed class."""

    def test_example_32_fixed_point(self):
        trace = shift_to_fixed_point(EXAMPLE_32)
        assert trace.final == ConceptClass(2, ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1)))
        assert is_downward_closed(trace.final)

    def test_boolean_cube_unchanged(self):
        trace = shift_to_fixed_point(gen_boolean_cube(3))
        assert trace.final == gen_boolean_cube(3)
        assert not any(step.changed for step in trace.steps)

    def test_hexagon_fixed_point(self):
        trace = shift_to_fixed_point(gen_hexagon())
        assert len(trace.final) == 6
        assert is_downward_closed(trace.final)

    def test_custom_policy(self):
        trace = shift_to_fixed_point(EXAMPLE_32, policy=[1, 0])
        assert trace.steps[0].direction == 1
        assert is_downward_closed(trace.final)

    def test_partial_policy_still_reaches_fixed_point(self):
        """Directions missing from the policy are shifted too."""
        trace = shift_to_fixed_point(ConceptClass(2, ((1, 2),)), policy=[0])
        assert trace.final == ConceptClass(2, ((0, 0),))
        assert is_downward_closed(trace.final)
        assert all(shift_once(trace.final, i) == trace.final for i in range(2))
        assert [s.direction for s in trace.steps[:2]] == [0, 1]

    def test_trace_model(self):
        model = shift_to_fixed_point(EXAMPLE_33).to_model()
        assert model.downward_closed
        assert model.steps[0].avd_prime_before == "3/4"


class TestDownwardClosed:
    def test_examples(self):
        assert is_downward_closed(ConceptClass(2, ((0, 0), (0, 1), (1, 0))))
        assert not is_downward_closed(ConceptClass(2, ((1, 1),)))

    def test_closure(self):
        closure = downward_closure([(1, 1)])
        assert closure == ConceptClass(2, ((0, 0), (0, 1), (1, 0), (1, 1)))
        assert is_downward_closed(closure)


class TestShiftInvariants:
    """Invariants of a single shift, on random classes."""

    @settings(max_examples=80, deadline=None)
    @given(small_classes(), st.data())
    def test_single_shift_invariants(self, H, data):
        i = data.draw(st.integers(0, H.domain_size - 1))
        shifted = shift_once(H, i)
        assert len(shifted) == len(H)
        for T in _index_subsets(H.domain_size):
            assert len(project(shifted, T)) <= len(project(H, T))
        assert exponential_dimension(shifted).value <= exponential_dimension(H).value
        assert shifting_avg_degree(build_oig(shifted)) >= shifting_avg_degree(build_oig(H))
        if shifted != H:
            assert label_sum(shifted) < label_sum(H)

    @settings(max_examples=40, deadline=None)
    @given(small_classes())
    def test_downward_closed_degree_bound(self, H):
        """Downward-closed classes have avd at most 2 d_E."""
        final = shift_to_fixed_point(H).final
        assert avg_degree(build_oig(final)) <= 2 * exponential_dimension(final).value

    @pytest.mark.slow
    def test_random_class_corpus(self):
        """Every step of every trace keeps the shifting invariants."""
        config = load_corpus_config()["random_classes"]
        generator = ClassCorpusGenerator(seed=config["seed"])
        for _ in range(config["count"]):
            H = generator.random_class(
                config["max_domain_size"], config["max_alphabet"], config["max_words"]
            ).reinterned()
            trace = shift_to_fixed_point(H)
            current = H
            for step in trace.steps:
                nxt = shift_once(current, step.direction)
                assert len(nxt) == len(current)
                for T in _index_subsets(H.domain_size):
                    assert len(project(nxt, T)) <= len(project(current, T))
                assert step.avd_prime_after >= step.avd_prime_before
                assert step.exponential_after <= step.exponential_before
                current = nxt
            assert current == trace.final
            assert is_downward_closed(trace.final)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
