"""
Tests for colorful complexes, the pseudo-cube dictionary, coset complexes
and the named constructions.
"""
import pytest
import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from src.core.classes import ConceptClass
from src.core.corpus import ClassCorpusGenerator, load_corpus_config
from src.core.errors import BudgetExceededError, ParseError, PreconditionError
from src.dims.dimensions import ds_dimension, is_pseudo_cube, natarajan_dimension
from src.complex.groups import FiniteGroup, SubgroupSpec, check_polish_conditions, load_group
from src.complex.simplicial import (
    SimplicialComplex,
    alternating_squares,
    bipartite_to_pseudocube,
    complex_report,
    complex_to_pseudocube,
    complexes_isomorphic,
    empty_squares,
    find_alternating_square,
    find_empty_square,
    is_good,
    load_bipartite,
    load_complex,
    pseudocube_to_complex,
)
from src.complex.generators import (
    gen_boolean_cube,
    gen_cycle_complex,
    gen_hexagon,
    gen_torus_pseudocube,
    gen_tree_class,
    star_union,
)

DATA_DIR = project_root / "data"


def _complex(n, faces, coloring=None):
    return SimplicialComplex(n, tuple(frozenset(f) for f in faces), coloring)


class TestGoodComplex:
    """Purity, coloring and replacement checks."""

    def test_six_cycle_is_good(self):
        C = load_complex(DATA_DIR / "six_cycle_complex.json")
        report = is_good(C)
        assert report.good
        assert C.dimension == 1

    def test_torus_fixture_is_good(self):
        C = load_complex(DATA_DIR / "torus_complex.json")
        assert C.num_vertices == 27
        assert len(C.maximal_faces) == 54
        assert is_good(C).good

    def test_not_pure(self):
        """A triangle with a pendant edge fails purity first."""
        report = is_good(_complex(4, [{0, 1, 2}, {2, 3}]))
        assert not report.good
        assert report.failed_property == "pure"
        assert report.witness == [2, 3]

    def test_bad_coloring(self):
        report = is_good(_complex(4, [{0, 1}, {1, 2}, {2, 3}, {3, 0}], (0, 0, 1, 1)))
        assert report.failed_property == "coloring"

    def test_odd_cycle_has_no_coloring(self):
        report = is_good(_complex(3, [{0, 1}, {1, 2}, {0, 2}]))
        assert report.failed_property == "coloring"

    def test_replacement_fails_on_path(self):
        report = is_good(_complex(3, [{0, 1}, {1, 2}]))
        assert report.failed_property == "replacement"

    def test_found_coloring_is_proper(self):
        C = _complex(6, [{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}])
        report = is_good(C)
        assert report.good
        assert all(report.coloring[a] != report.coloring[b] for a, b in (sorted(f) for f in C.maximal_faces))

    def test_vertex_out_of_range(self):
        with pytest.raises(ParseError):
            _complex(2, [{0, 2}])

    def test_non_maximal_faces_dropped(self):
        C = _complex(3, [{0, 1, 2}, {0, 1}])
        assert C.maximal_faces == (frozenset({0, 1, 2}),)


class TestDictionary:
    """Good complexes and pseudo-cubes convert into each other."""

    def test_six_cycle_to_hexagon(self):
        """Shifting each label by one turns the 6-cycle class into the hexagon."""
        B = complex_to_pseudocube(gen_cycle_complex(6))
        assert ConceptClass(2, tuple((a + 1, b + 1) for a, b in B)) == gen_hexagon()

    def test_hexagon_to_six_cycle(self):
        C = pseudocube_to_complex(gen_hexagon())
        assert complexes_isomorphic(C, gen_cycle_complex(6))
        assert not complexes_isomorphic(C, gen_cycle_complex(8))

    def test_boolean_square_is_four_cycle(self):
        C = pseudocube_to_complex(gen_boolean_cube(2))
        assert complexes_isomorphic(C, gen_cycle_complex(4))

    def test_non_pseudo_cube_rejected(self):
        with pytest.raises(PreconditionError):
            pseudocube_to_complex(ConceptClass(2, ((0, 0), (1, 1))))

    def test_zero_dimensional_pseudo_cube_rejected(self):
        """The class holding only the empty word has no faces to build."""
        point = ConceptClass(0, ((),))
        assert is_pseudo_cube(point)
        with pytest.raises(PreconditionError):
            pseudocube_to_complex(point)

    def test_bad_complex_rejected(self):
        with pytest.raises(PreconditionError):
            complex_to_pseudocube(_complex(3, [{0, 1}, {1, 2}]))

    def test_round_trip_small(self):
        generator = ClassCorpusGenerator(seed=8)
        for _ in range(10):
            B, _ = generator.random_pseudo_cube(max_dimension=3, max_words=30)
            C = pseudocube_to_complex(B)
            B2 = complex_to_pseudocube(C)
            assert len(B2) == len(B)
            assert complexes_isomorphic(pseudocube_to_complex(B2), C)

    @pytest.mark.slow
    def test_round_trip_corpus(self):
        config = load_corpus_config()["good_complexes"]
        generator = ClassCorpusGenerator(seed=config["seed"])
        for _ in range(config["count"]):
            B, _ = generator.random_pseudo_cube()
            C = pseudocube_to_complex(B)
            B2 = complex_to_pseudocube(C)
            assert is_pseudo_cube(B2)
            assert complexes_isomorphic(pseudocube_to_complex(B2), C)


class TestSquares:
    """Alternating and empty 4-cycles in the 1-skeleton."""

    def test_four_cycle(self):
        C = gen_cycle_complex(4)
        assert find_alternating_square(C) is not None
        assert find_empty_square(C) is not None
        assert len(alternating_squares(C)) == 1
        assert len(empty_squares(C)) == 1

    def test_six_cycle_has_none(self):
        C = gen_cycle_complex(6)
        assert find_alternating_square(C) is None
        assert find_empty_square(C) is None

    def test_torus_has_no_alternating_square(self):
        assert find_alternating_square(load_complex(DATA_DIR / "torus_complex.json")) is None

    def test_coloring_required(self):
        with pytest.raises(PreconditionError):
            find_alternating_square(_complex(4, [{0, 1}, {1, 2}, {2, 3}, {3, 0}]))

    def test_complex_report(self):
        report = complex_report(gen_cycle_complex(4))
        assert report.good
        assert report.alternating_squares == 1
        assert report.empty_squares == 1

    def test_alternating_square_iff_natarajan_two(self):
        """A pseudo-cube's complex has an alternating square exactly when d_N >= 2."""
        generator = ClassCorpusGenerator(seed=21)
        classes = [gen_hexagon(), gen_boolean_cube(3)]
        classes += [generator.random_pseudo_cube(max_dimension=3, max_words=30)[0] for _ in range(15)]
        for B in classes:
            C = pseudocube_to_complex(B)
            assert (find_alternating_square(C) is not None) == (natarajan_dimension(B).value >= 2)


class TestBipartite:
    def test_six_cycle(self):
        result = bipartite_to_pseudocube(load_bipartite(DATA_DIR / "six_cycle_bipartite.json"))
        assert result.ok
        assert result.concept_class == gen_hexagon()

    def test_path_has_leaf(self):
        result = bipartite_to_pseudocube(load_bipartite(DATA_DIR / "path_bipartite.json"))
        assert not result.ok
        assert result.leaf == ("left", 0)


class TestCosetComplex:
    """Group conditions and the coset complex."""

    def test_s3_pair(self):
        F, subs = load_group(DATA_DIR / "s3_pair.json")
        report = check_polish_conditions(F, subs)
        assert report.group_order == 6
        assert report.condition_intersections
        assert report.condition_no_empty_square
        assert report.goodness.good
        C = report.coset_complex.complex
        assert C.num_vertices == 6 and len(C.maximal_faces) == 6
        assert complexes_isomorphic(C, gen_cycle_complex(6))
        assert report.natarajan == 1

    def test_z2z2_pair(self):
        """The Klein four-group with two reflections gives a 4-cycle: an empty square."""
        F, subs = load_group(DATA_DIR / "z2z2_pair.json")
        report = check_polish_conditions(F, subs)
        assert report.condition_intersections
        assert not report.condition_no_empty_square
        assert report.empty_square is not None
        assert report.natarajan == 2

    def test_single_proper_subgroup(self):
        F = FiniteGroup.from_cycles(3, [[[0, 1]], [[0, 1, 2]]])
        report = check_polish_conditions(F, [SubgroupSpec.from_cycles(3, [[[0, 1]]])])
        assert report.condition_intersections
        assert report.coset_complex.complex.num_vertices == 3
        assert report.natarajan == 1

    def test_whole_group_fails_intersection(self):
        F = FiniteGroup.from_cycles(3, [[[0, 1]], [[0, 1, 2]]])
        report = check_polish_conditions(F, [SubgroupSpec.from_cycles(3, [[[0, 1]], [[0, 1, 2]]])])
        assert report.failing_index == 0
        assert not report.goodness.good
        assert report.pseudo_cube is None

    def test_generator_outside_group(self):
        F = FiniteGroup.from_cycles(4, [[[0, 1]]])
        with pytest.raises(PreconditionError):
            check_polish_conditions(F, [SubgroupSpec.from_cycles(4, [[[2, 3]]])])

    def test_order_budget(self):
        F = FiniteGroup.from_cycles(3, [[[0, 1]], [[0, 1, 2]]])
        F.max_order = 2
        with pytest.raises(BudgetExceededError):
            check_polish_conditions(F, [SubgroupSpec.from_cycles(3, [[[0, 1]]])])

    def test_invalid_cycle(self):
        with pytest.raises(ParseError):
            FiniteGroup.from_cycles(3, [[[0, 3]]])


class TestGenerators:
    """Named constructions and their dimensions."""

    def test_torus(self):
        torus = gen_torus_pseudocube()
        B = torus.concept_class
        assert len(B) == 54
        assert len({v for word in B for v in word}) == 27
        assert ds_dimension(B).value == 3
        assert natarajan_dimension(B).value == 1
        assert find_alternating_square(torus.complex) is None

    def test_tree(self):
        T = gen_tree_class(3, 2)
        assert len(T) == 13
        assert ds_dimension(T).value == 1

    def test_smallest_tree(self):
        assert gen_tree_class(1, 1).hypotheses == ((0,), (1,))

    def test_tree_budget(self):
        with pytest.raises(BudgetExceededError):
            gen_tree_class(4, 4, max_nodes=100)

    def test_star_union(self):
        U = star_union([gen_boolean_cube(1), gen_boolean_cube(1)])
        assert U.hypotheses == ((0, 3), (0, 4), (1, 0), (2, 0))
        assert natarajan_dimension(U).value == 1

    def test_star_union_of_hexagons(self):
        U = star_union([gen_hexagon(), gen_hexagon()])
        assert U.domain_size == 4
        assert len(U) == 12
        assert natarajan_dimension(U).value == 1

    def test_cycle_length(self):
        with pytest.raises(PreconditionError):
            gen_cycle_complex(5)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
