from math import comb

import pytest
from hypothesis import given, settings

from grapeqi.errors import PreconditionError
from grapeqi.models import GrapeBunch, QiClassDescriptor, Stem
from grapeqi.services import QiDecisionService, ReductionService, free_rank_formula, star_b4_rank, tree_b2_rank
from grapeqi.services.generators import (
    bouquet_bunch, dynkin_bunch, dynkin_stem, path_bunch, star_bunch, star_stem,
)
from tests.strategies import large_bunches, stems


@pytest.fixture
def qi():
    return QiDecisionService()


class TestRankFormulas:

    @pytest.mark.parametrize('n, l, expected', [
        (3, 0, 1),
        (0, 1, 1),
        (1, 0, 0),
        (2, 0, 0),
        (4, 0, 3),
        (0, 2, 4),
        (3, 1, 7),
    ])
    def test_free_rank_formula(self, n, l, expected):
        assert free_rank_formula(n, l) == expected

    def test_free_rank_formula_domain(self):
        with pytest.raises(PreconditionError) as exc:
            free_rank_formula(0, 0)
        assert exc.value.code == 'invalid-argument'

    @pytest.mark.parametrize('n', range(1, 51))
    def test_grapeless_star_rank(self, n):
        assert free_rank_formula(n, 0) == comb(n - 1, 2)

    def test_tree_b2_rank(self):
        assert tree_b2_rank(star_stem(4)) == 3
        assert tree_b2_rank(dynkin_stem(5)) == 2

    def test_star_b4_rank(self):
        assert star_b4_rank(3) == 6
        with pytest.raises(PreconditionError):
            star_b4_rank(2)


class TestSmallBunches:

    def test_grapeless_star(self, qi):
        g = GrapeBunch(star_stem(3))
        assert qi.small_rank(g) == 1
        assert qi.is_cyclic_b2(g)

    def test_bouquet(self, qi):
        assert qi.small_rank(bouquet_bunch(2)) == 4
        assert qi.is_free_b2(bouquet_bunch(2))

    def test_star_with_center_grape(self, qi):
        assert qi.small_rank(star_bunch(3, 1, 0)) == 7

    def test_large_has_no_small_rank(self, qi, edge_bunch):
        with pytest.raises(PreconditionError) as exc:
            qi.small_rank(edge_bunch)
        assert exc.value.code == 'not-small'
        assert not qi.is_free_b2(edge_bunch)

    def test_small_descriptor_caps_at_two(self, qi):
        assert qi.descriptor(bouquet_bunch(2)) == QiClassDescriptor.small(2)
        assert str(qi.descriptor(GrapeBunch(star_stem(3)))) == 'Small(1)'


class TestDecideQi:

    def test_picking_pair_differs(self, qi, picking_pair):
        verdict, d1, d2 = qi.decide_qi(*picking_pair)
        assert not verdict
        assert not d1.is_small and not d2.is_small

    def test_identical(self, qi, twigs_example):
        verdict, _, _ = qi.decide_qi(twigs_example, twigs_example)
        assert verdict

    def test_small_versus_large(self, qi, edge_bunch):
        verdict, d1, d2 = qi.decide_qi(bouquet_bunch(2), edge_bunch)
        assert not verdict
        assert d1.is_small and not d2.is_small

    def test_stars_reduce_to_the_same_path(self, qi):
        verdict, _, _ = qi.decide_qi(star_bunch(4, 0, 1), star_bunch(6, 1, 1))
        assert verdict

    @settings(max_examples=25, deadline=None)
    @given(large_bunches(max_vertices=6, max_loops=2))
    def test_legal_steps_preserve_the_class(self, g):
        qi = QiDecisionService()
        for step, after in ReductionService().legal_steps(g):
            verdict, _, _ = qi.decide_qi(g, after)
            assert verdict, step.describe()


class TestTrees:

    def test_grow_four_star(self, qi):
        g = qi.grow_from_tree(star_stem(4))
        assert g.loop('c') == 3
        assert g.loops_sum() == 3

    def test_grow_rejects_paths(self, qi, path_tree):
        with pytest.raises(PreconditionError) as exc:
            qi.grow_from_tree(path_tree)
        assert exc.value.code == 'is-path-tree'

    def test_same_tree(self, qi):
        assert qi.decide_qi_tree4(dynkin_stem(6), dynkin_stem(6))

    def test_paths_are_trivial(self, qi, path_tree):
        assert qi.tree4_descriptor(path_tree) == QiClassDescriptor.small(0)
        assert qi.decide_qi_tree4(path_tree, Stem(['a', 'b'], [('a', 'b')]))

    def test_star_versus_dynkin(self, qi):
        assert not qi.decide_qi_tree4(star_stem(3), dynkin_stem(5))

    def test_three_and_four_stars(self, qi):
        assert qi.decide_qi_tree4(star_stem(3), star_stem(4))

    @settings(max_examples=30, deadline=None)
    @given(stems(min_vertices=4, max_vertices=9))
    def test_tree4_is_reflexive(self, stem):
        assert QiDecisionService().decide_qi_tree4(stem, stem)


class TestRaag:

    def test_path_stem_is_raag(self, qi, path4_ones):
        verdict = qi.raag_qi_check(path4_ones)
        assert verdict.value == 'qi-to-raag'
        assert verdict.witness == {'kind': 'path-stem', 'path': ['v0', 'v1', 'v2', 'v3', 'v4']}

    def test_dynkin_is_not_raag(self, qi, dynkin5):
        verdict = qi.raag_qi_check(dynkin5)
        assert verdict.value == 'not-qi-to-raag'
        assert verdict.witness['n'] == 5
        assert verdict.witness['branch_vertices'] == ['x', 'y']

    def test_longer_dynkin(self, qi):
        witness = qi.find_dynkin_substem(dynkin_bunch(7))
        assert witness['n'] == 7
        assert len(witness['substem']) == 8

    @pytest.mark.parametrize('n', [5, 6, 7])
    def test_dynkin_does_not_reduce_to_a_path(self, qi, n):
        minimal, _ = ReductionService().quasi_minimal(dynkin_bunch(n))
        assert not minimal.stem.is_path()

    @settings(max_examples=40, deadline=None)
    @given(large_bunches(max_vertices=8, max_loops=2))
    def test_criteria_are_exclusive(self, g):
        qi = QiDecisionService()
        minimal, _ = ReductionService().quasi_minimal(g)
        assert not (minimal.stem.is_path() and qi.find_dynkin_substem(g) is not None)

    def test_star_is_unknown(self, qi):
        g = star_bunch(3, 1, [2, 1, 1])
        assert qi.raag_qi_check(g).value == 'unknown'

    def test_presentation_graph(self, qi):
        graph = qi.raag_presentation_for_path_stem(path_bunch(2))
        assert graph.vertices == ('a0', 'a1', 'b1', 'b2')
        assert graph.edges == (('a0', 'b1'), ('a0', 'b2'), ('a1', 'b2'))

    def test_presentation_needs_unit_loops(self, qi):
        with pytest.raises(PreconditionError) as exc:
            qi.raag_presentation_for_path_stem(path_bunch(2, loops=2))
        assert exc.value.code == 'nonunit-loops'
