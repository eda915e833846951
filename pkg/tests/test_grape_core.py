import pytest
from hypothesis import given, settings

from grapeqi.errors import InvalidBunchError, PreconditionError
from grapeqi.models import GrapeBunch, PathSubstem, Stem, Twig
from tests.strategies import bunches


class TestStem:

    def test_cycle_rejected(self):
        with pytest.raises(InvalidBunchError) as exc:
            Stem(['a', 'b', 'c'], [('a', 'b'), ('b', 'c'), ('c', 'a')])
        assert exc.value.code == 'not-a-tree'

    def test_disconnected_rejected(self):
        with pytest.raises(InvalidBunchError) as exc:
            Stem(['a', 'b', 'c'], [('a', 'b')])
        assert exc.value.code == 'disconnected'

    @pytest.mark.parametrize('edges, code', [
        ([('a', 'a')], 'self-loop'),
        ([('a', 'b'), ('b', 'a')], 'duplicate-edge'),
    ])
    def test_bad_edges(self, edges, code):
        with pytest.raises(InvalidBunchError) as exc:
            Stem(['a', 'b'], edges)
        assert exc.value.code == code

    def test_empty_stem(self):
        with pytest.raises(InvalidBunchError) as exc:
            Stem()
        assert exc.value.code == 'empty-stem'

    def test_queries(self, star3_tree):
        assert star3_tree.leaves() == ['x1', 'x2', 'x3']
        assert star3_tree.valence('c') == 3
        assert not star3_tree.is_path()
        assert star3_tree.diameter() == 2
        with pytest.raises(InvalidBunchError) as exc:
            star3_tree.valence('nope')
        assert exc.value.code == 'unknown-vertex'


class TestGrapeBunch:

    def test_path_graph_rejected(self):
        with pytest.raises(InvalidBunchError) as exc:
            GrapeBunch.from_edges([('a', 'b')])
        assert exc.value.code == 'path-graph'

    def test_negative_loops_rejected(self):
        with pytest.raises(InvalidBunchError) as exc:
            GrapeBunch.from_edges([('a', 'b')], {'a': -1, 'b': 2})
        assert exc.value.code == 'negative-loops'

    def test_unknown_loop_vertex_rejected(self):
        with pytest.raises(InvalidBunchError) as exc:
            GrapeBunch(Stem(['a']), {'b': 1})
        assert exc.value.code == 'unknown-vertex'

    def test_grape_valence(self, star3_tree):
        g = GrapeBunch(star3_tree, {'x1': 1})
        assert g.grape_valence('c') == 3
        assert g.grape_valence('x1') == 3
        assert g.grape_valence('x2') == 1
        assert GrapeBunch(Stem(['o']), {'o': 2}).grape_valence('o') == 4

    def test_classify_single_vertex(self):
        cls = GrapeBunch(Stem(['o']), {'o': 2}).classify()
        assert (cls.large, cls.normal, cls.rich) == (False, True, True)

    def test_classify_star(self, picking_pair):
        cls = picking_pair[1].classify()
        assert (cls.large, cls.normal, cls.rich) == (True, True, False)
        assert str(cls) == 'large, normal, not rich'

    def test_classify_edge(self, edge_bunch):
        cls = edge_bunch.classify()
        assert (cls.large, cls.normal, cls.rich) == (True, True, True)

    def test_loops_sum(self, twigs_example):
        assert twigs_example.loops_sum() == 9
        assert GrapeBunch(Stem(['o']), {'o': 3}).loops_sum() == 3

    def test_to_dict_drops_zero_loops(self, abcd_bunch):
        data = abcd_bunch.to_dict()
        assert data['loops'] == {'a': 2, 'c': 1}
        assert data['stem'] == [['a', 'b'], ['b', 'c'], ['c', 'd']]


class TestTwigs:

    def test_edge_stem_has_one_twig(self, edge_bunch):
        assert [t.path for t in edge_bunch.twigs()] == [('a', 'b')]

    def test_twigs_skip_bivalent_vertices(self, abcd_bunch):
        assert [t.path for t in abcd_bunch.twigs()] == [('a', 'b', 'c'), ('c', 'd')]

    def test_normal_twigs_are_stem_edges(self, star3_ones):
        assert [t.path for t in star3_ones.twigs()] == list(star3_ones.stem.edges)

    def test_example_twigs(self, twigs_example):
        ids = [t.id for t in twigs_example.twigs()]
        assert len(ids) == 9
        assert 'B-E-F' in ids
        assert 'I-J' in ids

    def test_empty_twig(self, abcd_bunch, twigs_example):
        assert abcd_bunch.is_empty_twig(Twig(('c', 'd')))
        assert not abcd_bunch.is_empty_twig(Twig(('a', 'b', 'c')))
        assert twigs_example.is_empty_twig(Twig(('I', 'J')))
        assert not twigs_example.is_empty_twig(Twig(('F', 'I')))

    def test_not_a_twig(self, abcd_bunch):
        with pytest.raises(PreconditionError) as exc:
            abcd_bunch.is_empty_twig(Twig(('a', 'b')))
        assert exc.value.code == 'not-a-twig'

    def test_twig_normalizes_direction(self):
        assert Twig(('b', 'a')).path == ('a', 'b')

    @settings(max_examples=60, deadline=None)
    @given(bunches())
    def test_twigs_partition_stem_edges(self, g):
        edges = [e for t in g.twigs() for e in t.edges]
        assert sorted(edges) == list(g.stem.edges)
        assert sum(t.length for t in g.twigs()) == g.stem.number_of_edges

    @settings(max_examples=60, deadline=None)
    @given(bunches())
    def test_grape_valence_one_only_at_bare_leaves(self, g):
        for v in g.vertices:
            bare_leaf = g.stem.valence(v) == 1 and g.loop(v) == 0
            assert (g.grape_valence(v) == 1) == bare_leaf


class TestComponents:

    def test_star_hat_components(self, star3_ones):
        components = star3_ones.hat_components('c')
        assert [attach for _, attach in components] == ['x1', 'x2', 'x3']
        assert all(c.stem.number_of_vertices == 1 for c, _ in components)

    def test_leaf_hat_component(self):
        g = GrapeBunch.from_edges([('a', 'b'), ('b', 'c')], {'a': 1, 'c': 1})
        ((component, attach),) = g.hat_components('a')
        assert attach == 'b'
        assert component.stem.edges == (('b', 'c'),)

    def test_single_vertex_has_no_components(self):
        assert GrapeBunch(Stem(['o']), {'o': 2}).hat_components('o') == []

    def test_extended_component_drops_grapes_at_root(self, star3_ones):
        extended = star3_ones.extended_component('c', 'x1')
        assert sorted(extended.stem.vertices) == ['c', 'x1']
        assert dict(extended.loops) == {'c': 0, 'x1': 1}

    def test_substem_components_sums(self, twigs_example):
        first, second = twigs_example.substem_components(PathSubstem(('B', 'E', 'F', 'I', 'K')))
        assert (first.loops_sum(), second.loops_sum()) == (5, 1)
        assert sorted(first.vertices) == ['A', 'B', 'C', 'D']
        assert second.vertices == ['K']

    def test_substem_components_single_edge(self, edge_bunch):
        first, second = edge_bunch.substem_components(PathSubstem(('a', 'b')))
        assert first.vertices == ['a']
        assert second.vertices == ['b']

    def test_substem_components_whole_path(self, path4_ones):
        first, second = path4_ones.substem_components(('v0', 'v1', 'v2', 'v3', 'v4'))
        assert (first.vertices, second.vertices) == (['v0'], ['v4'])

    def test_substem_components_rejects_non_path(self, star3_ones):
        with pytest.raises(PreconditionError) as exc:
            star3_ones.substem_components(('x1', 'x2'))
        assert exc.value.code == 'not-a-path'

    def test_sides_partition_complement(self, twigs_example):
        p = PathSubstem(('A', 'B', 'E', 'F', 'G'))
        sides = twigs_example.substem_sides(p)
        assert not sides[0] & sides[1]
        assert not (sides[0] | sides[1]) & set(p.interior)
        assert sides == (frozenset({'A'}), frozenset({'G'}))
