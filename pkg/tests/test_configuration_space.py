from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from grapeqi.errors import GuardExceededError, PreconditionError
from grapeqi.guards import SizeGuards
from grapeqi.models import CubeComplex, SimpleGraph
from grapeqi.services import ConfigurationSpaceService, free_rank_formula, star_b4_rank
from grapeqi.services.generators import (
    bouquet_bunch, make_rng, random_simple_graph, star_with_grapes,
)


@pytest.fixture
def spaces():
    return ConfigurationSpaceService()


def mobius_strip():
    """Three squares glued in a band with a half twist"""
    vertices = ['t0', 't1', 't2', 'b0', 'b1', 'b2']
    edges = {
        'v0': ('t0', 'b0'), 'v1': ('t1', 'b1'), 'v2': ('t2', 'b2'),
        'h0t': ('t0', 't1'), 'h0b': ('b0', 'b1'),
        'h1t': ('t1', 't2'), 'h1b': ('b1', 'b2'),
        'x1': ('t2', 'b0'), 'x2': ('b2', 't0'),
    }
    squares = [
        ('S0', ('t0', 't1', 'b0', 'b1'), {(0, 0): 'h0t', (0, 2): 'h0b', (1, 0): 'v0', (1, 1): 'v1'}),
        ('S1', ('t1', 't2', 'b1', 'b2'), {(0, 0): 'h1t', (0, 2): 'h1b', (1, 0): 'v1', (1, 1): 'v2'}),
        ('S2', ('t2', 'b0', 'b2', 't0'), {(0, 0): 'x1', (0, 2): 'x2', (1, 0): 'v2', (1, 1): 'v0'}),
    ]
    return CubeComplex.from_squares(vertices, edges, squares)


def doubled_square():
    """Two squares sharing three sides; their corners at x and y coincide"""
    edges = {'e1': ('w', 'x'), 'e2': ('x', 'y'), 'e3': ('y', 'z'), 'f1': ('z', 'w'), 'f2': ('z', 'w')}
    squares = [
        (name, ('x', 'w', 'y', 'z'), {(0, 0): 'e1', (1, 0): 'e2', (0, 2): 'e3', (1, 1): f})
        for name, f in (('S1', 'f1'), ('S2', 'f2'))
    ]
    return CubeComplex.from_squares(['w', 'x', 'y', 'z'], edges, squares)


class TestRealization:

    def test_edge_bunch(self, spaces, edge_bunch):
        graph = spaces.realize_grape(edge_bunch)
        assert graph.number_of_vertices == 6
        assert graph.number_of_edges == 7
        assert graph.degree('a') == 3

    def test_single_vertex(self, spaces):
        graph = spaces.realize_grape(bouquet_bunch(2))
        assert graph.vertices == ('o', 'o~g0a', 'o~g0b', 'o~g1a', 'o~g1b')


class TestBuildUdn:

    def test_star(self, spaces, star3_graph):
        cc = spaces.build_udn(star3_graph, 2)
        assert cc.cell_counts(upto=2) == (6, 6, 0)
        assert spaces.betti(cc) == (1, 1)
        assert spaces.is_special(cc)

    def test_triangle(self, spaces, triangle_graph):
        cc = spaces.build_udn(triangle_graph, 2)
        assert cc.cell_counts(upto=2) == (3, 3, 0)
        assert spaces.betti(cc)[1] == 1

    def test_bouquet(self, spaces):
        graph = spaces.realize_grape(bouquet_bunch(2))
        cc = spaces.build_udn(graph, 2)
        assert cc.cell_counts() == (10, 18, 5)
        assert spaces.betti(cc) == (1, 4)

    def test_cells_are_disjoint(self, spaces, edge_bunch):
        cc = spaces.build_udn(spaces.realize_grape(edge_bunch), 2)
        for key in cc.cells(2):
            (u, v), (w, x) = key
            assert not {u, v} & {w, x}

    def test_needs_two_particles(self, spaces, star3_graph):
        with pytest.raises(PreconditionError) as exc:
            spaces.build_udn(star3_graph, 1)
        assert exc.value.code == 'invalid-argument'

    def test_unsubdivided(self, spaces, star3_graph):
        with pytest.raises(PreconditionError) as exc:
            spaces.build_udn(star3_graph, 3)
        assert exc.value.code == 'insufficient-subdivision'

    @pytest.mark.parametrize('n, l', [(3, 0), (4, 0), (2, 1), (3, 1), (0, 2)])
    def test_star_with_grapes_rank(self, spaces, n, l):
        cc = spaces.build_udn(star_with_grapes(n, l), 2)
        assert spaces.betti(cc) == (1, free_rank_formula(n, l))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1))
    def test_ud2_cell_counts(self, seed):
        graph = random_simple_graph(make_rng(seed))
        spaces = ConfigurationSpaceService()
        cc = spaces.build_udn(graph, 2)
        disjoint = sum(1 for e, f in combinations(graph.edges, 2) if not set(e) & set(f))
        v, e = graph.number_of_vertices, graph.number_of_edges
        assert cc.cell_counts(upto=2) == (comb(v, 2), e * (v - 2), disjoint)
        assert spaces.links_ok(cc)[0]

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1))
    def test_euler_characteristic_bounds_betti(self, seed):
        spaces = ConfigurationSpaceService()
        cc = spaces.build_udn(random_simple_graph(make_rng(seed)), 2)
        b0, b1 = spaces.betti(cc)
        assert 0 <= cc.euler_characteristic() - b0 + b1 <= len(cc.cells(2))

    def test_euler_characteristic_of_star(self, spaces, star3_graph):
        assert spaces.build_udn(star3_graph, 2).euler_characteristic() == 0

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1))
    def test_subgraph_gives_subcomplex(self, seed):
        rng = make_rng(seed)
        graph = random_simple_graph(rng)
        kept = [e for e in graph.edges if rng.random() < 0.6]
        spaces = ConfigurationSpaceService()
        small = spaces.build_udn(SimpleGraph(graph.vertices, kept), 2)
        assert small.cell_keys <= spaces.build_udn(graph, 2).cell_keys


class TestSubdivision:

    def test_two_particles_untouched(self, spaces, star3_graph):
        assert spaces.subdivide_for(star3_graph, 2) is star3_graph

    def test_star_for_three(self, spaces, star3_graph):
        graph = spaces.subdivide_for(star3_graph, 3)
        assert graph.number_of_vertices == 7
        assert 'c~x~s1' in graph.vertices
        assert spaces.subdivision_violations(graph, 3) == []

    def test_violations(self, spaces, star3_graph):
        problems = spaces.subdivision_violations(star3_graph, 3)
        assert problems == ['path c..x has 1 < 2 edges', 'path c..y has 1 < 2 edges',
                            'path c..z has 1 < 2 edges']

    def test_cycle(self, spaces, triangle_graph):
        graph = spaces.subdivide_for(triangle_graph, 3)
        assert graph.number_of_edges == 4
        assert spaces.subdivision_violations(graph, 3) == []

    @pytest.mark.slow
    def test_four_particles_on_a_star(self, spaces, star3_graph):
        graph = spaces.subdivide_for(star3_graph, 4)
        assert graph.number_of_vertices == 10
        cc = spaces.build_udn(graph, 4)
        assert spaces.betti(cc) == (1, star_b4_rank(3))
        assert spaces.links_ok(cc)[0]


class TestDiagnostics:

    def test_mobius_is_one_sided(self, spaces):
        cc = mobius_strip()
        report = spaces.hyperplanes(cc)
        assert len(report.classes) == 4
        assert report.one_sided == frozenset({report.class_of('v0')})
        assert not report.clean
        assert spaces.links_ok(cc)[0]
        assert not spaces.is_special(cc)
        assert spaces.betti(cc) == (1, 1)

    def test_doubled_square_fails_links(self, spaces):
        ok, diagnostics = spaces.links_ok(doubled_square())
        assert not ok
        assert set(diagnostics) == {'x', 'y'}
        assert 'repeated link simplex' in diagnostics['x'][0]

    def test_star_hyperplanes(self, spaces, star3_graph):
        report = spaces.hyperplanes(spaces.build_udn(star3_graph, 2))
        assert len(report.classes) == 6
        assert report.clean

    def test_torus_hyperplanes(self, spaces, edge_bunch):
        graph = spaces.realize_grape(edge_bunch)
        cc = spaces.build_udn(graph, 2)
        report = spaces.hyperplanes(cc)
        assert spaces.links_ok(cc)[0]
        assert sum(len(members) for members in report.classes) == len(cc.edges)


class TestGuards:

    def test_ud2_vertex_guard(self, star3_graph):
        spaces = ConfigurationSpaceService(SizeGuards(ud2_max_vertices=3))
        with pytest.raises(GuardExceededError) as exc:
            spaces.build_udn(star3_graph, 2)
        assert exc.value.code == 'ud2_max_vertices'
        assert exc.value.exit_code == 3
        assert (exc.value.limit, exc.value.actual) == (3, 4)

    def test_cell_guard(self, star3_graph):
        spaces = ConfigurationSpaceService(SizeGuards(max_cells=5))
        with pytest.raises(GuardExceededError) as exc:
            spaces.build_udn(star3_graph, 2)
        assert exc.value.guard == 'max_cells'
