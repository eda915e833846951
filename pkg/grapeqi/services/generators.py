"""
Generators for bunches, trees and graphs
Seeded random pools for property checks plus the standard named examples
"""
import logging

import networkx as nx
import numpy as np

from grapeqi.models import GrapeBunch, SimpleGraph, Stem

logger = logging.getLogger(__name__)


def make_rng(seed):
    return np.random.default_rng(seed)


def random_stem(rng, n):
    """
    Uniform random labelled tree on n vertices v0..v{n-1} via a Prüfer sequence
    """
    if n == 1:
        return Stem(['v0'])
    if n == 2:
        return Stem(['v0', 'v1'], [('v0', 'v1')])
    sequence = [int(x) for x in rng.integers(0, n, size=n - 2)]
    tree = nx.from_prufer_sequence(sequence)
    return Stem([f'v{i}' for i in tree.nodes], [(f'v{u}', f'v{w}') for u, w in tree.edges])


def random_bunch(rng, max_vertices=7, max_loops=3, normal=False):
    """
    Random large bunch

    Args:
        rng: numpy Generator
        max_vertices: Upper bound on stem vertices (at least 2)
        max_loops: Upper bound on grapes per vertex
        normal: Raise counts so every vertex has grape-valence >= 3

    Returns:
        GrapeBunch with at least two grape-bearing vertices
    """
    n = int(rng.integers(2, max_vertices + 1))
    stem = random_stem(rng, n)
    vertices = sorted(stem.vertices)
    loops = {v: int(rng.integers(0, max_loops + 1)) for v in vertices}
    while sum(1 for c in loops.values() if c) < 2:
        v = vertices[int(rng.integers(n))]
        loops[v] = max(loops[v], 1)
    if normal:
        for v in vertices:
            if stem.valence(v) + 2 * loops[v] < 3:
                loops[v] = 1
    return GrapeBunch(stem, loops)


def random_simple_graph(rng, max_vertices=8, max_extra_edges=3):
    """Random connected simple graph: a random tree plus a few extra edges"""
    n = int(rng.integers(1, max_vertices + 1))
    stem = random_stem(rng, n)
    graph = nx.Graph(stem.graph)
    vertices = sorted(graph.nodes)
    for _ in range(int(rng.integers(0, max_extra_edges + 1))):
        if n < 3:
            break
        u, w = (vertices[int(i)] for i in rng.choice(n, size=2, replace=False))
        graph.add_edge(u, w)
    return SimpleGraph(graph.nodes, graph.edges)


def relabel(g, rng):
    """Same bunch under a random permutation of vertex ids"""
    vertices = g.vertices
    order = [vertices[int(i)] for i in rng.permutation(len(vertices))]
    mapping = {old: f'u{i}' for i, old in enumerate(order)}
    edges = [(mapping[u], mapping[w]) for u, w in g.stem.edges]
    loops = {mapping[v]: c for v, c in g.loops.items()}
    return GrapeBunch(Stem(mapping.values(), edges), loops)


# Named examples

def star_stem(n, center='c'):
    leaves = [f'x{i}' for i in range(1, n + 1)]
    return Stem([center] + leaves, [(center, x) for x in leaves])


def star_bunch(n, center_loops=0, leaf_loops=1):
    """n-star with the given grape count at the center and at every leaf"""
    stem = star_stem(n)
    if isinstance(leaf_loops, int):
        leaf_loops = [leaf_loops] * n
    loops = {'c': center_loops}
    loops.update({f'x{i}': c for i, c in enumerate(leaf_loops, 1)})
    return GrapeBunch(stem, loops, allow_path=True)


def star_with_grapes(n, l):
    """Realized graph of the n-star with l triangles at its center"""
    stem = star_stem(n)
    vertices = set(stem.vertices)
    edges = list(stem.edges)
    for i in range(l):
        a, b = f'c~g{i}a', f'c~g{i}b'
        vertices |= {a, b}
        edges += [('c', a), (a, b), (b, 'c')]
    return SimpleGraph(vertices, edges)


def path_bunch(k, loops=1):
    """Path v0..vk with the same grape count everywhere"""
    vertices = [f'v{i}' for i in range(k + 1)]
    return GrapeBunch(Stem(vertices, zip(vertices, vertices[1:])), {v: loops for v in vertices})


def dynkin_stem(n):
    """
    D~_n tree on n + 1 vertices: two branch vertices, each with two leaves,
    joined by a path of n - 4 edges
    """
    if n < 5:
        raise ValueError("D~_n is defined here for n >= 5")
    spine = ['x'] + [f'p{i}' for i in range(1, n - 4)] + ['y']
    edges = list(zip(spine, spine[1:])) + [('x', 'a'), ('x', 'b'), ('y', 'c'), ('y', 'd')]
    return Stem(spine + ['a', 'b', 'c', 'd'], edges)


def dynkin_bunch(n):
    """D~_n stem with one grape on every vertex of valence <= 2"""
    stem = dynkin_stem(n)
    return GrapeBunch(stem, {v: 1 if stem.valence(v) <= 2 else 0 for v in stem.vertices})


def twigs_example_bunch():
    """
    Eleven-vertex bunch with an empty twig [I, J] and nine grapes

        A-B, B-C, B-D, B-E, E-F, F-G, F-H, F-I, I-J, I-K
    """
    edges = [('A', 'B'), ('B', 'C'), ('B', 'D'), ('B', 'E'), ('E', 'F'),
             ('F', 'G'), ('F', 'H'), ('F', 'I'), ('I', 'J'), ('I', 'K')]
    loops = {'A': 1, 'C': 3, 'D': 1, 'F': 1, 'G': 1, 'H': 1, 'K': 1}
    return GrapeBunch.from_edges(edges, loops)


def picking_pair():
    """Two 3-star bunches whose 2-braid groups are not quasi-isometric"""
    return star_bunch(3, 0, [2, 1, 1]), star_bunch(3, 0, [1, 1, 1])


def bouquet_bunch(k=2):
    """Single vertex carrying k grapes"""
    return GrapeBunch(Stem(['o']), {'o': k})


def pool(rng, size, **kwargs):
    return [random_bunch(rng, **kwargs) for _ in range(size)]
