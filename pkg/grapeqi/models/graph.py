"""
Simple Graph Model - realization substrate for configuration spaces
"""
from functools import cached_property

import networkx as nx

from grapeqi.errors import InvalidBunchError
from grapeqi.models.grape import edge_key


class SimpleGraph:
    """
    A finite simple graph with string vertex ids
    """

    def __init__(self, vertices=(), edges=()):
        graph = nx.Graph()
        graph.add_nodes_from(str(v) for v in vertices)
        for u, v in edges:
            u, v = str(u), str(v)
            if u == v:
                raise InvalidBunchError(f"graph has a self-loop at {u!r}", code='self-loop')
            if graph.has_edge(u, v):
                raise InvalidBunchError(f"edge {u!r}-{v!r} given twice", code='duplicate-edge')
            graph.add_edge(u, v)
        self._graph = nx.freeze(graph)

    @classmethod
    def from_networkx(cls, graph):
        if graph.is_multigraph():
            for u, v, _ in graph.edges(keys=True):
                if u == v:
                    raise InvalidBunchError(f"graph has a self-loop at {u!r}", code='self-loop')
                if graph.number_of_edges(u, v) > 1:
                    raise InvalidBunchError(f"graph has parallel edges {u!r}-{v!r}",
                                            code='duplicate-edge')
            return cls(graph.nodes, [(u, v) for u, v, _ in graph.edges(keys=True)])
        return cls(graph.nodes, graph.edges)

    @property
    def graph(self):
        return self._graph

    @cached_property
    def vertices(self):
        return tuple(sorted(self._graph.nodes))

    @cached_property
    def edges(self):
        return tuple(sorted(edge_key(u, v) for u, v in self._graph.edges))

    @property
    def number_of_vertices(self):
        return self._graph.number_of_nodes()

    @property
    def number_of_edges(self):
        return self._graph.number_of_edges()

    def degree(self, v):
        return self._graph.degree(v)

    def is_connected(self):
        return self.number_of_vertices > 0 and nx.is_connected(self._graph)

    def edge_subgraph(self, edges):
        """Subgraph spanned by an edge subset"""
        edges = [edge_key(u, v) for u, v in edges]
        vertices = {x for e in edges for x in e}
        return SimpleGraph(vertices, edges)

    def is_subgraph_of(self, other):
        return set(self.vertices) <= set(other.vertices) and set(self.edges) <= set(other.edges)

    def __eq__(self, other):
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f'<SimpleGraph {self.number_of_vertices} vertices, {self.number_of_edges} edges>'

    def to_dict(self):
        return {'vertices': list(self.vertices), 'edges': [list(e) for e in self.edges]}


class ProductPair:
    """
    Two vertex-disjoint connected subgraphs of a base graph (an unordered pair).
    Standard pairs additionally have no leaves in either factor.
    """

    def __init__(self, left, right):
        if set(left.vertices) & set(right.vertices):
            raise InvalidBunchError("product factors share a vertex", code='invalid-argument')
        # unordered: store factors in a fixed order
        if (left.edges, left.vertices) > (right.edges, right.vertices):
            left, right = right, left
        self.left = left
        self.right = right

    @property
    def is_standard(self):
        return all(
            f.is_connected() and all(f.degree(v) >= 2 for v in f.vertices)
            for f in (self.left, self.right)
        )

    def factors(self):
        return self.left, self.right

    def edge_sets(self):
        return frozenset([frozenset(self.left.edges), frozenset(self.right.edges)])

    def contained_in(self, other):
        """Factor-wise inclusion, in either matching of factors"""
        a, b = self.left, self.right
        c, d = other.left, other.right
        return ((a.is_subgraph_of(c) and b.is_subgraph_of(d))
                or (a.is_subgraph_of(d) and b.is_subgraph_of(c)))

    def __eq__(self, other):
        if not isinstance(other, ProductPair):
            return NotImplemented
        return self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return f'<ProductPair {self.left!r} x {self.right!r}>'

    def to_dict(self):
        return {'left': self.left.to_dict(), 'right': self.right.to_dict()}
