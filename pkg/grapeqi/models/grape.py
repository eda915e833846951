"""
Bunch-of-grapes Model - stems, grape counts, twigs and path substems
A bunch of grapes is a finite tree (the stem) with a count of 3-cycles attached at each vertex
"""
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType

import networkx as nx

from grapeqi.errors import InvalidBunchError, PreconditionError


def edge_key(u, v):
    """Unordered stem edge as a sorted tuple"""
    return (u, v) if u <= v else (v, u)


class Stem:
    """
    A finite tree with opaque string vertex ids
    """

    def __init__(self, vertices=(), edges=()):
        graph = nx.Graph()
        graph.add_nodes_from(str(v) for v in vertices)
        for u, v in edges:
            u, v = str(u), str(v)
            if u == v:
                raise InvalidBunchError(f"stem has a self-loop at {u!r}", code='self-loop')
            if graph.has_edge(u, v):
                raise InvalidBunchError(f"stem edge {u!r}-{v!r} given twice", code='duplicate-edge')
            graph.add_edge(u, v)

        if graph.number_of_nodes() == 0:
            raise InvalidBunchError("stem has no vertices", code='empty-stem')
        if not nx.is_connected(graph):
            raise InvalidBunchError("stem is disconnected", code='disconnected')
        if not nx.is_tree(graph):
            raise InvalidBunchError("stem has a cycle", code='not-a-tree')

        self._graph = nx.freeze(graph)

    @classmethod
    def from_edges(cls, edges, vertices=()):
        """Build a stem from an edge list plus optional isolated vertices"""
        return cls(vertices=vertices, edges=edges)

    @property
    def graph(self):
        """Frozen networkx view of the tree"""
        return self._graph

    @cached_property
    def vertices(self):
        return frozenset(self._graph.nodes)

    @cached_property
    def edges(self):
        return tuple(sorted(edge_key(u, v) for u, v in self._graph.edges))

    @property
    def number_of_vertices(self):
        return self._graph.number_of_nodes()

    @property
    def number_of_edges(self):
        return self._graph.number_of_edges()

    def check_vertex(self, v):
        if v not in self._graph:
            raise InvalidBunchError(f"unknown vertex id {v!r}", code='unknown-vertex')

    def valence(self, v):
        self.check_vertex(v)
        return self._graph.degree(v)

    def neighbors(self, v):
        self.check_vertex(v)
        return sorted(self._graph.neighbors(v))

    def leaves(self):
        return sorted(v for v, d in self._graph.degree if d == 1)

    def has_edge(self, u, v):
        return self._graph.has_edge(u, v)

    def is_path(self):
        return all(d <= 2 for _, d in self._graph.degree)

    def path_between(self, u, v):
        self.check_vertex(u)
        self.check_vertex(v)
        return nx.shortest_path(self._graph, u, v)

    def diameter(self):
        if self.number_of_vertices == 1:
            return 0
        return nx.diameter(self._graph)

    def induced(self, vertices):
        """Induced subtree on a vertex subset; the subset must span a connected subtree"""
        vertices = set(vertices)
        return Stem(vertices, self._graph.subgraph(vertices).edges)

    def components_without(self, removed):
        """Vertex sets of the components of the stem minus the given vertices"""
        view = nx.restricted_view(self._graph, list(removed), [])
        return [frozenset(c) for c in nx.connected_components(view)]

    def __contains__(self, v):
        return v in self._graph

    def __eq__(self, other):
        if not isinstance(other, Stem):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f'<Stem {self.number_of_vertices} vertices, {self.number_of_edges} edges>'

    def to_dict(self):
        """Convert stem to dictionary"""
        return {
            'vertices': sorted(self.vertices),
            'edges': [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class PathSubstem:
    """A path [v_0, ..., v_n] in a stem, n >= 1"""

    path: tuple

    def __post_init__(self):
        path = tuple(str(v) for v in self.path)
        if len(path) < 2:
            raise PreconditionError("a path substem needs at least one edge", code='invalid-argument')
        if len(set(path)) != len(path):
            raise PreconditionError(f"path {'-'.join(path)} repeats a vertex", code='not-a-path')
        object.__setattr__(self, 'path', path)

    @property
    def length(self):
        return len(self.path) - 1

    @property
    def endpoints(self):
        return self.path[0], self.path[-1]

    @property
    def interior(self):
        return self.path[1:-1]

    @property
    def edges(self):
        return tuple(edge_key(u, v) for u, v in zip(self.path, self.path[1:]))

    @property
    def id(self):
        return '-'.join(self.path)

    def reversed(self):
        return type(self)(tuple(reversed(self.path)))

    def check_in(self, stem):
        for u, v in zip(self.path, self.path[1:]):
            if not stem.has_edge(u, v):
                raise PreconditionError(f"{self.id} is not a path in the stem", code='not-a-path')

    def __str__(self):
        return self.id


@dataclass(frozen=True)
class Twig(PathSubstem):
    """
    A maximal path substem whose interior vertices have grape-valence 2.
    Stored in the orientation whose first vertex id is smaller.
    """

    def __post_init__(self):
        super().__post_init__()
        if self.path[0] > self.path[-1]:
            object.__setattr__(self, 'path', tuple(reversed(self.path)))

    def reversed(self):
        return self


@dataclass(frozen=True)
class Classification:
    """Size class plus the normal/rich predicates"""

    large: bool
    normal: bool
    rich: bool

    @property
    def size(self):
        return 'large' if self.large else 'small'

    def to_dict(self):
        return {'size': self.size, 'normal': self.normal, 'rich': self.rich}

    def __str__(self):
        normal = 'normal' if self.normal else 'not normal'
        rich = 'rich' if self.rich else 'not rich'
        return f'{self.size}, {normal}, {rich}'


class GrapeBunch:
    """
    A bunch of grapes (T, l): a stem plus grape counts.

    Restrictions to substems may degenerate to path graphs; those are built
    with allow_path=True and are only used as components of a larger bunch.
    """

    def __init__(self, stem, loops=None, metadata=None, allow_path=False):
        loops = {str(v): c for v, c in (loops or {}).items()}
        for v, count in loops.items():
            if v not in stem:
                raise InvalidBunchError(f"loops given for unknown vertex {v!r}", code='unknown-vertex')
            if isinstance(count, bool) or not isinstance(count, int):
                raise InvalidBunchError(f"loops at {v!r} must be an integer", code='loops-domain')
            if count < 0:
                raise InvalidBunchError(f"loops at {v!r} is negative", code='negative-loops')

        self._stem = stem
        self._loops = MappingProxyType({v: loops.get(v, 0) for v in sorted(stem.vertices)})
        self._metadata = MappingProxyType(dict(metadata or {}))

        if not allow_path and self.is_path_graph:
            raise InvalidBunchError("bunch is a path graph (no grapes on a path stem)", code='path-graph')

    @classmethod
    def from_edges(cls, edges, loops=None, vertices=(), metadata=None):
        """Convenience constructor from an edge list and a loop mapping"""
        vertices = set(vertices) | set(loops or {})
        return cls(Stem(vertices, edges), loops, metadata=metadata)

    @property
    def stem(self):
        return self._stem

    @property
    def loops(self):
        return self._loops

    @property
    def metadata(self):
        return self._metadata

    @property
    def vertices(self):
        return sorted(self._stem.vertices)

    @property
    def is_path_graph(self):
        return self.loops_sum() == 0 and self._stem.is_path()

    def loop(self, v):
        self._stem.check_vertex(v)
        return self._loops[v]

    def grape_valence(self, v):
        """Stem valence plus two per grape"""
        return self._stem.valence(v) + 2 * self._loops[v]

    def loops_sum(self, vertices=None):
        if vertices is None:
            return sum(self._loops.values())
        return sum(self._loops[v] for v in vertices)

    def grape_vertices(self):
        return [v for v, c in self._loops.items() if c > 0]

    def classify(self):
        """
        Classify the bunch

        Returns:
            Classification with large / normal / rich flags
        """
        return Classification(
            large=len(self.grape_vertices()) >= 2,
            normal=all(self.grape_valence(v) >= 3 for v in self._loops),
            rich=all(c >= 1 for c in self._loops.values()),
        )

    @property
    def is_large(self):
        return len(self.grape_vertices()) >= 2

    @cached_property
    def _twigs(self):
        breaks = {v for v in self._loops if self.grape_valence(v) != 2}
        graph = self._stem.graph
        seen = set()
        result = []
        for start in sorted(breaks):
            for nxt in sorted(graph.neighbors(start)):
                if edge_key(start, nxt) in seen:
                    continue
                path = [start, nxt]
                seen.add(edge_key(start, nxt))
                while path[-1] not in breaks:
                    prev, cur = path[-2], path[-1]
                    (step,) = [w for w in graph.neighbors(cur) if w != prev]
                    seen.add(edge_key(cur, step))
                    path.append(step)
                result.append(Twig(tuple(path)))
        return tuple(sorted(result, key=lambda t: t.path))

    def twigs(self):
        """
        Every maximal path substem whose interior has grape-valence 2

        Returns:
            List of Twig, sorted by path; twigs partition the stem edges
        """
        return list(self._twigs)

    def check_twig(self, t):
        if not isinstance(t, Twig):
            t = Twig(t.path if isinstance(t, PathSubstem) else tuple(t))
        if t not in self._twigs:
            raise PreconditionError(f"{t.id} is not a twig of the bunch", code='not-a-twig')
        return t

    def is_empty_twig(self, t):
        t = self.check_twig(t)
        return any(self.grape_valence(v) == 1 for v in t.endpoints)

    def restrict(self, vertices, allow_path=True):
        """Grape restriction over the substem induced by the given vertices"""
        vertices = set(vertices)
        return GrapeBunch(
            self._stem.induced(vertices),
            {v: self._loops[v] for v in vertices},
            allow_path=allow_path,
        )

    def hat_components(self, v):
        """
        Restrictions over the components of the stem minus v

        Args:
            v: Stem vertex

        Returns:
            List of (GrapeBunch, attach) where attach is the component's neighbour of v
        """
        self._stem.check_vertex(v)
        components = self._stem.components_without([v])
        result = []
        for attach in self._stem.neighbors(v):
            (component,) = [c for c in components if attach in c]
            result.append((self.restrict(component), attach))
        return result

    def hat_component_vertices(self, v, attach):
        """Vertex set of the v-hat component containing attach"""
        if not self._stem.has_edge(v, attach):
            raise PreconditionError(f"{attach!r} is not adjacent to {v!r}", code='invalid-argument')
        (component,) = [c for c in self._stem.components_without([v]) if attach in c]
        return component

    def extended_component(self, v, attach):
        """
        Closure of a v-hat component: the component plus v, carrying no grapes at v
        """
        vertices = set(self.hat_component_vertices(v, attach)) | {v}
        loops = {u: self._loops[u] for u in vertices}
        loops[v] = 0
        return GrapeBunch(self._stem.induced(vertices), loops, allow_path=True)

    def substem_components(self, p):
        """
        The two restrictions over the components of the stem minus the interior of p

        Args:
            p: PathSubstem (or vertex sequence) of length >= 1

        Returns:
            (component containing p's first vertex, component containing p's last vertex)
        """
        p = p if isinstance(p, PathSubstem) else PathSubstem(tuple(p))
        p.check_in(self._stem)
        return tuple(self.restrict(side) for side in self.substem_sides(p))

    def substem_sides(self, p):
        """Vertex sets of the two components of the stem minus the open path p"""
        # hiding the path edges separates the endpoints of a single-edge path too
        view = nx.restricted_view(self._stem.graph, list(p.interior), list(p.edges))
        return tuple(frozenset(nx.node_connected_component(view, end)) for end in p.endpoints)

    def with_loops(self, updates, allow_path=False):
        loops = dict(self._loops)
        loops.update(updates)
        return GrapeBunch(self._stem, loops, metadata=self._metadata, allow_path=allow_path)

    def summary(self):
        return (f'V={self._stem.number_of_vertices} E={self._stem.number_of_edges} '
                f'loops={self.loops_sum()}')

    def __eq__(self, other):
        if not isinstance(other, GrapeBunch):
            return NotImplemented
        return self._stem == other._stem and dict(self._loops) == dict(other._loops)

    def __hash__(self):
        return hash((self._stem, tuple(self._loops.items())))

    def __repr__(self):
        return f'<GrapeBunch {self.summary()}>'

    def to_dict(self):
        """Convert bunch to dictionary"""
        return {
            'vertices': self.vertices,
            'stem': [list(e) for e in self._stem.edges],
            'loops': {v: c for v, c in self._loops.items() if c},
            'meta': dict(self._metadata),
        }
