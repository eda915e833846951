"""
Cube Complex Model - explicit cells with attaching data
Houses discrete configuration spaces UD_n and their product subcomplexes
"""
from dataclasses import dataclass, field
from functools import cached_property

from grapeqi.errors import InvalidBunchError


def format_member(member):
    """A configuration member: a base vertex (1-tuple) or a base edge (2-tuple)"""
    return '-'.join(member)


def format_key(key):
    """Readable form of a cell key; configuration cells print as {a, b-c}"""
    if isinstance(key, tuple) and key and all(isinstance(m, tuple) for m in key):
        return '{' + ', '.join(format_member(m) for m in key) + '}'
    return str(key)


@dataclass(frozen=True)
class Cube:
    """
    A d-cube of dimension >= 2.

    corners[c] is the vertex at corner index c; bit k of c selects the end of
    direction k. edge_keys maps (k, c) with bit k of c clear to the edge from
    corners[c] to corners[c | 1 << k].
    """

    key: object
    corners: tuple
    edge_keys: tuple

    @property
    def dim(self):
        return len(self.corners).bit_length() - 1

    @cached_property
    def edge_map(self):
        return dict(self.edge_keys)

    def edge(self, direction, base):
        return self.edge_map[(direction, base)]

    def edges_at_corner(self, corner):
        """(direction, edge key) for every edge of the cube incident to the corner"""
        result = []
        for k in range(self.dim):
            base = corner & ~(1 << k)
            result.append((k, self.edge_map[(k, base)]))
        return result


@dataclass(frozen=True)
class HyperplaneReport:
    """Parallelism classes of edges with specialness flags"""

    classes: tuple
    self_intersecting: frozenset = field(default_factory=frozenset)
    self_osculating: frozenset = field(default_factory=frozenset)
    one_sided: frozenset = field(default_factory=frozenset)
    inter_osculating: frozenset = field(default_factory=frozenset)

    @property
    def clean(self):
        return not (self.self_intersecting or self.self_osculating
                    or self.one_sided or self.inter_osculating)

    def class_of(self, edge):
        for i, members in enumerate(self.classes):
            if edge in members:
                return i
        raise KeyError(edge)

    def to_dict(self):
        return {
            'classes': [[format_key(e) for e in members] for members in self.classes],
            'self_intersecting': sorted(self.self_intersecting),
            'self_osculating': sorted(self.self_osculating),
            'one_sided': sorted(self.one_sided),
            'inter_osculating': sorted(list(p) for p in self.inter_osculating),
            'clean': self.clean,
        }


class CubeComplex:
    """
    A finite cube complex given by vertices, oriented edges and cubes of dimension >= 2
    """

    def __init__(self, vertices=(), edges=None, cubes=()):
        self._vertices = tuple(vertices)
        self._edges = dict(edges or {})
        self._cubes = tuple(cubes)

        vertex_set = set(self._vertices)
        for key, (tail, head) in self._edges.items():
            if tail not in vertex_set or head not in vertex_set:
                raise InvalidBunchError(f"edge {format_key(key)} has an unknown endpoint",
                                        code='invalid-argument')
        for cube in self._cubes:
            for (k, c), key in cube.edge_keys:
                tail, head = self._edges[key]
                ends = {cube.corners[c], cube.corners[c | 1 << k]}
                if {tail, head} != ends:
                    raise InvalidBunchError(f"cube {format_key(cube.key)} has a misattached edge",
                                            code='invalid-argument')

    @classmethod
    def from_squares(cls, vertices, edges, squares):
        """
        Build a square complex by hand

        Args:
            vertices: Vertex keys
            edges: Mapping edge key -> (tail, head)
            squares: Iterable of (key, (c0, c1, c2, c3), {(direction, base): edge key})

        Returns:
            CubeComplex
        """
        cubes = [Cube(key, tuple(corners), tuple(sorted(edge_keys.items())))
                 for key, corners, edge_keys in squares]
        return cls(vertices, edges, cubes)

    @property
    def vertices(self):
        return self._vertices

    @property
    def edges(self):
        return self._edges

    @property
    def cubes(self):
        return self._cubes

    @property
    def dimension(self):
        if self._cubes:
            return max(c.dim for c in self._cubes)
        if self._edges:
            return 1
        return 0 if self._vertices else -1

    def squares(self):
        return [c for c in self._cubes if c.dim == 2]

    def cells(self, d):
        if d == 0:
            return list(self._vertices)
        if d == 1:
            return list(self._edges)
        return [c.key for c in self._cubes if c.dim == d]

    def cell_counts(self, upto=None):
        top = max(self.dimension, 0) if upto is None else upto
        return tuple(len(self.cells(d)) for d in range(top + 1))

    def euler_characteristic(self):
        return sum((-1) ** d * n for d, n in enumerate(self.cell_counts()))

    @cached_property
    def cell_keys(self):
        """Every cell key of every dimension"""
        return frozenset(self._vertices) | frozenset(self._edges) | frozenset(c.key for c in self._cubes)

    def is_empty(self):
        return not self._vertices

    def __contains__(self, key):
        return key in self.cell_keys

    def __repr__(self):
        counts = '/'.join(str(n) for n in self.cell_counts())
        return f'<CubeComplex cells {counts}>'

    def to_dict(self):
        top = max(self.dimension, 0)
        return {
            'dimension': self.dimension,
            'counts': list(self.cell_counts()),
            'cells': {str(d): [format_key(k) for k in self.cells(d)] for d in range(top + 1)},
        }
