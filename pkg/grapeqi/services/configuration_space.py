"""
Configuration Space Service
Discrete configuration spaces UD_n of simple graphs as cube complexes, with
link, hyperplane and homology diagnostics
"""
import logging
from collections import defaultdict
from itertools import combinations

import networkx as nx
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from grapeqi.errors import PreconditionError
from grapeqi.guards import SizeGuards
from grapeqi.models import Cube, CubeComplex, HyperplaneReport, SimpleGraph, edge_key, format_key

logger = logging.getLogger(__name__)


def base_cells(graph):
    """Closed cells of a graph as members: vertices (v,) and edges (u, w)"""
    return [(v,) for v in graph.vertices] + list(graph.edges)


def configuration_vertex(cell, corner):
    """0-cell reached from a configuration cell by sending edge member k to its end bit k of corner"""
    edges = [m for m in cell if len(m) == 2]
    points = [m for m in cell if len(m) == 1]
    for k, e in enumerate(edges):
        points.append((e[(corner >> k) & 1],))
    return tuple(sorted(points))


def complex_from_cells(cells):
    """
    Assemble a cube complex from configuration cells (sorted member tuples)

    Args:
        cells: Iterable of cells; each cell is a sorted tuple of members

    Returns:
        CubeComplex with edges oriented from the smaller endpoint choice
    """
    by_dim = defaultdict(list)
    for cell in cells:
        by_dim[sum(1 for m in cell if len(m) == 2)].append(cell)
    for d in by_dim:
        by_dim[d].sort()

    edges = {}
    for cell in by_dim.get(1, []):
        edges[cell] = (configuration_vertex(cell, 0), configuration_vertex(cell, 1))

    cubes = []
    for d in sorted(k for k in by_dim if k >= 2):
        for cell in by_dim[d]:
            members = [m for m in cell if len(m) == 2]
            points = [m for m in cell if len(m) == 1]
            corners = tuple(configuration_vertex(cell, c) for c in range(1 << d))
            edge_keys = []
            for k in range(d):
                for c in range(1 << d):
                    if c & (1 << k):
                        continue
                    face = list(points) + [members[k]]
                    face += [(e[(c >> j) & 1],) for j, e in enumerate(members) if j != k]
                    edge_keys.append(((k, c), tuple(sorted(face))))
            cubes.append(Cube(cell, corners, tuple(edge_keys)))

    return CubeComplex(by_dim.get(0, []), edges, cubes)


class ConfigurationSpaceService:
    """
    Builds UD_n(graph) and certifies its structure by brute force
    """

    def __init__(self, guards=None):
        self.guards = guards or SizeGuards()

    # Graphs

    def realize_grape(self, g):
        """
        Simple graph of a bunch: stem edges plus l(v) triangles at each vertex

        Args:
            g: GrapeBunch (restrictions allowed)

        Returns:
            SimpleGraph; grape vertices are named <v>~g<i>a and <v>~g<i>b
        """
        vertices = set(g.vertices)
        edges = list(g.stem.edges)
        for v in g.vertices:
            for i in range(g.loop(v)):
                a, b = f'{v}~g{i}a', f'{v}~g{i}b'
                if a in g.stem or b in g.stem:
                    raise PreconditionError(f"grape vertex id {a!r} collides with a stem vertex",
                                            code='invalid-argument')
                vertices |= {a, b}
                edges += [(v, a), (a, b), (b, v)]
        return SimpleGraph(vertices, edges)

    def _chains(self, graph):
        """Maximal paths through bivalent vertices: (start, end, edges)"""
        nxg = graph.graph
        essential = {v for v in nxg if nxg.degree(v) != 2}
        seen = set()
        chains = []
        for start in sorted(essential):
            for nxt in sorted(nxg.neighbors(start)):
                if edge_key(start, nxt) in seen:
                    continue
                path = [start, nxt]
                seen.add(edge_key(start, nxt))
                while path[-1] not in essential:
                    prev, cur = path[-2], path[-1]
                    (step,) = [w for w in nxg.neighbors(cur) if w != prev]
                    seen.add(edge_key(cur, step))
                    path.append(step)
                chains.append(path)
        # components that are bare cycles have no essential vertex
        for v in sorted(nxg):
            for w in sorted(nxg.neighbors(v)):
                if edge_key(v, w) in seen:
                    continue
                path = [v, w]
                seen.add(edge_key(v, w))
                while path[-1] != v:
                    prev, cur = path[-2], path[-1]
                    (step,) = [u for u in nxg.neighbors(cur) if u != prev]
                    seen.add(edge_key(cur, step))
                    path.append(step)
                chains.append(path)
        return chains

    def subdivision_violations(self, graph, n):
        """
        Conditions of sufficient subdivision that fail

        Returns:
            List of messages; empty when every path between non-bivalent vertices
            has >= n - 1 edges and every cycle has >= n + 1 edges
        """
        problems = []
        for path in self._chains(graph):
            length = len(path) - 1
            if path[0] == path[-1]:
                if length < n + 1:
                    problems.append(f"cycle through {path[0]} has {length} < {n + 1} edges")
            elif length < n - 1:
                problems.append(f"path {path[0]}..{path[-1]} has {length} < {n - 1} edges")
        # a cycle through two or more chains already has >= 2(n - 1) >= n + 1 edges
        return sorted(set(problems))

    def subdivide_for(self, graph, n):
        """
        Minimally subdivide so that UD_n(graph) carries the n-braid group

        Args:
            graph: Simple connected SimpleGraph
            n: Number of particles, >= 2

        Returns:
            SimpleGraph; new vertices are named <u>~<w>~s<i>
        """
        if n < 2:
            raise PreconditionError("need at least two particles", code='invalid-argument')
        if n == 2:
            return graph

        vertices = set(graph.vertices)
        edges = []
        for path in self._chains(graph):
            k = len(path) - 1
            needed = n + 1 if path[0] == path[-1] else n - 1
            pieces = [1] * k
            if k < needed:
                extra = needed - k
                pieces = [1 + extra // k + (1 if i < extra % k else 0) for i in range(k)]
            for (u, w), parts in zip(zip(path, path[1:]), pieces):
                if parts == 1:
                    edges.append((u, w))
                    continue
                a, b = edge_key(u, w)
                chain = [a] + [f'{a}~{b}~s{i}' for i in range(1, parts)] + [b]
                vertices.update(chain)
                edges.extend(zip(chain, chain[1:]))
        result = SimpleGraph(vertices, edges)
        logger.debug("subdivided %r to %r for n=%d", graph, result, n)
        return result

    # Configuration spaces

    def _enumerate_cells(self, graph, n):
        cells = base_cells(graph)
        closure = [frozenset(c) for c in cells]
        found = []

        def extend(start, chosen, used):
            if len(chosen) == n:
                found.append(tuple(sorted(cells[i] for i in chosen)))
                self.guards.check('max_cells', len(found))
                return
            for i in range(start, len(cells)):
                if closure[i] & used:
                    continue
                extend(i + 1, chosen + [i], used | closure[i])

        extend(0, [], frozenset())
        return found

    def build_udn(self, graph, n):
        """
        Unordered discrete configuration space of n points

        Args:
            graph: Simple graph; for n >= 3 it must be sufficiently subdivided
            n: Number of particles, >= 2

        Returns:
            CubeComplex whose d-cells are the configurations with d edge members
        """
        if n < 2:
            raise PreconditionError("need at least two particles", code='invalid-argument')
        if n == 2:
            self.guards.check('ud2_max_vertices', graph.number_of_vertices)
        else:
            self.guards.check('udn_max_vertices', graph.number_of_vertices)
            problems = self.subdivision_violations(graph, n)
            if problems:
                raise PreconditionError(
                    "graph is not sufficiently subdivided: " + '; '.join(problems),
                    code='insufficient-subdivision')
        cc = complex_from_cells(self._enumerate_cells(graph, n))
        logger.debug("UD_%d of %r has cells %s", n, graph, cc.cell_counts())
        return cc

    # Diagnostics

    def vertex_links(self, cc):
        """Simplices of each vertex link: one per cube corner, as a set of edge ends"""
        links = defaultdict(list)
        for key, (tail, head) in cc.edges.items():
            links[tail].append(((key, 0),))
            links[head].append(((key, 1),))
        for cube in cc.cubes:
            for c, corner in enumerate(cube.corners):
                ends = []
                for _, key in cube.edges_at_corner(c):
                    ends.append((key, 0 if cc.edges[key][0] == corner else 1))
                links[corner].append(tuple(sorted(ends)))
        return links

    def links_ok(self, cc):
        """
        Link condition at every vertex

        Returns:
            (ok, diagnostics) where diagnostics maps vertex keys to problem strings.
            Links must be simplicial (no repeated or degenerate simplices) and flag;
            for square complexes this is simple and triangle-free.
        """
        diagnostics = {}
        links = self.vertex_links(cc)
        for vertex in cc.vertices:
            problems = []
            simplices = links.get(vertex, [])
            seen = set()
            faces = set()
            for s in simplices:
                if len(set(s)) != len(s):
                    problems.append(f"degenerate corner {s}")
                key = frozenset(s)
                if key in seen and len(s) > 1:
                    problems.append(f"repeated link simplex on {sorted(format_key(e[0]) for e in s)}")
                seen.add(key)
                for r in range(1, len(s) + 1):
                    faces.update(frozenset(f) for f in combinations(s, r))
            skeleton = nx.Graph()
            skeleton.add_nodes_from({e for s in simplices for e in s})
            skeleton.add_edges_from(tuple(s) for s in simplices if len(s) == 2)
            for clique in nx.find_cliques(skeleton):
                if len(clique) >= 3 and frozenset(clique) not in faces:
                    problems.append(f"empty simplex on {len(clique)} link vertices (not flag)")
            if problems:
                diagnostics[vertex] = problems
        return not diagnostics, diagnostics

    def hyperplanes(self, cc):
        """
        Parallelism classes of edges with specialness flags

        Returns:
            HyperplaneReport
        """
        parent = {e: e for e in cc.edges}
        parity = {e: 0 for e in cc.edges}

        def find(e):
            path = []
            root = e
            while parent[root] != root:
                path.append(root)
                root = parent[root]
            acc = 0
            for node in reversed(path):
                acc ^= parity[node]
                parity[node] = acc
                parent[node] = root
            return root, (parity[e] if path else 0)

        def sign(cube, k, c, key):
            tail, _ = cc.edges[key]
            return 0 if tail == cube.corners[c] else 1

        inconsistent = set()
        for cube in cc.cubes:
            for k in range(cube.dim):
                base = [(c, cube.edge(k, c)) for c in range(len(cube.corners)) if not c & (1 << k)]
                c0, e0 = base[0]
                s0 = sign(cube, k, c0, e0)
                for c, e in base[1:]:
                    relative = s0 ^ sign(cube, k, c, e)
                    r0, p0 = find(e0)
                    r1, p1 = find(e)
                    if r0 == r1:
                        if p0 ^ p1 != relative:
                            inconsistent.add(r0)
                    else:
                        parent[r1] = r0
                        parity[r1] = p0 ^ p1 ^ relative

        roots = sorted({find(e)[0] for e in cc.edges})
        members = defaultdict(list)
        for e in cc.edges:
            members[find(e)[0]].append(e)
        index = {r: i for i, r in enumerate(roots)}
        classes = tuple(tuple(sorted(members[r])) for r in roots)
        class_of = {e: index[find(e)[0]] for e in cc.edges}
        one_sided = frozenset(index[find(r)[0]] for r in inconsistent)

        self_intersecting = set()
        crossing = set()
        corner_pairs = set()
        for cube in cc.cubes:
            dirs = [class_of[cube.edge(k, 0)] for k in range(cube.dim)]
            for a, b in combinations(range(cube.dim), 2):
                if dirs[a] == dirs[b]:
                    self_intersecting.add(dirs[a])
                else:
                    crossing.add(tuple(sorted((dirs[a], dirs[b]))))
            if cube.dim >= 2:
                for c, corner in enumerate(cube.corners):
                    at = [key for _, key in cube.edges_at_corner(c)]
                    for e, f in combinations(at, 2):
                        corner_pairs.add((corner, frozenset((e, f))))

        incident = defaultdict(list)
        for key, (tail, head) in cc.edges.items():
            incident[tail].append(key)
            incident[head].append(key)

        self_osculating = set()
        osculating = set()
        for vertex, keys in incident.items():
            for e, f in combinations(sorted(keys), 2):
                if (vertex, frozenset((e, f))) in corner_pairs:
                    continue
                ce, cf = class_of[e], class_of[f]
                if ce == cf:
                    self_osculating.add(ce)
                else:
                    osculating.add(tuple(sorted((ce, cf))))

        report = HyperplaneReport(
            classes=classes,
            self_intersecting=frozenset(self_intersecting),
            self_osculating=frozenset(self_osculating),
            one_sided=one_sided,
            inter_osculating=frozenset(osculating & crossing),
        )
        logger.debug("%d hyperplanes, clean=%s", len(classes), report.clean)
        return report

    def is_special(self, cc):
        ok, _ = self.links_ok(cc)
        return ok and self.hyperplanes(cc).clean

    def betti(self, cc):
        """
        Betti numbers b0, b1 over the rationals

        Returns:
            (b0, b1) with b1 = E - V + b0 - rank(boundary of squares)
        """
        skeleton = nx.MultiGraph()
        skeleton.add_nodes_from(cc.vertices)
        skeleton.add_edges_from(cc.edges.values())
        b0 = nx.number_connected_components(skeleton) if cc.vertices else 0

        squares = cc.squares()
        row = {key: i for i, key in enumerate(cc.edges)}
        rank = 0
        if squares and cc.edges:
            entries = defaultdict(dict)
            # walk corners 0 -> 1 -> 3 -> 2 -> 0
            boundary = ((0, 0, 1), (1, 1, 1), (0, 2, -1), (1, 0, -1))
            for j, sq in enumerate(squares):
                for k, c, s in boundary:
                    key = sq.edge(k, c)
                    tail, _ = cc.edges[key]
                    oriented = s if tail == sq.corners[c] else -s
                    i = row[key]
                    entries[i][j] = entries[i].get(j, 0) + oriented
            rows = {i: {j: QQ(v) for j, v in cols.items() if v} for i, cols in entries.items()}
            rows = {i: cols for i, cols in rows.items() if cols}
            if rows:
                matrix = DomainMatrix(rows, (len(row), len(squares)), QQ)
                rank = matrix.rank()
        b1 = len(cc.edges) - len(cc.vertices) + b0 - rank
        return b0, b1
