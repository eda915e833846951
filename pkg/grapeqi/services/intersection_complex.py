"""
Intersection Complex Service
Builds the labelled reduced intersection complex of a large normal bunch,
its truncations and the path-stem trichotomy
"""
import logging
from itertools import combinations

import networkx as nx

from grapeqi.errors import PreconditionError
from grapeqi.guards import SizeGuards
from grapeqi.models import PathSubstem, ReducedIntersectionComplex, RISimplex, Twig, coarse_type

logger = logging.getLogger(__name__)


class IntersectionComplexService:
    """
    Reduced intersection complex RI(UP_2) for bunches of grapes
    """

    def __init__(self, guards=None):
        self.guards = guards or SizeGuards()

    def _require_large_normal(self, g):
        cls = g.classify()
        if not cls.large:
            raise PreconditionError("bunch is not large", code='not-large')
        if not cls.normal:
            raise PreconditionError("bunch is not normal", code='not-normal')

    def covering_path(self, g, twigs):
        """
        Minimal path substem containing every twig

        Args:
            g: GrapeBunch
            twigs: Iterable of Twig

        Returns:
            PathSubstem, or None when the twigs are not colinear
        """
        twigs = list(twigs)
        if not twigs:
            raise PreconditionError("empty twig set", code='invalid-argument')
        terminals = sorted({v for t in twigs for v in t.path})
        graph = g.stem.graph
        span = set()
        for other in terminals[1:]:
            span.update(nx.shortest_path(graph, terminals[0], other))
        span.update(terminals)
        sub = graph.subgraph(span)
        if any(d > 2 for _, d in sub.degree):
            return None
        ends = sorted(v for v, d in sub.degree if d <= 1)
        if len(ends) == 1:
            return None
        return PathSubstem(tuple(nx.shortest_path(sub, ends[0], ends[-1])))

    def _oriented(self, path, twigs):
        position = {e: i for i, e in enumerate(path.edges)}
        ordered = sorted(twigs, key=lambda t: position[t.edges[0]])
        forward = [t.id for t in ordered]
        backward = list(reversed(forward))
        if backward < forward:
            return tuple(backward), path.reversed()
        return tuple(forward), path

    def _simplex(self, g, twigs, path):
        order, path = self._oriented(path, twigs)
        sides = g.substem_sides(path)
        ranks = tuple(g.loops_sum(side) for side in sides)
        return RISimplex(order, path, ranks, sides)

    def twigs_by_id(self, g, twig_ids):
        lookup = {t.id: t for t in g.twigs()}
        twigs = []
        for tid in twig_ids:
            tid = tid.id if isinstance(tid, Twig) else tid
            if tid not in lookup:
                raise PreconditionError(f"{tid} is not a twig of the bunch", code='not-a-twig')
            twigs.append(lookup[tid])
        return twigs

    def build_ri(self, g):
        """
        Build RI(UP_2(g))

        Args:
            g: Large, normal GrapeBunch

        Returns:
            ReducedIntersectionComplex whose simplices are the colinear twig sets
        """
        self._require_large_normal(g)
        self.guards.check('ri_max_path_length', g.stem.diameter())

        twigs = g.twigs()
        by_edge = {t.edges[0]: t for t in twigs}
        graph = g.stem.graph
        simplices = []
        # every simplex has a unique covering path: its two end twigs plus any interior ones
        for u, w in combinations(sorted(graph.nodes), 2):
            path = PathSubstem(tuple(nx.shortest_path(graph, u, w)))
            path_twigs = [by_edge[e] for e in path.edges]
            first, last = path_twigs[0], path_twigs[-1]
            interior = path_twigs[1:-1]
            for r in range(len(interior) + 1):
                for chosen in combinations(interior, r):
                    members = [first] + list(chosen) + ([last] if last != first else [])
                    simplices.append(self._simplex(g, members, path))
        ri = ReducedIntersectionComplex(twigs, simplices)
        logger.debug("built RI with f-vector %s", ri.f_vector())
        return ri

    def simplex_label(self, g, twig_set):
        """
        Rank pair and coarse type of a colinear twig set

        Returns:
            ((m1, m2), qi_type) with m1 <= m2 and qi_type in Z×Z, Z×F2, F2×F2
        """
        self._require_large_normal(g)
        twigs = self.twigs_by_id(g, twig_set)
        path = self.covering_path(g, twigs)
        if path is None:
            raise PreconditionError("twigs are not colinear", code='not-colinear')
        simplex = self._simplex(g, twigs, path)
        return simplex.rank_pair, coarse_type(simplex.ranks)

    def canonical_order(self, ri, simplex):
        """Twigs of a simplex in order along its covering path"""
        ids = [t.id if isinstance(t, Twig) else t for t in simplex]
        return list(ri.simplex(ids).twigs)

    def ri_truncate(self, ri, k):
        """
        Keep the simplices whose covering path has length <= k

        Args:
            ri: ReducedIntersectionComplex
            k: Integer >= 2

        Returns:
            ReducedIntersectionComplex
        """
        if k < 2:
            raise PreconditionError("truncation level must be at least 2", code='invalid-argument')
        kept = [s for s in ri.simplices if s.path.length <= k]
        return ReducedIntersectionComplex(ri.twigs, kept)

    def trichotomy(self, g):
        """
        Path stem iff RI is a full simplex; otherwise exhibit K_m in RI_{<=2}

        Returns:
            (verdict, witness) with verdict 'path-stem-and-simplex' or 'not-simply-connected'
        """
        self._require_large_normal(g)
        ri = self.build_ri(g)
        is_path = g.stem.is_path()
        if is_path != ri.is_full_simplex():
            raise PreconditionError("stem shape and RI disagree", code='not-simplicial')
        if is_path:
            return 'path-stem-and-simplex', {'simplex': list(ri.vertices)}

        hub = max(g.vertices, key=lambda v: (g.stem.valence(v), v))
        star = sorted(t.id for t in g.twigs() if hub in t.endpoints)
        low = self.ri_truncate(ri, 2)
        if not all(pair in low for pair in combinations(star, 2)):
            raise PreconditionError(f"twigs at {hub} do not span a complete graph",
                                    code='not-simplicial')
        return 'not-simply-connected', {
            'vertex': hub,
            'complete_graph': len(star),
            'twigs': star,
        }
