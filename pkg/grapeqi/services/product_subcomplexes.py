"""
Product Subcomplex Service
Brute-force maximal product subcomplexes of UD_2, their union UP_2, local
convexity, and the twig correspondence and intersection checks for grapes
"""
import logging
from collections import Counter
from itertools import combinations

import networkx as nx

from grapeqi.errors import PreconditionError
from grapeqi.guards import SizeGuards
from grapeqi.models import ProductPair
from grapeqi.services.configuration_space import (
    ConfigurationSpaceService, base_cells, complex_from_cells,
)
from grapeqi.services.intersection_complex import IntersectionComplexService

logger = logging.getLogger(__name__)


def product_cells(pair):
    """2-configurations {s1, s2} with s1 a cell of one factor and s2 of the other"""
    left, right = base_cells(pair.left), base_cells(pair.right)
    return frozenset(tuple(sorted((a, b))) for a in left for b in right)


class ProductSubcomplexService:
    """
    Maximal product subcomplexes and UP_2 for small base graphs
    """

    def __init__(self, guards=None, spaces=None):
        """
        Initialize product subcomplex service

        Args:
            guards: SizeGuards bounding the edge-subset enumeration
            spaces: ConfigurationSpaceService for UD_2 and realization
        """
        self.guards = guards or SizeGuards()
        self.spaces = spaces or ConfigurationSpaceService(self.guards)
        self.intersections = IntersectionComplexService(self.guards)

    def leafless_subgraphs(self, base):
        """
        Connected subgraphs with minimum degree >= 2

        Args:
            base: SimpleGraph with at most products_max_edges edges

        Returns:
            List of edge frozensets
        """
        self.guards.check('products_max_edges', base.number_of_edges)
        edges = base.edges
        found = []
        for mask in range(1, 1 << len(edges)):
            chosen = [edges[i] for i in range(len(edges)) if mask >> i & 1]
            degree = Counter(v for e in chosen for v in e)
            if min(degree.values()) < 2:
                continue
            if not nx.is_connected(nx.Graph(chosen)):
                continue
            found.append(frozenset(chosen))
        return found

    def maximal_products(self, base):
        """
        Inclusion-maximal pairs of disjoint connected leafless subgraphs

        Args:
            base: SimpleGraph

        Returns:
            List of ProductPair, sorted
        """
        subgraphs = self.leafless_subgraphs(base)
        vertex_sets = [frozenset(v for e in s for v in e) for s in subgraphs]
        pairs = [
            (subgraphs[i], subgraphs[j])
            for i, j in combinations(range(len(subgraphs)), 2)
            if not vertex_sets[i] & vertex_sets[j]
        ]

        def dominated(p, q):
            return p != q and ((p[0] <= q[0] and p[1] <= q[1]) or (p[0] <= q[1] and p[1] <= q[0]))

        maximal = [p for p in pairs if not any(dominated(p, q) for q in pairs)]
        result = sorted(
            (ProductPair(base.edge_subgraph(a), base.edge_subgraph(b)) for a, b in maximal),
            key=lambda p: (p.left.edges, p.right.edges),
        )
        logger.debug("%r has %d maximal product pairs", base, len(result))
        return result

    def up2(self, base):
        """
        Union of all maximal product subcomplexes of UD_2(base)

        Returns:
            CubeComplex (empty when there is no product pair)
        """
        cells = set()
        for pair in self.maximal_products(base):
            cells |= product_cells(pair)
        return complex_from_cells(cells)

    def local_convexity_up2(self, base):
        """
        Check that UP_2 is locally convex in UD_2

        Returns:
            (ok, diagnostics) mapping UP_2 vertices to the missing squares of UD_2
        """
        self.guards.check('ud2_max_vertices', base.number_of_vertices)
        ud2 = self.spaces.build_udn(base, 2)
        up2 = self.up2(base)
        diagnostics = {}
        for square in ud2.squares():
            if square.key in up2:
                continue
            for c, corner in enumerate(square.corners):
                if corner not in up2:
                    continue
                at = [key for _, key in square.edges_at_corner(c)]
                if all(key in up2 for key in at):
                    diagnostics.setdefault(corner, []).append(square.key)
        return not diagnostics, diagnostics

    # Grape-specific checks

    def _require_large_normal(self, g):
        cls = g.classify()
        if not (cls.large and cls.normal):
            raise PreconditionError("bunch must be large and normal", code='not-normal')

    def predicted_pair(self, g, path):
        """Realized P-components of a path substem as an unordered pair of edge sets"""
        sides = g.substem_components(path)
        realized = [self.spaces.realize_grape(side) for side in sides]
        return ProductPair(realized[0], realized[1])

    def twig_correspondence(self, g):
        """
        Match each twig with its brute-force maximal product pair

        Returns:
            (matching dict twig id -> ProductPair or None, list of unmatched pairs)
        """
        self._require_large_normal(g)
        base = self.spaces.realize_grape(g)
        pairs = self.maximal_products(base)
        remaining = list(pairs)
        matching = {}
        for t in g.twigs():
            predicted = self.predicted_pair(g, t)
            hits = [p for p in remaining if p.edge_sets() == predicted.edge_sets()]
            matching[t.id] = hits[0] if len(hits) == 1 else None
            if len(hits) == 1:
                remaining.remove(hits[0])
        return matching, remaining

    def twig_correspondence_check(self, g):
        """Brute-force maximal products are in bijection with twigs"""
        matching, unmatched = self.twig_correspondence(g)
        ok = all(p is not None for p in matching.values()) and not unmatched
        if not ok:
            logger.warning("twig correspondence failed for %r", g)
        return ok

    def intersection_lemma_check(self, g, twig_set):
        """
        Intersect the maximal product subcomplexes of the given twigs cell-wise

        Returns:
            True iff the intersection is non-empty exactly when the twigs are colinear,
            and then equals the product of the covering path's components
        """
        matching, _ = self.twig_correspondence(g)
        twigs = self.intersections.twigs_by_id(g, twig_set)
        if any(matching[t.id] is None for t in twigs):
            return False
        cells = None
        for t in twigs:
            current = product_cells(matching[t.id])
            cells = current if cells is None else cells & current
        path = self.intersections.covering_path(g, twigs)
        if path is None:
            return not cells
        return cells == product_cells(self.predicted_pair(g, path))

