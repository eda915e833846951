"""
Quasi-Isometry Decision Service
Free-rank formulas, the decision procedure for 2-braid groups over grapes,
the tree 4-braid reduction and the RAAG criteria
"""
import logging
from itertools import combinations
from math import comb

import networkx as nx

from grapeqi.errors import PreconditionError
from grapeqi.guards import SizeGuards
from grapeqi.models import GrapeBunch, QiClassDescriptor, RaagVerdict, SimpleGraph
from grapeqi.services.canonical import canonical_form
from grapeqi.services.reductions import ReductionService

logger = logging.getLogger(__name__)


def free_rank_formula(n, l):
    """
    Free rank N(n, l) = (n + l)(n + 3l - 3)/2 + 1 of B_2 of an n-star with l grapes at its center
    """
    if n < 0 or l < 0 or n + l < 1:
        raise PreconditionError(f"N({n}, {l}) is undefined; need n + l >= 1", code='invalid-argument')
    return (n + l) * (n + 3 * l - 3) // 2 + 1


def tree_b2_rank(stem):
    """Free rank of B_2 over a tree: sum of binom(val(v) - 1, 2)"""
    return sum(comb(stem.valence(v) - 1, 2) for v in stem.vertices if stem.valence(v) >= 3)


def star_b4_rank(n):
    """Free rank of B_4 over the n-star: binom(n+2, 3)(n-2) - binom(n+2, 4) + 1"""
    if n < 3:
        raise PreconditionError("the 4-braid rank formula needs n >= 3", code='invalid-argument')
    return comb(n + 2, 3) * (n - 2) - comb(n + 2, 4) + 1


class QiDecisionService:
    """
    Decides quasi-isometry of graph braid groups over grapes and trees
    """

    def __init__(self, reductions=None, guards=None):
        """
        Initialize decision service

        Args:
            reductions: ReductionService used for quasi-minimal representatives
            guards: SizeGuards bounding the affine Dynkin search
        """
        self.reductions = reductions or ReductionService()
        self.guards = guards or SizeGuards()

    def grape_count(self, g):
        """Number of grape-bearing vertices"""
        return len(g.grape_vertices())

    def small_rank(self, g):
        """
        Free rank of B_2 over a small bunch

        Args:
            g: GrapeBunch with at most one grape-bearing vertex

        Returns:
            Sum over vertices of N(val_T(v), l(v)), skipping zero contributions
        """
        if g.is_large:
            raise PreconditionError("bunch is large; its 2-braid group is not free",
                                    code='not-small')
        total = 0
        for v in g.vertices:
            val, l = g.stem.valence(v), g.loop(v)
            if val <= 2 and l == 0:
                continue
            total += free_rank_formula(val, l)
        return total

    def is_free_b2(self, g):
        """B_2 over a bunch of grapes is free exactly when the bunch is small"""
        return not g.is_large

    def is_cyclic_b2(self, g):
        return not g.is_large and self.small_rank(g) == 1

    def descriptor(self, g):
        """
        Complete quasi-isometry invariant of B_2(g)

        Returns:
            QiClassDescriptor: Small(min(rank, 2)) or Large(canonical form of the quasi-minimal bunch)
        """
        if self.grape_count(g) <= 1:
            return QiClassDescriptor.small(self.small_rank(g))
        minimal, _ = self.reductions.quasi_minimal(g)
        return QiClassDescriptor.large(canonical_form(minimal))

    def decide_qi(self, g1, g2):
        """
        Decide whether B_2(g1) and B_2(g2) are quasi-isometric

        Returns:
            (verdict, descriptor of g1, descriptor of g2)
        """
        d1, d2 = self.descriptor(g1), self.descriptor(g2)
        verdict = d1 == d2
        logger.debug("decide_qi: %s vs %s -> %s", d1, d2, verdict)
        return verdict, d1, d2

    # Trees and 4-braids

    def grow_from_tree(self, stem):
        """
        Bunch grown from a tree: l(v) = binom(val(v) - 1, 2)

        Args:
            stem: Stem that is not a path

        Returns:
            GrapeBunch over the same stem
        """
        if stem.is_path():
            raise PreconditionError("a path tree grows a grapeless path", code='is-path-tree')
        loops = {v: comb(stem.valence(v) - 1, 2) if stem.valence(v) >= 1 else 0
                 for v in stem.vertices}
        return GrapeBunch(stem, loops)

    def tree4_descriptor(self, stem):
        """Descriptor of B_4 over a tree; path trees have the trivial group Small(0)"""
        if stem.number_of_edges == 0:
            raise PreconditionError("tree has no edges", code='empty-stem')
        if stem.is_path():
            return QiClassDescriptor.small(0)
        return self.descriptor(self.grow_from_tree(stem))

    def decide_qi_tree4(self, t1, t2):
        """Decide whether B_4(t1) and B_4(t2) are quasi-isometric"""
        return self.tree4_descriptor(t1) == self.tree4_descriptor(t2)

    # RAAG criteria

    def find_dynkin_substem(self, g):
        """
        Search four stem leaves spanning an affine Dynkin diagram D~_n (n >= 5)
        whose grape restriction is normal

        Returns:
            Witness dict or None
        """
        self.guards.check('dynkin_max_stem_vertices', g.stem.number_of_vertices)
        graph = g.stem.graph
        for quad in combinations(g.stem.leaves(), 4):
            span = set()
            for other in quad[1:]:
                span.update(nx.shortest_path(graph, quad[0], other))
            sub = graph.subgraph(span)
            branch = sorted(v for v in sub if sub.degree(v) == 3)
            if len(branch) != 2 or any(sub.degree(v) > 3 for v in sub):
                continue
            if not all(sum(1 for u in sub.neighbors(b) if u in quad) == 2 for b in branch):
                continue
            restriction = g.restrict(span)
            if not restriction.classify().normal:
                continue
            return {
                'kind': 'affine-dynkin',
                'n': len(span) - 1,
                'leaves': list(quad),
                'branch_vertices': branch,
                'substem': sorted(span),
            }
        return None

    def raag_qi_check(self, g):
        """
        Apply the sufficient RAAG criteria

        Args:
            g: Large GrapeBunch

        Returns:
            RaagVerdict: qi-to-raag with a path stem, not-qi-to-raag with a D~_n
            substem, or unknown
        """
        if not g.is_large:
            raise PreconditionError("bunch is not large", code='not-large')
        minimal, _ = self.reductions.quasi_minimal(g)
        if minimal.stem.is_path():
            ends = minimal.stem.leaves()
            path = minimal.stem.path_between(ends[0], ends[-1])
            return RaagVerdict('qi-to-raag', {'kind': 'path-stem', 'path': path})
        witness = self.find_dynkin_substem(g)
        if witness:
            return RaagVerdict('not-qi-to-raag', witness)
        return RaagVerdict('unknown')

    def raag_presentation_for_path_stem(self, g):
        """
        Defining graph of the RAAG isomorphic to pi_1(UP_2) for a path stem with one grape per vertex

        Args:
            g: GrapeBunch over a path [v_0, ..., v_n] with l = 1 everywhere

        Returns:
            SimpleGraph on a_0..a_{n-1}, b_1..b_n with a_j - b_k for j < k; the star
            at a_j has leaves b_{j+1}, ..., b_n
        """
        if not g.stem.is_path():
            raise PreconditionError("stem is not a path", code='not-path-stem')
        if any(c != 1 for c in g.loops.values()):
            raise PreconditionError("every vertex must carry exactly one grape", code='nonunit-loops')
        n = g.stem.number_of_edges
        vertices = [f'a{j}' for j in range(n)] + [f'b{k}' for k in range(1, n + 1)]
        edges = [(f'a{j}', f'b{k}') for j in range(n) for k in range(j + 1, n + 1)]
        return SimpleGraph(vertices, edges)
