"""
Canonical Forms for loop-labelled trees
AHU-style encodings: a node is "(" + its grape count + sorted child codes + ")"
"""
from dataclasses import dataclass

import networkx as nx


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Isometry-class code of a bunch (or of a rooted bunch)"""

    code: str

    def __str__(self):
        return self.code


def _encode(graph, loops, root):
    codes = {}
    parents = nx.dfs_predecessors(graph, root)
    children = {}
    for child, parent in parents.items():
        children.setdefault(parent, []).append(child)
    for node in nx.dfs_postorder_nodes(graph, root):
        inner = ''.join(sorted(codes[c] for c in children.get(node, ())))
        codes[node] = f'({loops[node]}{inner})'
    return codes[root]


def stem_center(stem):
    """
    Center vertices and radius of a stem

    Args:
        stem: Stem

    Returns:
        (centers, radius) with one or two center vertices; radius is d/2 for even
        diameter d and (d + 1)/2 for odd d
    """
    if stem.number_of_vertices == 1:
        return tuple(stem.vertices), 0
    d = nx.diameter(stem.graph)
    centers = tuple(sorted(nx.center(stem.graph)))
    radius = d // 2 if d % 2 == 0 else (d + 1) // 2
    return centers, radius


def rooted_canonical_form(g, root):
    """
    Code that is equal for two rooted bunches iff a loop-preserving isometry maps root to root
    """
    g.stem.check_vertex(root)
    return CanonicalForm('R' + _encode(g.stem.graph, g.loops, root))


def canonical_form(g):
    """
    Code that is equal for two bunches iff their stems are isomorphic preserving grape counts.
    Rooted at the stem center; an edge center is encoded as the sorted pair of its half-trees.
    """
    centers, _ = stem_center(g.stem)
    if len(centers) == 1:
        return CanonicalForm('V' + _encode(g.stem.graph, g.loops, centers[0]))

    a, b = centers
    halves = nx.Graph(g.stem.graph)
    halves.remove_edge(a, b)
    pair = sorted([_encode(halves, g.loops, a), _encode(halves, g.loops, b)])
    return CanonicalForm('E' + ''.join(pair))
