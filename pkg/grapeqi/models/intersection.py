"""
Reduced Intersection Complex Model
Vertices are twigs; simplices are colinear twig sets labelled by rank pairs
"""
from dataclasses import dataclass

from grapeqi.errors import PreconditionError


def coarse_type(ranks):
    """Coarse quasi-isometry type of F_m1 x F_m2 from the unordered pair (min(m,2), min(m,2))"""
    low, high = sorted(min(m, 2) for m in ranks)
    if high == 1:
        return 'Z×Z'
    if low == 1:
        return 'Z×F2'
    return 'F2×F2'


@dataclass(frozen=True)
class RISimplex:
    """
    A simplex of the reduced intersection complex.

    twigs is the canonical order along the covering path; ranks[i] and
    sides[i] belong to the component containing path.path[0] (i = 0) or
    path.path[-1] (i = 1).
    """

    twigs: tuple
    path: object
    ranks: tuple
    sides: tuple

    @property
    def dim(self):
        return len(self.twigs) - 1

    @property
    def key(self):
        return frozenset(self.twigs)

    @property
    def qi_type(self):
        return coarse_type(self.ranks)

    @property
    def rank_pair(self):
        """Unordered rank pair, smaller rank first"""
        return tuple(sorted(self.ranks))

    @property
    def label(self):
        low, high = self.rank_pair
        return f'({low},{high})'

    def to_dict(self):
        return {
            'twigs': list(self.twigs),
            'path': list(self.path.path),
            'ranks': list(self.ranks),
            'type': self.qi_type,
            'sides': [sorted(s) for s in self.sides],
        }


class ReducedIntersectionComplex:
    """
    Labelled simplicial complex on the twigs of a large normal bunch
    """

    def __init__(self, twigs, simplices):
        self._twigs = tuple(twigs)
        self._simplices = {s.key: s for s in simplices}

    @property
    def vertices(self):
        """Twig ids"""
        return tuple(t.id for t in self._twigs)

    @property
    def twigs(self):
        return self._twigs

    @property
    def simplices(self):
        return sorted(self._simplices.values(), key=lambda s: (s.dim, s.twigs))

    @property
    def dimension(self):
        return max((s.dim for s in self._simplices.values()), default=-1)

    def simplex(self, twig_ids):
        key = frozenset(twig_ids)
        if key not in self._simplices:
            raise PreconditionError(f"no simplex on {sorted(key)}", code='simplex-absent')
        return self._simplices[key]

    def simplices_of_dim(self, d):
        return [s for s in self.simplices if s.dim == d]

    def f_vector(self):
        return tuple(len(self.simplices_of_dim(d)) for d in range(self.dimension + 1))

    def is_full_simplex(self):
        return len(self._simplices) == 2 ** len(self._twigs) - 1

    def is_downward_closed(self):
        for key in self._simplices:
            for t in key:
                face = key - {t}
                if face and face not in self._simplices:
                    return False
        return True

    def one_skeleton_edges(self):
        return [tuple(s.twigs) for s in self.simplices_of_dim(1)]

    def __contains__(self, twig_ids):
        return frozenset(twig_ids) in self._simplices

    def __len__(self):
        return len(self._simplices)

    def __repr__(self):
        return f'<ReducedIntersectionComplex f-vector {self.f_vector()}>'

    def to_dict(self):
        return {
            'vertices': list(self.vertices),
            'dimension': self.dimension,
            'f_vector': list(self.f_vector()),
            'simplices': [s.to_dict() for s in self.simplices],
        }
