"""
Reduction Service
Quasi-isometry preserving operations on bunches of grapes and the normal, rich
and quasi-minimal representatives built from them
"""
import logging
from collections import defaultdict
from dataclasses import dataclass

import networkx as nx

from grapeqi.errors import InvalidBunchError, PreconditionError
from grapeqi.models import GrapeBunch, ReductionStep, ReductionTrace, Stem, Twig
from grapeqi.services.canonical import rooted_canonical_form, stem_center

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubstemClass:
    """Isometry class of extended v-hat components at a vertex"""

    vertex: str
    form: object
    members: tuple

    @property
    def overgrown(self):
        return len(self.members) >= 3

    def to_dict(self):
        return {'vertex': self.vertex, 'form': str(self.form),
                'members': list(self.members), 'overgrown': self.overgrown}


class ReductionService:
    """
    Pruning, smoothing, picking/attaching grapes and pruning over-grown substems
    """

    def _require(self, g, large=True, normal=False, rich=False):
        cls = g.classify()
        if large and not cls.large:
            raise PreconditionError("bunch is not large (needs two grape-bearing vertices)",
                                    code='not-large')
        if normal and not cls.normal:
            raise PreconditionError("bunch is not normal (some vertex has grape-valence < 3)",
                                    code='not-normal')
        if rich and not cls.rich:
            raise PreconditionError("bunch is not rich (some vertex carries no grape)",
                                    code='not-rich')

    def _step(self, kind, location, before, after):
        logger.debug("%s at %s: %s -> %s", kind, location, before.summary(), after.summary())
        return ReductionStep(kind, tuple(location), before.summary(), after.summary())

    def _remove(self, g, removed):
        remaining = set(g.stem.vertices) - set(removed)
        stem = g.stem.induced(remaining)
        return GrapeBunch(stem, {v: g.loops[v] for v in remaining}, metadata=g.metadata)

    # Twig operations

    def prune_empty_twig(self, g, t):
        """
        Remove an empty twig together with its grapeless outer endpoint

        Args:
            g: Large GrapeBunch
            t: Empty twig of g

        Returns:
            GrapeBunch over the stem induced by V(T) minus {v_1, ..., v_k}
        """
        t = g.check_twig(t)
        ends = [v for v in t.endpoints if g.grape_valence(v) == 1]
        if not ends:
            raise PreconditionError(f"twig {t.id} is not empty", code='not-empty-twig')
        self._require(g)
        path = t.path if ends[0] == t.path[-1] else tuple(reversed(t.path))
        try:
            return self._remove(g, path[1:])
        except InvalidBunchError as exc:
            raise PreconditionError(f"pruning {t.id} leaves a path graph: input was not large",
                                    code='not-large') from exc

    def smooth_twig(self, g, t):
        """Replace a twig of length >= 2 by a single edge"""
        t = g.check_twig(t)
        if t.length < 2:
            raise PreconditionError(f"twig {t.id} has length 1", code='twig-too-short')
        interior = set(t.interior)
        first, last = t.endpoints
        edges = [e for e in g.stem.edges if not interior & set(e)] + [(first, last)]
        vertices = set(g.stem.vertices) - interior
        return GrapeBunch(Stem(vertices, edges), {v: g.loops[v] for v in vertices},
                          metadata=g.metadata)

    # Grape operations

    def is_overgrown_grape(self, g, v):
        """A grape at v is over-grown when l(v) >= 1 and l(v) + val_T(v) >= 4"""
        return g.loop(v) >= 1 and g.loop(v) + g.stem.valence(v) >= 4

    def pick_grape(self, g, v, count=1):
        """
        Remove over-grown grapes at v one after another

        Args:
            g: Large, normal GrapeBunch
            v: Stem vertex
            count: Number of grapes picked; each must be over-grown when it is removed

        Returns:
            GrapeBunch with l(v) lowered by count
        """
        self._require(g, normal=True)
        if count < 1:
            raise PreconditionError("pick at least one grape", code='invalid-argument')
        last = g.loop(v) - count + 1
        if last < 1 or last + g.stem.valence(v) < 4:
            raise PreconditionError(f"the grapes at {v} are not over-grown", code='not-overgrown')
        result = g.with_loops({v: g.loop(v) - count})
        if not result.is_large:
            raise PreconditionError(f"picking at {v} would leave a small bunch", code='not-large')
        return result

    def attach_grape(self, g, v, count=1):
        """Attach grapes at v (inverse of picking)"""
        self._require(g, normal=True)
        if count < 1:
            raise PreconditionError("attach at least one grape", code='invalid-argument')
        return g.with_loops({v: g.loop(v) + count})

    # Representatives

    def normal_representative(self, g):
        """
        Prune empty twigs to a fixpoint, then smooth every twig of length >= 2

        Args:
            g: Large GrapeBunch

        Returns:
            (normal GrapeBunch, ReductionTrace)
        """
        self._require(g)
        steps = []
        while True:
            empty = [t for t in g.twigs() if g.is_empty_twig(t)]
            if not empty:
                break
            after = self.prune_empty_twig(g, empty[0])
            steps.append(self._step('prune-empty-twig', empty[0].path, g, after))
            g = after

        for t in [t for t in g.twigs() if t.length >= 2]:
            after = self.smooth_twig(g, t)
            steps.append(self._step('smooth-twig', t.path, g, after))
            g = after

        return g, ReductionTrace(tuple(steps))

    def rich_representative(self, g):
        """
        Set l(v) to min(l(v), 2) on stem leaves and to 1 elsewhere

        Args:
            g: Large, normal GrapeBunch

        Returns:
            (rich GrapeBunch over the same stem, ReductionTrace)
        """
        self._require(g, normal=True)
        targets = {
            v: min(g.loop(v), 2) if g.stem.valence(v) == 1 else 1
            for v in g.vertices
        }
        steps = []
        # attach first so every intermediate bunch stays large
        for v in g.vertices:
            count = targets[v] - g.loop(v)
            if count > 0:
                after = self.attach_grape(g, v, count)
                steps.append(self._step('attach-grape', (v, count), g, after))
                g = after
        for v in g.vertices:
            count = g.loop(v) - targets[v]
            if count > 0:
                after = self.pick_grape(g, v, count)
                steps.append(self._step('pick-grape', (v, count), g, after))
                g = after
        return g, ReductionTrace(tuple(steps))

    # Over-grown substems

    def overgrown_substem_classes(self, g, v, exclude_toward=None):
        """
        Group extended v-hat components by rooted isometry at v

        Args:
            g: Large GrapeBunch
            v: Stem vertex
            exclude_toward: Optional vertex; the component containing it is skipped

        Returns:
            List of SubstemClass sorted by form; classes of size >= 3 are over-grown
        """
        self._require(g)
        g.stem.check_vertex(v)
        groups = defaultdict(list)
        for component, attach in g.hat_components(v):
            if exclude_toward is not None and exclude_toward in component.stem:
                continue
            form = rooted_canonical_form(g.extended_component(v, attach), v)
            groups[form].append(attach)
        return [SubstemClass(v, form, tuple(sorted(members)))
                for form, members in sorted(groups.items())]

    def _prune_branches(self, g, v, removed):
        doomed = set()
        for attach in removed:
            doomed |= g.hat_component_vertices(v, attach)
        return self._remove(g, doomed)

    def prune_overgrown_substems_at(self, g, v, exclude_toward=None):
        """
        Reduce every over-grown class at v to its two smallest members

        Args:
            g: Large, rich GrapeBunch
            v: Stem vertex
            exclude_toward: Optional vertex whose side is left alone

        Returns:
            (GrapeBunch, ReductionTrace)
        """
        self._require(g, rich=True)
        steps = []
        for cls in self.overgrown_substem_classes(g, v, exclude_toward):
            if not cls.overgrown:
                continue
            removed = cls.members[2:]
            after = self._prune_branches(g, v, removed)
            steps.append(self._step('prune-substem', (v, removed), g, after))
            g = after
        return g, ReductionTrace(tuple(steps))

    def _sphere_sweep(self, g):
        centers, radius = stem_center(g.stem)
        graph = g.stem.graph
        per_center = {c: nx.single_source_shortest_path_length(graph, c) for c in centers}
        # an edge center measures distance from the nearer endpoint
        distance = {u: min(d[u] for d in per_center.values()) for u in graph}

        trace = ReductionTrace()
        for i in range(radius - 1, -1, -1):
            for x in sorted(u for u, d in distance.items() if d == i):
                if x not in g.stem:
                    continue
                if x in centers:
                    others = [c for c in centers if c != x]
                    toward = others[0] if others else None
                else:
                    toward = min(centers, key=lambda c: (per_center[c][x], c))
                g, steps = self.prune_overgrown_substems_at(g, x, exclude_toward=toward)
                trace = trace.extend(steps)
        return g, trace

    def _unrestricted_pass(self, g):
        for x in g.vertices:
            if any(cls.overgrown for cls in self.overgrown_substem_classes(g, x)):
                logger.info("pruning over-grown class at %s beyond the sphere schedule", x)
                return self.prune_overgrown_substems_at(g, x)
        return g, ReductionTrace()

    def quasi_minimal(self, g):
        """
        Quasi-minimal representative: normal, then rich, then substem pruning
        from the outermost sphere around the stem center inward, to a fixpoint

        Args:
            g: Large GrapeBunch

        Returns:
            (GrapeBunch, ReductionTrace)
        """
        self._require(g)
        g, trace = self.normal_representative(g)
        g, rich_trace = self.rich_representative(g)
        trace = trace.extend(rich_trace)
        while True:
            g, sweep = self._sphere_sweep(g)
            trace = trace.extend(sweep)
            if len(sweep):
                continue
            g, extra = self._unrestricted_pass(g)
            trace = trace.extend(extra)
            if not len(extra):
                return g, trace

    def quasi_minimal_by_schedule(self, g, rng):
        """
        Quasi-minimal representative by pruning at randomly chosen vertices

        Args:
            g: Large GrapeBunch
            rng: numpy Generator choosing vertex, class and the two kept members

        Returns:
            (GrapeBunch, ReductionTrace)
        """
        g, trace = self.normal_representative(g)
        g, rich_trace = self.rich_representative(g)
        trace = trace.extend(rich_trace)
        while True:
            candidates = [
                cls for x in g.vertices
                for cls in self.overgrown_substem_classes(g, x) if cls.overgrown
            ]
            if not candidates:
                return g, trace
            cls = candidates[int(rng.integers(len(candidates)))]
            order = [cls.members[i] for i in rng.permutation(len(cls.members))]
            removed = tuple(sorted(order[2:]))
            after = self._prune_branches(g, cls.vertex, removed)
            trace = trace.append(self._step('prune-substem', (cls.vertex, removed), g, after))
            g = after

    def legal_steps(self, g):
        """
        Every single operation applicable to g

        Args:
            g: Large GrapeBunch

        Returns:
            List of (ReductionStep, resulting GrapeBunch)
        """
        self._require(g)
        cls = g.classify()
        results = []

        def record(kind, location, after):
            results.append((self._step(kind, location, g, after), after))

        for t in g.twigs():
            if g.is_empty_twig(t):
                try:
                    record('prune-empty-twig', t.path, self.prune_empty_twig(g, t))
                except PreconditionError:
                    pass
            if t.length >= 2:
                record('smooth-twig', t.path, self.smooth_twig(g, t))
        if cls.normal:
            for v in g.vertices:
                if self.is_overgrown_grape(g, v) and g.with_loops({v: g.loop(v) - 1},
                                                                  allow_path=True).is_large:
                    record('pick-grape', (v, 1), self.pick_grape(g, v))
        if cls.rich:
            for v in g.vertices:
                for substems in self.overgrown_substem_classes(g, v):
                    if substems.overgrown:
                        removed = substems.members[2:]
                        record('prune-substem', (v, removed), self._prune_branches(g, v, removed))
        return results

    def replay(self, g, trace):
        """Apply the steps of a trace to g"""
        for step in trace:
            if step.kind == 'prune-empty-twig':
                g = self.prune_empty_twig(g, Twig(step.location))
            elif step.kind == 'smooth-twig':
                g = self.smooth_twig(g, Twig(step.location))
            elif step.kind == 'pick-grape':
                g = self.pick_grape(g, *step.location)
            elif step.kind == 'attach-grape':
                g = self.attach_grape(g, *step.location)
            else:
                vertex, removed = step.location
                g = self._prune_branches(g, vertex, removed)
        return g
