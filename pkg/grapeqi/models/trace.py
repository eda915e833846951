"""
Reduction Trace Model - audit trail of quasi-isometry preserving operations
"""
from dataclasses import dataclass, field

STEP_KINDS = ('prune-empty-twig', 'smooth-twig', 'pick-grape', 'attach-grape', 'prune-substem')


@dataclass(frozen=True)
class ReductionStep:
    """
    One applied operation.

    location is a twig path for twig operations, (vertex, count) for grape operations
    and (vertex, removed attachment vertices) for substem pruning.
    """

    kind: str
    location: tuple
    before: str
    after: str

    def describe(self):
        if self.kind == 'prune-substem':
            vertex, removed = self.location
            where = f"at {vertex} removing branches toward {', '.join(removed)}"
        elif self.kind in ('pick-grape', 'attach-grape'):
            vertex, count = self.location
            where = f"at {vertex}" if count == 1 else f"at {vertex} ({count} grapes)"
        else:
            where = '-'.join(self.location)
        return f"{self.kind} {where} [{self.before} -> {self.after}]"

    def to_dict(self):
        if self.kind == 'prune-substem':
            vertex, removed = self.location
            location = {'vertex': vertex, 'removed': list(removed)}
        elif self.kind in ('pick-grape', 'attach-grape'):
            vertex, count = self.location
            location = {'vertex': vertex, 'count': count}
        else:
            location = {'twig': list(self.location)}
        return {'kind': self.kind, 'location': location, 'before': self.before, 'after': self.after}


@dataclass(frozen=True)
class ReductionTrace:
    """Ordered steps; replaying them on the input reproduces the output"""

    steps: tuple = field(default_factory=tuple)

    def extend(self, other):
        return ReductionTrace(self.steps + tuple(other.steps))

    def append(self, step):
        return ReductionTrace(self.steps + (step,))

    def kinds(self):
        return [s.kind for s in self.steps]

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def to_dict(self):
        return {'steps': [s.to_dict() for s in self.steps]}

    def lines(self):
        return [f"step {i}: {s.describe()}" for i, s in enumerate(self.steps, 1)]
