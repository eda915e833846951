"""
Verdict Models - quasi-isometry class descriptors and RAAG verdicts
"""
from dataclasses import dataclass, field

from grapeqi.errors import PreconditionError

RAAG_VALUES = ('qi-to-raag', 'not-qi-to-raag', 'unknown')


@dataclass(frozen=True)
class QiClassDescriptor:
    """
    Complete quasi-isometry invariant of a 2-braid group over grapes.

    Small(code) with code = min(free rank, 2); Large(min_form) with the
    canonical form of the quasi-minimal representative.
    """

    variant: str
    code: int = None
    min_form: object = None

    @classmethod
    def small(cls, code):
        return cls('small', code=min(code, 2))

    @classmethod
    def large(cls, form):
        return cls('large', min_form=form)

    @property
    def is_small(self):
        return self.variant == 'small'

    def __str__(self):
        if self.is_small:
            return f'Small({self.code})'
        return f'Large({self.min_form})'

    def to_dict(self):
        if self.is_small:
            return {'variant': 'small', 'code': self.code}
        return {'variant': 'large', 'min_form': str(self.min_form)}


@dataclass(frozen=True)
class RaagVerdict:
    """Outcome of the sufficient RAAG criteria"""

    value: str
    witness: dict = field(default=None, compare=False)

    def __post_init__(self):
        if self.value not in RAAG_VALUES:
            raise PreconditionError(f"unknown verdict {self.value!r}", code='invalid-argument')
        if self.value != 'unknown' and not self.witness:
            raise PreconditionError("a decided verdict needs a witness", code='invalid-argument')

    def to_dict(self):
        return {'value': self.value, 'witness': self.witness}
