"""
Error types for GrapeQI
Every error carries a machine-readable code and the exit status the CLI reports
"""


class GrapeQIError(ValueError):
    """Base class for all GrapeQI errors"""

    exit_code = 2

    def __init__(self, message, code='error'):
        super().__init__(message)
        self.code = code

    def to_dict(self):
        """Convert error to dictionary"""
        return {'error': self.code, 'message': str(self)}


class InvalidBunchError(GrapeQIError):
    """A stem, bunch or graph violates its structural invariants"""


class PreconditionError(GrapeQIError):
    """An operation was called on an input outside its domain"""


class GuardExceededError(GrapeQIError):
    """A brute-force construction would exceed a configured size guard"""

    exit_code = 3

    def __init__(self, guard, limit, actual):
        super().__init__(
            f"size guard '{guard}' exceeded: {actual} > {limit} "
            f"(use --guard-override to raise the limit)",
            code=guard,
        )
        self.guard = guard
        self.limit = limit
        self.actual = actual

    def to_dict(self):
        data = super().to_dict()
        data.update({'limit': self.limit, 'actual': self.actual})
        return data


class FormatError(GrapeQIError):
    """A document could not be parsed"""

    def __init__(self, message, code='syntax', line=None, column=None):
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        super().__init__(message, code=code)
        self.line = line
        self.column = column

    def to_dict(self):
        data = super().to_dict()
        data.update({'line': self.line, 'column': self.column})
        return data
