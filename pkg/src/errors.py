"""Exception types shared across the toolkit.

Input problems derive from ``ValueError`` and numerical failures from
``NumericalError``; the command line maps the two families to distinct exit codes.
"""
from typing import Optional


class InvalidDimensionError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


class ResolutionError(ValueError):
    pass


class WeightError(ValueError):
    pass


class ConfigError(ValueError):
    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field:
            location.append(f"field '{field}'")
        prefix = f"[{', '.join(location)}] " if location else ""
        super().__init__(f"{prefix}{message}")


class NumericalError(RuntimeError):
    pass


class DegenerateSteadyStateError(NumericalError):
    pass


class TracelessNullVectorError(NumericalError):
    pass


class PositivityError(NumericalError):
    pass


class InstabilityError(NumericalError):
    pass


class ClosureOverflowError(NumericalError):
    pass
