"""Exceptions raised by pyquasiiso."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class SpecValidationError(ValueError):
    """A graph, measure or weight specification is invalid."""


class SpecParseError(ValueError):
    """A spec file could not be parsed."""


class InvariantViolation(RuntimeError):
    """Two independent computations of the same quantity disagree."""
