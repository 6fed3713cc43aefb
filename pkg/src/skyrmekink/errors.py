"""Exception types shared across the package."""


class SkyrmeKinkError(Exception):
    """Base class for all package errors."""


class DomainError(SkyrmeKinkError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SingularityError(DomainError):
    """Evaluation requested at or beyond a singular point of a formula."""


class NumericsError(SkyrmeKinkError, RuntimeError):
    """An iterative numerical procedure failed to converge."""
