"""Shared exception types.

Kept in one place so the CLI can map them to exit codes without importing
half the library.
"""


class DiamoptError(Exception):
    """Base class for library-specific failures."""


class CapExceededError(DiamoptError):
    """An exhaustive scan was requested beyond the configured cap."""


class InfeasibleModelError(DiamoptError):
    """The model has no feasible point where one was required."""


class ParseError(DiamoptError):
    """An input file or string could not be parsed."""
