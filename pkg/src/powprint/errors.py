"""Exception types shared across the package.

Two failure modes are kept distinct so callers (and the CLI) can tell
bad data apart from bad files: a value that violates a model invariant
raises :class:`DomainError`, while input that cannot even be parsed
raises :class:`FormatError`.
"""

from __future__ import annotations


class DomainError(ValueError):
    """A value is syntactically fine but violates a model invariant."""


class FormatError(ValueError):
    """An input file or document is malformed and could not be parsed."""
