"""Exception hierarchy shared by every module.

The CLI maps each class to a stable exit code.
"""

from __future__ import annotations

__all__ = ["EdgeSubError", "ParseError", "CapacityError", "UsageError", "MetadataError"]


class EdgeSubError(Exception):
    """Base class for all library errors."""


class ParseError(EdgeSubError):
    """Malformed edge-list input."""


class CapacityError(EdgeSubError):
    """A size guard or work budget was exceeded."""


class UsageError(EdgeSubError):
    """Invalid arguments, mismatched bases, unknown names."""


class MetadataError(EdgeSubError):
    """Declared property metadata contradicts probed behaviour."""
