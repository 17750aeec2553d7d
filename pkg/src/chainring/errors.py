"""Shared exception types."""

from __future__ import annotations


class CapExceededError(RuntimeError):
    """An exhaustive enumeration would exceed its configured cap."""


class InvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
