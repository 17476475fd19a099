"""Structured errors shared across the toolkit.

Every raised error carries a stable machine-readable ``code`` (an
UPPER_SNAKE token such as ``UNKNOWN_CHECKPOINT``) so that callers and the
CLI can branch on failures without parsing prose. Validation *findings*
are not errors; they travel as data (see ``metamodel.Finding``).
"""

from __future__ import annotations


class EssenceError(Exception):
    """Base class for all toolkit errors.

    Attributes:
        code: stable machine-readable error code.
        path: optional element path locating the offending item
            (e.g. ``alphas[2].states[0]``).
    """

    def __init__(self, code: str, message: str, *, path: str | None = None):
        self.code = code
        self.message = message
        self.path = path
        suffix = f" (at {path})" if path else ""
        super().__init__(f"{code}: {message}{suffix}")


class KernelError(EssenceError):
    """Kernel definition lookup or kernel document problem."""


class AssessmentError(EssenceError):
    """Invalid operation against an assessment."""


class DesignationError(EssenceError):
    """Reference designation parsing, resolution, or DCC problem."""


class ModelError(EssenceError):
    """Invalid operation against a description model."""


class ProjectError(EssenceError):
    """Project document cannot be parsed, validated, or versioned."""
