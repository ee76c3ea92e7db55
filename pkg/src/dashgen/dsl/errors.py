"""Document parsing and patching errors."""

from __future__ import annotations

from dashgen.errors import DashgenError


class SpecSyntaxError(DashgenError):
    """Malformed document text (bad encoding or broken JSON)."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SpecValidationError(DashgenError):
    """A well-formed document violating a model invariant."""

    def __init__(self, rule_id: str, path: str, message: str):
        super().__init__(f"[{rule_id}] at {path}: {message}")
        self.rule_id = rule_id
        self.path = path


class TargetNotFound(DashgenError):
    """Patch target path does not resolve in the spec."""


class InvariantViolation(DashgenError):
    """Applying the patch would break a model invariant."""
