"""Shared exception hierarchy."""

from __future__ import annotations


class DashgenError(Exception):
    """Base class for all package errors."""


class ProviderError(DashgenError):
    """Transport or format failure talking to the completion/embedding backend."""

    def __init__(self, message: str, attempts: int = 1):
        super().__init__(message)
        self.attempts = attempts


class UnparsableIntent(DashgenError):
    """Provider output failed payload validation after the retry budget."""


class EvaluationRequired(DashgenError):
    """The operation needs a spec that passed evaluation, and this one has
    not (or failed)."""
