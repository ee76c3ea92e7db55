"""HTTP session service, pipeline orchestration, and CLI."""

from dashgen.service.app import ServiceConfig, create_app
from dashgen.service.pipeline import (
    MAX_EVAL_ITERATIONS,
    NoCurrentSpec,
    PipelineConfig,
    PipelineFailed,
    PipelineResult,
    UnknownTemplate,
    derive_seed,
    run_message,
    run_quick_action,
)
from dashgen.service.storage import (
    AssetStore,
    Clock,
    HistoryEntry,
    InteractionMethod,
    SessionNotFound,
    SessionRecord,
    SessionStore,
    StorageError,
)

__all__ = [
    "MAX_EVAL_ITERATIONS",
    "AssetStore",
    "Clock",
    "HistoryEntry",
    "InteractionMethod",
    "NoCurrentSpec",
    "PipelineConfig",
    "PipelineFailed",
    "PipelineResult",
    "ServiceConfig",
    "SessionNotFound",
    "SessionRecord",
    "SessionStore",
    "StorageError",
    "UnknownTemplate",
    "create_app",
    "derive_seed",
    "run_message",
    "run_quick_action",
]
