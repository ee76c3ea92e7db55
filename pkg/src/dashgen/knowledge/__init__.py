"""Knowledge base: embedding retrieval and prototype enrichment."""

from dashgen.knowledge.store import (
    INDEX_VERSION,
    DocKind,
    EvaluationRequired,
    KnowledgeDoc,
    KnowledgeStore,
    VectorIndex,
    build_index,
    embed_text,
    retrieve_topk,
)

__all__ = [
    "INDEX_VERSION",
    "DocKind",
    "EvaluationRequired",
    "KnowledgeDoc",
    "KnowledgeStore",
    "VectorIndex",
    "build_index",
    "embed_text",
    "retrieve_topk",
]
