"""Design-knowledge base: embedding index, retrieval, enrichment.

The index is a flat exact-scan over unit vectors; at this corpus size
correctness beats ANN cleverness. Documents live as one JSON file each under
``<dir>/docs``, the vector index as a versioned sidecar ``index.json``
written atomically. Accepted prototypes are appended as new documents so
later generations can retrieve them.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Any, Iterable

from dashgen.dsl.model import DashboardSpec
from dashgen.dsl.parse import serialize_spec
from dashgen.errors import EvaluationRequired
from dashgen.evaluator import evaluate_spec
from dashgen.provider import EMBED_DIM, ProviderHandle

INDEX_VERSION = 1


class DocKind(str, Enum):
    DESIGN_PATTERN = "DesignPattern"
    TASK_RULE = "TaskRule"
    LAYOUT_TEMPLATE = "LayoutTemplate"
    ACCEPTED_PROTOTYPE = "AcceptedPrototype"


@dataclass(frozen=True)
class KnowledgeDoc:
    id: str
    kind: DocKind
    text: str
    embedding: tuple[float, ...]
    payload: dict[str, Any] | None = None

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("knowledge doc text must be non-empty")

    def to_payload(self) -> dict[str, Any]:
        d: dict[str, Any] = {"id": self.id, "kind": self.kind.value, "text": self.text}
        if self.payload is not None:
            d["payload"] = self.payload
        return d


@dataclass(frozen=True)
class VectorIndex:
    """Flat list of (doc id, unit embedding); duplicates rejected."""

    entries: tuple[tuple[str, tuple[float, ...]], ...]
    dimension: int = EMBED_DIM

    def __post_init__(self) -> None:
        ids = [doc_id for doc_id, _ in self.entries]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate doc ids in index")
        for doc_id, vec in self.entries:
            if len(vec) != self.dimension:
                raise ValueError(f"entry {doc_id!r} has dimension {len(vec)}")
            if not all(math.isfinite(v) for v in vec):
                raise ValueError(f"entry {doc_id!r} has non-finite components")

    def __len__(self) -> int:
        return len(self.entries)


def embed_text(text: str, provider: ProviderHandle) -> list[float]:
    """Unit-norm embedding of non-empty text (raises EmptyInput otherwise)."""
    return provider.embed(text)


def build_index(
    docs: Iterable[KnowledgeDoc], dimension: int = EMBED_DIM
) -> VectorIndex:
    return VectorIndex(
        entries=tuple((d.id, d.embedding) for d in docs), dimension=dimension
    )


def _cosine(a: tuple[float, ...] | list[float], b: tuple[float, ...]) -> float:
    dot = sum(x * y for x, y in zip(a, b))
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(y * y for y in b))
    if na == 0 or nb == 0:
        return 0.0
    return dot / (na * nb)


def retrieve_topk(
    query: str, k: int, index: VectorIndex, provider: ProviderHandle
) -> list[tuple[str, float]]:
    """Top-k docs by cosine similarity, ties broken by doc id."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if len(index) == 0:
        raise ValueError("index is empty")
    q = provider.embed(query)
    scored = [(doc_id, _cosine(q, vec)) for doc_id, vec in index.entries]
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored[: min(k, len(scored))]


def _seed_doc_payloads() -> list[dict[str, Any]]:
    raw = json.loads(
        resources.files("dashgen")
        .joinpath("data/seed-docs.json")
        .read_text(encoding="utf-8")
    )
    return list(raw["docs"])


class KnowledgeStore:
    """Documents plus their vector index, optionally persisted to disk."""

    def __init__(self, provider: ProviderHandle, directory: Path | None = None):
        self._provider = provider
        self._directory = Path(directory) if directory else None
        self.docs: dict[str, KnowledgeDoc] = {}
        if self._directory and (self._directory / "index.json").exists():
            self._load()
        else:
            for item in _seed_doc_payloads():
                self._add_doc(item)
            if self._directory:
                self._persist()

    # -- construction -------------------------------------------------------

    def _add_doc(self, item: dict[str, Any]) -> KnowledgeDoc:
        doc = KnowledgeDoc(
            id=item["id"],
            kind=DocKind(item["kind"]),
            text=item["text"],
            embedding=tuple(self._provider.embed(item["text"])),
            payload=item.get("payload"),
        )
        if doc.id in self.docs:
            raise ValueError(f"duplicate doc id {doc.id!r}")
        self.docs[doc.id] = doc
        return doc

    @property
    def index(self) -> VectorIndex:
        return build_index(self.docs.values())

    # -- queries -------------------------------------------------------------

    def retrieve(self, query: str, k: int = 3) -> list[tuple[KnowledgeDoc, float]]:
        ranked = retrieve_topk(query, k, self.index, self._provider)
        return [(self.docs[doc_id], score) for doc_id, score in ranked]

    def context_texts(self, query: str, k: int = 3) -> tuple[str, ...]:
        return tuple(doc.text for doc, _ in self.retrieve(query, k))

    # -- enrichment ----------------------------------------------------------

    def enrich(self, accepted: DashboardSpec, summary: str) -> str:
        """Append an accepted prototype as a retrievable document."""
        verdict = evaluate_spec(accepted)
        if not verdict.passed:
            raise EvaluationRequired(
                "spec fails evaluation: "
                + "; ".join(rule for rule, _, _ in verdict.violations)
            )
        digest = hashlib.blake2b(
            serialize_spec(accepted) + summary.encode("utf-8"), digest_size=6
        ).hexdigest()
        doc_id = f"accepted-{digest}"
        if doc_id not in self.docs:
            self._add_doc(
                {
                    "id": doc_id,
                    "kind": DocKind.ACCEPTED_PROTOTYPE.value,
                    "text": summary,
                    "payload": {"spec": accepted.to_payload()},
                }
            )
            if self._directory:
                self._persist()
        return doc_id

    # -- persistence ----------------------------------------------------------

    def _persist(self) -> None:
        assert self._directory is not None
        docs_dir = self._directory / "docs"
        docs_dir.mkdir(parents=True, exist_ok=True)
        for doc in self.docs.values():
            path = docs_dir / f"{doc.id}.json"
            if not path.exists():
                _atomic_write(path, _canonical(doc.to_payload()))
        index_payload = {
            "version": INDEX_VERSION,
            "dimension": EMBED_DIM,
            "entries": [
                [doc_id, list(vec)]
                for doc_id, vec in sorted(self.index.entries)
            ],
        }
        _atomic_write(self._directory / "index.json", _canonical(index_payload))

    def _load(self) -> None:
        assert self._directory is not None
        raw = json.loads((self._directory / "index.json").read_text(encoding="utf-8"))
        if raw.get("version") != INDEX_VERSION:
            raise ValueError(f"unsupported index version {raw.get('version')!r}")
        embeddings = {doc_id: tuple(vec) for doc_id, vec in raw["entries"]}
        for path in sorted((self._directory / "docs").glob("*.json")):
            item = json.loads(path.read_text(encoding="utf-8"))
            self.docs[item["id"]] = KnowledgeDoc(
                id=item["id"],
                kind=DocKind(item["kind"]),
                text=item["text"],
                embedding=embeddings[item["id"]],
                payload=item.get("payload"),
            )


def _canonical(payload: dict[str, Any]) -> bytes:
    return (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode("utf-8")


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(data)
    tmp.replace(path)
