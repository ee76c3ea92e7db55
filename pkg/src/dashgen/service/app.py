"""HTTP session service.

Endpoints mirror the chat workflow: create a session, post messages or quick
actions against it, read the history timeline, accept a prototype into the
knowledge base, and fetch rendered assets. Responses are canonical JSON
(sorted keys, compact separators) so mock-mode transcripts are byte-stable.

Sessions serialize their own requests (one in-flight pipeline per session);
different sessions run concurrently.
"""

from __future__ import annotations

import json
import os
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request, Response

from dashgen.errors import EvaluationRequired, ProviderError
from dashgen.knowledge import KnowledgeStore
from dashgen.provider import ProviderHandle
from dashgen.renderer import render_thumbnail
from dashgen.service.pipeline import (
    NoCurrentSpec,
    PipelineConfig,
    PipelineFailed,
    PipelineResult,
    UnknownTemplate,
    run_message,
    run_quick_action,
)
from dashgen.service.storage import (
    AssetStore,
    Clock,
    HistoryEntry,
    InteractionMethod,
    SessionNotFound,
    SessionStore,
    StorageError,
)

TAGS = ("modify_layout", "modify_style", "modify_content")

_ACTION_METHODS = {
    "ModifyLayout": InteractionMethod.LAYOUT_SELECTION,
    "ModifyStyle": InteractionMethod.STYLE_SELECTION,
    "ModifyContent": InteractionMethod.CONTENT_EDIT,
}


@dataclass
class ServiceConfig:
    data_dir: Path
    provider: ProviderHandle
    base_seed: int = 42
    fixed_clock: bool = False
    screen: tuple[int, int] = (1920, 1080)
    ui_dir: Path | None = None

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> ServiceConfig:
        env = dict(os.environ if env is None else env)
        ui_dir = env.get("UI_DIR")
        return cls(
            data_dir=Path(env.get("DATA_DIR", "./dashgen-data")),
            provider=ProviderHandle.from_env(env),
            base_seed=int(env.get("SERVICE_SEED", "42")),
            fixed_clock=env.get("SERVICE_CLOCK", "real") == "fixed",
            ui_dir=Path(ui_dir) if ui_dir else None,
        )


def _json(payload: Any, status: int = 200) -> Response:
    return Response(
        content=json.dumps(payload, sort_keys=True, separators=(",", ":")),
        status_code=status,
        media_type="application/json",
    )


def _error(status: int, message: Any) -> Response:
    return _json({"detail": message}, status=status)


def create_app(config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="dashgen service", docs_url=None, redoc_url=None)
    sessions = SessionStore(config.data_dir)
    assets = AssetStore(config.data_dir)
    knowledge = KnowledgeStore(config.provider, config.data_dir / "knowledge")
    clock = Clock(fixed=config.fixed_clock)
    pipeline_config = PipelineConfig(
        provider=config.provider,
        knowledge=knowledge,
        screen=config.screen,
        base_seed=config.base_seed,
    )
    locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
    locks_guard = threading.Lock()

    def session_lock(session_id: str) -> threading.Lock:
        with locks_guard:
            return locks[session_id]

    def store_result(
        session_id: str,
        result: PipelineResult,
        method: InteractionMethod,
        utterance: str | None,
    ) -> dict[str, Any]:
        prototype = result.prototype
        assert prototype is not None
        url = assets.put(f"{prototype.content_hash}.svg", prototype.document)
        thumb = render_thumbnail(prototype)
        thumb_url = assets.put(f"{prototype.content_hash}.thumb.svg", thumb)
        entry = HistoryEntry(
            interaction_method=method,
            modification_summary=result.summary,
            timestamp=clock.now_iso(),
            prototype_id=prototype.content_hash,
            thumbnail=thumb_url,
        )
        sessions.append_interaction(session_id, entry, result.spec, utterance)
        return {
            "history_entry": entry.to_payload(),
            "prototype": {
                "content_hash": prototype.content_hash,
                "height": prototype.height,
                "thumbnail_url": thumb_url,
                "url": url,
                "width": prototype.width,
            },
            "session_id": session_id,
            "spec": result.spec.to_payload(),
            "tags": list(TAGS),
            "verdict": result.verdict.to_payload(),
        }

    @app.get("/healthz")
    def healthz() -> Response:
        return _json({"status": "ok"})

    @app.post("/sessions")
    def create_session() -> Response:
        try:
            session_id = sessions.create_session()
        except StorageError as exc:
            return _error(500, str(exc))
        return _json({"session_id": session_id}, status=201)

    @app.post("/sessions/{session_id}/messages")
    async def post_message(session_id: str, request: Request) -> Response:
        body = await request.json()
        utterance = (body or {}).get("utterance", "").strip()
        if not utterance:
            return _error(400, "utterance is required")
        if not sessions.exists(session_id):
            return _error(404, f"unknown session {session_id!r}")
        with session_lock(session_id):
            record = sessions.load(session_id)
            seed_parts = (session_id, str(len(record.entries)))
            try:
                result = run_message(
                    pipeline_config,
                    utterance,
                    record.current_spec,
                    context=tuple(record.utterances),
                    seed_parts=seed_parts,
                )
            except ProviderError as exc:
                return _error(502, str(exc))
            except PipelineFailed as exc:
                return _error(422, exc.verdict.to_payload())
            payload = store_result(
                session_id, result, InteractionMethod.TEXT_MESSAGE, utterance
            )
        return _json(payload)

    @app.post("/sessions/{session_id}/actions")
    async def post_action(session_id: str, request: Request) -> Response:
        body = await request.json() or {}
        action = body.get("action", "")
        if not sessions.exists(session_id):
            return _error(404, f"unknown session {session_id!r}")
        with session_lock(session_id):
            record = sessions.load(session_id)
            seed_parts = (session_id, str(len(record.entries)), action)
            try:
                result = run_quick_action(
                    pipeline_config,
                    action,
                    body,
                    record.current_spec,
                    seed_parts=seed_parts,
                )
            except NoCurrentSpec as exc:
                return _error(409, str(exc))
            except UnknownTemplate as exc:
                return _error(404, str(exc))
            except ProviderError as exc:
                return _error(502, str(exc))
            except PipelineFailed as exc:
                return _error(422, exc.verdict.to_payload())
            method = _ACTION_METHODS.get(action, InteractionMethod.QUICK_ACTION)
            payload = store_result(session_id, result, method, None)
        return _json(payload)

    @app.post("/sessions/{session_id}/accept")
    def accept(session_id: str) -> Response:
        if not sessions.exists(session_id):
            return _error(404, f"unknown session {session_id!r}")
        with session_lock(session_id):
            record = sessions.load(session_id)
            if record.current_spec is None:
                return _error(409, "session has no prototype yet")
            summary = (
                record.entries[-1].modification_summary
                if record.entries
                else record.current_spec.title
            )
            try:
                doc_id = knowledge.enrich(
                    record.current_spec,
                    f"{record.current_spec.title}: {summary}",
                )
            except EvaluationRequired as exc:
                return _error(422, str(exc))
        return _json({"doc_id": doc_id, "session_id": session_id})

    @app.get("/sessions/{session_id}/history")
    def history(session_id: str) -> Response:
        try:
            record = sessions.load(session_id)
        except SessionNotFound:
            return _error(404, f"unknown session {session_id!r}")
        return _json(
            {
                "entries": [e.to_payload() for e in record.entries],
                "session_id": session_id,
            }
        )

    @app.get("/assets/{name}")
    def asset(name: str) -> Response:
        try:
            document = assets.get(name)
        except (StorageError, FileNotFoundError):
            return _error(404, f"no asset {name!r}")
        return Response(content=document, media_type="image/svg+xml")

    if config.ui_dir and config.ui_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app
