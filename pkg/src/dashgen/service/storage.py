"""Session and asset persistence.

One append-only newline-delimited JSON file per session plus a
content-addressed asset directory. Every interaction appends a single
record carrying the history entry and the full current spec payload, so a
restart reconstructs both the timeline and the working state by replaying
the file. Nothing is ever rewritten in place.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from enum import Enum
from pathlib import Path
from typing import Any

from dashgen.dsl import DashboardSpec
from dashgen.errors import DashgenError


class StorageError(DashgenError):
    pass


class SessionNotFound(DashgenError):
    pass


class InteractionMethod(str, Enum):
    TEXT_MESSAGE = "TextMessage"
    QUICK_ACTION = "QuickAction"
    LAYOUT_SELECTION = "LayoutSelection"
    STYLE_SELECTION = "StyleSelection"
    CONTENT_EDIT = "ContentEdit"


@dataclass(frozen=True)
class HistoryEntry:
    """One timeline card: how, what, when, and which prototype."""

    interaction_method: InteractionMethod
    modification_summary: str
    timestamp: str  # ISO-8601 UTC instant
    prototype_id: str
    thumbnail: str  # asset URL path

    def to_payload(self) -> dict[str, Any]:
        return {
            "interaction_method": self.interaction_method.value,
            "modification_summary": self.modification_summary,
            "timestamp": self.timestamp,
            "prototype_id": self.prototype_id,
            "thumbnail": self.thumbnail,
        }

    @classmethod
    def from_payload(cls, d: dict[str, Any]) -> HistoryEntry:
        return cls(
            interaction_method=InteractionMethod(d["interaction_method"]),
            modification_summary=d["modification_summary"],
            timestamp=d["timestamp"],
            prototype_id=d["prototype_id"],
            thumbnail=d["thumbnail"],
        )


@dataclass
class SessionRecord:
    session_id: str
    entries: list[HistoryEntry] = field(default_factory=list)
    current_spec: DashboardSpec | None = None
    utterances: list[tuple[str, str]] = field(default_factory=list)


class Clock:
    """UTC timestamps; fixed mode ticks one second per call from a fixed
    origin so transcripts replay byte-identically."""

    def __init__(self, fixed: bool = False):
        self._fixed = fixed
        self._origin = datetime(2025, 1, 1, tzinfo=timezone.utc)
        self._ticks = 0
        self._lock = threading.Lock()

    def now_iso(self) -> str:
        if not self._fixed:
            return datetime.now(timezone.utc).isoformat(timespec="seconds")
        with self._lock:
            stamp = self._origin + timedelta(seconds=self._ticks)
            self._ticks += 1
        return stamp.isoformat(timespec="seconds")


class SessionStore:
    """Append-only session logs under ``<data_dir>/sessions``."""

    _ID_RE = re.compile(r"^s(\d{6})$")

    def __init__(self, data_dir: Path):
        self.sessions_dir = Path(data_dir) / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def _path(self, session_id: str) -> Path:
        return self.sessions_dir / f"{session_id}.ndjson"

    def create_session(self) -> str:
        with self._lock:
            highest = 0
            for path in self.sessions_dir.glob("s*.ndjson"):
                match = self._ID_RE.fullmatch(path.stem)
                if match:
                    highest = max(highest, int(match.group(1)))
            session_id = f"s{highest + 1:06d}"
            try:
                self._path(session_id).touch(exist_ok=False)
            except OSError as exc:
                raise StorageError(f"cannot create session file: {exc}") from exc
            return session_id

    def exists(self, session_id: str) -> bool:
        return self._path(session_id).is_file()

    def append_interaction(
        self,
        session_id: str,
        entry: HistoryEntry,
        spec: DashboardSpec,
        utterance: str | None,
    ) -> None:
        if not self.exists(session_id):
            raise SessionNotFound(session_id)
        record = {
            "type": "interaction",
            "entry": entry.to_payload(),
            "spec": spec.to_payload(),
            "utterance": utterance,
        }
        line = json.dumps(record, sort_keys=True, ensure_ascii=False)
        try:
            with self._path(session_id).open("a", encoding="utf-8") as handle:
                handle.write(line + "\n")
                handle.flush()
        except OSError as exc:
            raise StorageError(f"cannot append to session log: {exc}") from exc

    def load(self, session_id: str) -> SessionRecord:
        path = self._path(session_id)
        if not path.is_file():
            raise SessionNotFound(session_id)
        record = SessionRecord(session_id=session_id)
        for line in path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            data = json.loads(line)
            if data.get("type") != "interaction":
                continue
            entry = HistoryEntry.from_payload(data["entry"])
            record.entries.append(entry)
            record.current_spec = DashboardSpec.from_payload(data["spec"])
            if data.get("utterance"):
                record.utterances.append(
                    (data["utterance"], entry.modification_summary)
                )
        return record


class AssetStore:
    """Content-addressed write-once asset files under ``<data_dir>/assets``."""

    _NAME_RE = re.compile(r"^[0-9a-f]{16}(\.thumb)?\.svg$")

    def __init__(self, data_dir: Path):
        self.assets_dir = Path(data_dir) / "assets"
        self.assets_dir.mkdir(parents=True, exist_ok=True)

    def put(self, name: str, data: str) -> str:
        if not self._NAME_RE.fullmatch(name):
            raise StorageError(f"illegal asset name {name!r}")
        path = self.assets_dir / name
        if not path.exists():
            tmp = path.with_suffix(path.suffix + ".tmp")
            tmp.write_text(data, encoding="utf-8")
            tmp.replace(path)
        return f"/assets/{name}"

    def get(self, name: str) -> str:
        if not self._NAME_RE.fullmatch(name):
            raise StorageError(f"illegal asset name {name!r}")
        path = self.assets_dir / name
        if not path.is_file():
            raise FileNotFoundError(name)
        return path.read_text(encoding="utf-8")
