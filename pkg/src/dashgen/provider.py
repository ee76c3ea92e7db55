"""Gateway to completion and embedding backends.

One class, two modes. Live mode speaks the common chat-completions /
embeddings HTTP+JSON shape. Mock mode answers from an ordered fixture rule
table and embeds with a deterministic token-hashing embedder, making the
whole pipeline a pure function of (inputs, fixtures, seed) — no network.

This is the only module in the package performing network I/O.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import re
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

import httpx

from dashgen.errors import DashgenError, ProviderError

EMBED_DIM = 256

_CONTEXT_HEADER = "\n\n--- retrieved context ---\n"


class ProviderMode(str, Enum):
    LIVE = "live"
    MOCK = "mock"


class EmptyInput(DashgenError):
    """Text to embed is empty or whitespace."""


@dataclass(frozen=True)
class FixtureRule:
    """One mock response rule. ``kind`` is exact | contains | regex | any."""

    kind: str
    response: str
    pattern: str = ""

    def matches(self, prompt: str) -> bool:
        if self.kind == "any":
            return True
        if self.kind == "exact":
            return prompt == self.pattern
        if self.kind == "contains":
            return self.pattern.lower() in prompt.lower()
        if self.kind == "regex":
            return re.search(self.pattern, prompt) is not None
        raise ValueError(f"unknown matcher kind {self.kind!r}")


@dataclass(frozen=True)
class MockFixture:
    """Ordered response rules; first match wins; last rule must match all."""

    rules: tuple[FixtureRule, ...]
    embed_mode: str = "hash-256"

    def __post_init__(self) -> None:
        if not self.rules or self.rules[-1].kind != "any":
            raise ValueError("mock fixture needs a trailing catch-all rule")
        if self.embed_mode != "hash-256":
            raise ValueError(f"unsupported embed mode {self.embed_mode!r}")

    @classmethod
    def load(cls, path: str | Path) -> MockFixture:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        rules = []
        for r in raw["rules"]:
            response = r["response"]
            if not isinstance(response, str):
                response = json.dumps(response, sort_keys=True)
            rules.append(
                FixtureRule(
                    kind=r.get("kind", "contains"),
                    pattern=r.get("match", ""),
                    response=response,
                )
            )
        return cls(rules=tuple(rules), embed_mode=raw.get("embed_mode", "hash-256"))

    def respond(self, prompt: str) -> str:
        for rule in self.rules:
            if rule.matches(prompt):
                return rule.response
        raise AssertionError("unreachable: catch-all rule guaranteed")


def hash_embed(text: str, dim: int = EMBED_DIM) -> list[float]:
    """Deterministic bag-of-tokens embedding: stable token hash into ``dim``
    buckets, L2-normalized. Stable across processes and platforms."""
    if not text.strip():
        raise EmptyInput("cannot embed empty text")
    vec = [0.0] * dim
    for token in re.findall(r"[a-z0-9]+", text.lower()):
        digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
        vec[int.from_bytes(digest, "big") % dim] += 1.0
    norm = math.sqrt(sum(v * v for v in vec))
    return [v / norm for v in vec]


@dataclass
class ProviderHandle:
    """Configured backend connection (or its deterministic mock stand-in)."""

    mode: ProviderMode = ProviderMode.MOCK
    base_url: str = ""
    model: str = ""
    api_key: str = ""
    retry_budget: int = 2
    timeout: float = 30.0
    backoff_base: float = 0.5
    fixture: MockFixture | None = None
    transport: httpx.BaseTransport | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.mode is ProviderMode.LIVE and not self.base_url:
            raise ValueError("live mode requires a base endpoint")
        if self.mode is ProviderMode.MOCK and self.fixture is None:
            raise ValueError("mock mode requires a fixture")

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> ProviderHandle:
        env = dict(os.environ if env is None else env)
        mode = ProviderMode(env.get("PROVIDER_MODE", "mock"))
        fixture = None
        if mode is ProviderMode.MOCK:
            fixture = MockFixture.load(
                env.get("PROVIDER_FIXTURES", str(default_fixture_path()))
            )
        return cls(
            mode=mode,
            base_url=env.get("PROVIDER_BASE_URL", ""),
            model=env.get("PROVIDER_MODEL", ""),
            api_key=env.get("PROVIDER_API_KEY", ""),
            fixture=fixture,
        )

    # -- completion ---------------------------------------------------------

    def complete(
        self,
        system_prompt: str,
        user_prompt: str,
        context_docs: tuple[str, ...] = (),
    ) -> str:
        """Chat completion. Context docs are appended to the system prompt
        under a delimited section; in mock mode rules match the user prompt."""
        if context_docs:
            system_prompt = (
                system_prompt + _CONTEXT_HEADER + "\n\n".join(context_docs)
            )
        if self.mode is ProviderMode.MOCK:
            assert self.fixture is not None
            return self.fixture.respond(user_prompt)
        body = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": system_prompt},
                {"role": "user", "content": user_prompt},
            ],
        }
        data = self._post("/chat/completions", body)
        try:
            return data["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise ProviderError(f"malformed completion response: {exc}") from exc

    # -- embedding ----------------------------------------------------------

    def embed(self, text: str) -> list[float]:
        """Embed text into a unit-norm vector of dimension ``EMBED_DIM``."""
        if not text.strip():
            raise EmptyInput("cannot embed empty text")
        if self.mode is ProviderMode.MOCK:
            return hash_embed(text)
        data = self._post("/embeddings", {"model": self.model, "input": text})
        try:
            vec = [float(v) for v in data["data"][0]["embedding"]]
        except (KeyError, IndexError, TypeError) as exc:
            raise ProviderError(f"malformed embedding response: {exc}") from exc
        norm = math.sqrt(sum(v * v for v in vec))
        if norm == 0:
            raise ProviderError("embedding backend returned a zero vector")
        return [v / norm for v in vec]

    # -- transport ----------------------------------------------------------

    def _post(self, path: str, body: dict[str, Any]) -> dict[str, Any]:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        attempts = self.retry_budget + 1
        last_error = "no attempt made"
        for attempt in range(1, attempts + 1):
            try:
                with httpx.Client(
                    base_url=self.base_url,
                    timeout=self.timeout,
                    transport=self.transport,
                ) as client:
                    resp = client.post(path, json=body, headers=headers)
                if resp.status_code == 200:
                    return resp.json()
                last_error = f"HTTP {resp.status_code}"
                if resp.status_code < 500:
                    raise ProviderError(last_error, attempts=attempt)
            except httpx.HTTPError as exc:
                last_error = f"transport failure: {exc}"
            if attempt < attempts and self.backoff_base > 0:
                time.sleep(self.backoff_base * (2 ** (attempt - 1)))
        raise ProviderError(last_error, attempts=attempts)


def default_fixture_path() -> Path:
    from importlib import resources

    return Path(str(resources.files("dashgen").joinpath("data/mock-fixtures.json")))
