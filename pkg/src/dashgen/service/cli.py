"""Command-line interface: one-shot generation, the HTTP service, replay."""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click

from dashgen.knowledge import KnowledgeStore
from dashgen.provider import MockFixture, ProviderHandle, ProviderMode, default_fixture_path
from dashgen.dsl import serialize_spec
from dashgen.service.pipeline import PipelineConfig, run_message
from dashgen.service.storage import HistoryEntry


@click.group()
def main() -> None:
    """Industrial dashboard prototype generator."""


def _provider(mock_fixtures: str | None) -> ProviderHandle:
    if mock_fixtures is not None:
        return ProviderHandle(
            mode=ProviderMode.MOCK, fixture=MockFixture.load(mock_fixtures)
        )
    return ProviderHandle.from_env()


@main.command()
@click.option("--prompt", required=True, help="Dashboard requirement text.")
@click.option(
    "--out",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Output spec path (.dash.json); the rendered SVG lands next to it.",
)
@click.option("--seed", default=42, show_default=True, type=int)
@click.option(
    "--mock",
    "mock_fixtures",
    default=None,
    type=click.Path(exists=True, dir_okay=False),
    help="Mock provider fixture file (default: bundled fixtures).",
)
@click.option("--screen", default="1920x1080", show_default=True)
def gen(prompt: str, out: Path, seed: int, mock_fixtures: str | None, screen: str) -> None:
    """Generate one prototype from a prompt and write spec + SVG."""
    started = time.perf_counter()
    provider = (
        _provider(mock_fixtures)
        if mock_fixtures is not None
        else _provider(str(default_fixture_path()))
    )
    width, height = (int(v) for v in screen.lower().split("x"))
    config = PipelineConfig(
        provider=provider,
        knowledge=KnowledgeStore(provider),
        screen=(width, height),
        base_seed=seed,
    )
    result = run_message(config, prompt, current=None, seed_parts=("gen",))
    assert result.prototype is not None
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(serialize_spec(result.spec))
    svg_path = out.with_suffix("").with_suffix(".svg") if out.suffix else out.with_suffix(".svg")
    svg_path.write_text(result.prototype.document, encoding="utf-8")
    elapsed = time.perf_counter() - started
    click.echo(
        json.dumps(
            {
                "content_hash": result.prototype.content_hash,
                "elapsed_s": round(elapsed, 3),
                "spec": str(out),
                "svg": str(svg_path),
                "views": len(result.spec.views),
            },
            sort_keys=True,
        )
    )


@main.command()
@click.option("--port", default=8000, show_default=True, type=int)
@click.option(
    "--data-dir",
    default="./dashgen-data",
    show_default=True,
    type=click.Path(file_okay=False, path_type=Path),
)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port: int, data_dir: Path, host: str) -> None:
    """Run the HTTP session service."""
    import os

    import uvicorn

    from dashgen.service.app import ServiceConfig, create_app

    env = dict(os.environ)
    env.setdefault("DATA_DIR", str(data_dir))
    config = ServiceConfig.from_env(env)
    uvicorn.run(create_app(config), host=host, port=port, log_level="warning")


@main.command()
@click.option(
    "--session",
    "session_file",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Session .ndjson log to replay.",
)
def replay(session_file: Path) -> None:
    """Print a session's timeline reconstructed from its append-only log."""
    entries = 0
    for line in session_file.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        record = json.loads(line)
        if record.get("type") != "interaction":
            continue
        entry = HistoryEntry.from_payload(record["entry"])
        entries += 1
        click.echo(
            f"{entry.timestamp}  {entry.interaction_method.value:<15} "
            f"{entry.prototype_id}  {entry.modification_summary}"
        )
    if entries == 0:
        click.echo("empty session", err=True)
        sys.exit(1)
    click.echo(f"{entries} interactions")


if __name__ == "__main__":
    main()
