"""Parsing and canonical serialization of ``.dash.json`` documents."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Any

import jsonschema

from dashgen.dsl.errors import SpecSyntaxError, SpecValidationError
from dashgen.dsl.model import DashboardSpec
from dashgen.dsl.validate import validate_spec


@lru_cache(maxsize=1)
def _schema_validator() -> jsonschema.Draft202012Validator:
    text = (
        resources.files("dashgen").joinpath("data/dashboard-spec.schema.json")
    ).read_text(encoding="utf-8")
    return jsonschema.Draft202012Validator(json.loads(text))


def _schema_check(payload: Any) -> None:
    errors = sorted(
        _schema_validator().iter_errors(payload),
        key=lambda e: [str(p) for p in e.absolute_path],
    )
    if errors:
        err = errors[0]
        path = ".".join(str(p) for p in err.absolute_path) or "<root>"
        raise SpecValidationError("schema", path, err.message)


def parse_spec(document: bytes | str) -> DashboardSpec:
    """Parse and fully validate a UTF-8 JSON dashboard document."""
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SpecSyntaxError(f"not valid UTF-8: {exc.reason}") from exc
    try:
        payload = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    _schema_check(payload)
    spec = DashboardSpec.from_payload(payload)
    validate_spec(spec)
    return spec


def serialize_spec(spec: DashboardSpec) -> bytes:
    """Canonical byte form: sorted keys, 2-space indent, trailing newline.

    Equal specs serialize to identical bytes; floats use Python's shortest
    round-trip representation.
    """
    text = json.dumps(
        spec.to_payload(),
        sort_keys=True,
        indent=2,
        ensure_ascii=False,
        allow_nan=False,
    )
    return (text + "\n").encode("utf-8")
