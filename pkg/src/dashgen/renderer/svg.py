"""Deterministic SVG building blocks.

Attribute keys are emitted sorted, numbers at three decimals or fewer with
trailing zeros stripped, text XML-escaped. Equal inputs always yield
identical bytes, which is what makes golden content hashing possible.
"""

from __future__ import annotations

from typing import Mapping

from xml.sax.saxutils import escape


def fmt(value: float | int) -> str:
    """Number formatting: at most 3 decimals, no trailing zeros."""
    if isinstance(value, int):
        return str(value)
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def el(
    tag: str,
    attrs: Mapping[str, str | float | int] | None = None,
    children: list[str] | str | None = None,
) -> str:
    """One element with sorted attributes; children may be raw markup."""
    parts = [f"<{tag}"]
    for key in sorted(attrs or {}):
        value = attrs[key]
        rendered = fmt(value) if isinstance(value, (int, float)) else str(value)
        parts.append(f' {key}="{escape(rendered)}"')
    if children is None:
        parts.append("/>")
        return "".join(parts)
    body = children if isinstance(children, str) else "".join(children)
    parts.append(f">{body}</{tag}>")
    return "".join(parts)


def text_el(
    x: float,
    y: float,
    content: str,
    size: float,
    fill: str,
    anchor: str = "start",
    weight: str | None = None,
    family: str = "monospace",
) -> str:
    attrs: dict[str, str | float | int] = {
        "fill": fill,
        "font-family": family,
        "font-size": size,
        "text-anchor": anchor,
        "x": x,
        "y": y,
    }
    if weight:
        attrs["font-weight"] = weight
    return el("text", attrs, escape(content))


def svg_document(width: float, height: float, body: str) -> str:
    return (
        el(
            "svg",
            {
                "height": height,
                "version": "1.1",
                "viewBox": f"0 0 {fmt(width)} {fmt(height)}",
                "width": width,
                "xmlns": "http://www.w3.org/2000/svg",
            },
            body,
        )
        + "\n"
    )


def truncate_label(label: str, max_chars: int) -> str:
    if len(label) <= max_chars:
        return label
    return label[: max(1, max_chars - 1)] + "…"
