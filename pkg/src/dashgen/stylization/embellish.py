"""Procedural embellishment generation: borders, dividers, icons.

Everything is a pure function of (kind, theme color, seed). The prompt text
attached to each spec is a natural-language rendition for an optional
external image endpoint; the vector fragment is the default rendering.
"""

from __future__ import annotations

import hashlib
import json
import random
from functools import lru_cache
from importlib import resources

from dashgen.stylization.color import nearest_color_name, to_hex
from dashgen.stylization.types import EmbellishmentKind, EmbellishmentSpec, Rgb

_CORNER_STYLES = ("bracket", "notch", "double")

_PROMPT_TEMPLATES = {
    EmbellishmentKind.BORDER: (
        "industrial dashboard border frame, {color} tones, {corner} corners, "
        "thin glowing strokes on dark background"
    ),
    EmbellishmentKind.DIVIDER: (
        "horizontal divider line for an industrial dashboard, {color} accent, "
        "subtle end caps"
    ),
    EmbellishmentKind.ICON: (
        "flat monochrome {glyph} icon in {color}, industrial dashboard style"
    ),
}


@lru_cache(maxsize=1)
def glyph_set() -> dict[str, str]:
    raw = json.loads(
        resources.files("dashgen")
        .joinpath("data/glyphs.json")
        .read_text(encoding="utf-8")
    )
    return dict(raw["glyphs"])


def _rng(kind: EmbellishmentKind, theme_color: Rgb, seed: int) -> random.Random:
    key = f"{kind.value}|{theme_color}|{seed}".encode("utf-8")
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


def corner_marks(x: float, y: float, w: float, h: float, arm: float) -> list[str]:
    """Path data for the four L-shaped corner accents of a bracket frame."""
    return [
        f"M{x:.3f} {y + arm:.3f} V{y:.3f} H{x + arm:.3f}",
        f"M{x + w - arm:.3f} {y:.3f} H{x + w:.3f} V{y + arm:.3f}",
        f"M{x + w:.3f} {y + h - arm:.3f} V{y + h:.3f} H{x + w - arm:.3f}",
        f"M{x + arm:.3f} {y + h:.3f} H{x:.3f} V{y + h - arm:.3f}",
    ]


def border_fragment(spec: EmbellishmentSpec, x: float, y: float, w: float, h: float) -> str:
    """Frame around a rectangle: thin outline plus style-dependent accents."""
    hexc = to_hex(spec.theme_color)
    sw = spec.stroke_width
    parts = [
        f'<rect fill="none" height="{h:.3f}" opacity="0.55" stroke="{hexc}" '
        f'stroke-width="{sw / 2:.3f}" width="{w:.3f}" x="{x:.3f}" y="{y:.3f}"/>'
    ]
    arm = min(w, h) * 0.08
    if spec.corner_style == "bracket":
        for d in corner_marks(x, y, w, h, arm):
            parts.append(
                f'<path d="{d}" fill="none" stroke="{hexc}" stroke-width="{sw:.3f}"/>'
            )
    elif spec.corner_style == "notch":
        for cx, cy in ((x, y), (x + w, y), (x + w, y + h), (x, y + h)):
            parts.append(
                f'<circle cx="{cx:.3f}" cy="{cy:.3f}" fill="{hexc}" r="{sw:.3f}"/>'
            )
    else:  # double rail
        inset = sw * 2
        parts.append(
            f'<rect fill="none" height="{h - 2 * inset:.3f}" opacity="0.35" '
            f'stroke="{hexc}" stroke-width="{sw / 2:.3f}" '
            f'width="{w - 2 * inset:.3f}" x="{x + inset:.3f}" y="{y + inset:.3f}"/>'
        )
    return "".join(parts)


def divider_fragment(spec: EmbellishmentSpec, x: float, y: float, w: float) -> str:
    hexc = to_hex(spec.theme_color)
    sw = spec.stroke_width
    return (
        f'<line stroke="{hexc}" stroke-width="{sw:.3f}" '
        f'x1="{x:.3f}" x2="{x + w:.3f}" y1="{y:.3f}" y2="{y:.3f}"/>'
        f'<circle cx="{x:.3f}" cy="{y:.3f}" fill="{hexc}" r="{sw * 1.5:.3f}"/>'
        f'<circle cx="{x + w:.3f}" cy="{y:.3f}" fill="{hexc}" r="{sw * 1.5:.3f}"/>'
    )


def icon_fragment(spec: EmbellishmentSpec, x: float, y: float, size: float) -> str:
    path = glyph_set()[spec.glyph_id or "gauge"]
    scale = size / 24.0
    return (
        f'<g transform="translate({x:.3f} {y:.3f}) scale({scale:.3f})">'
        f'<path d="{path}" fill="{to_hex(spec.theme_color)}"/></g>'
    )


def generate_embellishment(
    kind: EmbellishmentKind,
    theme_color: Rgb,
    seed: int,
    glyph_id: str | None = None,
) -> tuple[EmbellishmentSpec, str]:
    """Produce a descriptor plus a standalone demo fragment (100x60 canvas)."""
    rng = _rng(kind, theme_color, seed)
    corner = rng.choice(_CORNER_STYLES)
    stroke = 1.5 + 0.5 * rng.randrange(0, 4)
    color_name = nearest_color_name(theme_color)
    if kind is EmbellishmentKind.ICON:
        chosen = glyph_id or rng.choice(sorted(glyph_set()))
        if chosen not in glyph_set():
            raise KeyError(f"glyph {chosen!r} not in the bundled set")
        prompt = _PROMPT_TEMPLATES[kind].format(color=color_name, glyph=chosen)
        spec = EmbellishmentSpec(
            kind=kind,
            theme_color=theme_color,
            corner_style=corner,
            stroke_width=stroke,
            glyph_id=chosen,
            prompt_text=prompt,
        )
        return spec, icon_fragment(spec, 0, 0, 60)
    prompt = _PROMPT_TEMPLATES[kind].format(color=color_name, corner=corner)
    spec = EmbellishmentSpec(
        kind=kind,
        theme_color=theme_color,
        corner_style=corner,
        stroke_width=stroke,
        prompt_text=prompt,
    )
    if kind is EmbellishmentKind.BORDER:
        return spec, border_fragment(spec, 2, 2, 96, 56)
    return spec, divider_fragment(spec, 2, 30, 96)
