"""Palette recommendation and theme color extraction.

A palette's kind follows the data it colors: categorical for discrete
dimension series, sequential for continuous measures. Recommendations come
from the provider (mock mode answers with preset names), then pass through
post-validation with automatic lightness repair so an invalid suggestion can
never leak downstream.
"""

from __future__ import annotations

import json
import logging
from functools import lru_cache
from importlib import resources

from dashgen.stylization.color import lightness, rgb_distance
from dashgen.stylization.types import Palette, PaletteKind, Rgb

logger = logging.getLogger(__name__)

#: Minimum pairwise CIEDE2000 distance for categorical palettes.
MIN_CATEGORICAL_DISTANCE = 15.0

_REPAIR_ROUNDS = 24


@lru_cache(maxsize=1)
def palette_presets() -> dict[str, Palette]:
    raw = json.loads(
        resources.files("dashgen")
        .joinpath("data/palettes.json")
        .read_text(encoding="utf-8")
    )
    presets = {}
    for item in raw["presets"]:
        presets[item["name"]] = Palette.from_payload(item)
    return presets


def default_preset(kind: PaletteKind) -> Palette:
    for preset in palette_presets().values():
        if preset.kind is kind:
            return preset
    raise LookupError(f"no preset of kind {kind}")


def palette_violations(palette: Palette) -> list[str]:
    """Readability violations, empty when the palette is sound."""
    out: list[str] = []
    n = len(palette.colors)
    if palette.kind is PaletteKind.CATEGORICAL:
        if not 6 <= n <= 10:
            out.append(f"categorical palette needs 6-10 colors, has {n}")
        for i in range(n):
            for j in range(i + 1, n):
                d = rgb_distance(palette.colors[i], palette.colors[j])
                if d < MIN_CATEGORICAL_DISTANCE:
                    out.append(f"colors {i} and {j} too close (dE {d:.1f})")
    else:
        if not 5 <= n <= 9:
            out.append(f"sequential palette needs 5-9 stops, has {n}")
        stops = [lightness(c) for c in palette.colors]
        for i in range(1, n):
            if stops[i] <= stops[i - 1]:
                out.append(
                    f"lightness not strictly increasing at stop {i} "
                    f"({stops[i - 1]:.1f} -> {stops[i]:.1f})"
                )
    return out


def _nudge(color: Rgb, step: int) -> Rgb:
    return tuple(max(0, min(255, c + step)) for c in color)


def repair_palette(palette: Palette) -> Palette:
    """Nudge failing colors along lightness until invariants hold.

    Falls back to the default preset of the same kind when bounded repair
    cannot fix the suggestion.
    """
    colors = list(palette.colors)
    for _ in range(_REPAIR_ROUNDS):
        candidate = Palette(kind=palette.kind, name=palette.name, colors=tuple(colors))
        if not palette_violations(candidate):
            return candidate
        if palette.kind is PaletteKind.CATEGORICAL:
            fixed = False
            for i in range(len(colors)):
                for j in range(i + 1, len(colors)):
                    if rgb_distance(colors[i], colors[j]) < MIN_CATEGORICAL_DISTANCE:
                        step = 24 if lightness(colors[j]) >= lightness(colors[i]) else -24
                        colors[j] = _nudge(colors[j], step)
                        fixed = True
                        break
                if fixed:
                    break
            if not fixed:
                break
        else:
            fixed = False
            for i in range(1, len(colors)):
                if lightness(colors[i]) <= lightness(colors[i - 1]):
                    colors[i] = _nudge(colors[i], 12)
                    fixed = True
                    break
            if not fixed:
                break
    candidate = Palette(kind=palette.kind, name=palette.name, colors=tuple(colors))
    if palette_violations(candidate):
        logger.warning(
            "palette %r unrepairable, substituting default %s preset",
            palette.name,
            palette.kind.value,
        )
        return default_preset(palette.kind)
    return candidate


def required_palette_kind(color_encoded_kinds: set[str]) -> PaletteKind:
    """A dimension on any color channel demands a categorical palette;
    otherwise measures get a sequential one."""
    if "dimension" in color_encoded_kinds:
        return PaletteKind.CATEGORICAL
    return PaletteKind.SEQUENTIAL


def recommend_palette(
    domain: str,
    theme_hint: str,
    color_encoded_kinds: set[str],
    provider,
    context_docs: tuple[str, ...] = (),
) -> Palette:
    """Pick a palette for the dashboard via the provider, then validate.

    The provider answers with either a preset name or a raw color list; a
    mismatched or broken suggestion is repaired or replaced so the returned
    palette always satisfies its kind's invariants.
    """
    kind = required_palette_kind(color_encoded_kinds)
    prompt = (
        f"Recommend a {kind.value} color palette for a {domain or 'general'} "
        f"industrial dashboard. Theme hint: {theme_hint or 'none'}."
    )
    raw = provider.complete(
        "You are a dashboard stylist. Respond with JSON: "
        '{"preset": <name>} or {"name": <text>, "colors": [[r,g,b], ...]}.',
        prompt,
        context_docs,
    )
    try:
        data = json.loads(raw)
    except json.JSONDecodeError:
        data = {}

    presets = palette_presets()
    suggestion: Palette | None = None
    preset_name = data.get("preset") if isinstance(data, dict) else None
    if preset_name in presets:
        suggestion = presets[preset_name]
    elif isinstance(data, dict) and isinstance(data.get("colors"), list):
        try:
            colors = tuple(tuple(int(v) for v in c) for c in data["colors"])
            suggestion = Palette(
                kind=kind, name=str(data.get("name", "suggested")), colors=colors
            )
        except (TypeError, ValueError):
            suggestion = None

    if suggestion is None or suggestion.kind is not kind:
        if suggestion is not None:
            logger.info(
                "suggested palette %r has kind %s, need %s; using default",
                suggestion.name,
                suggestion.kind.value,
                kind.value,
            )
        suggestion = default_preset(kind)
    return repair_palette(suggestion)


def extract_theme_color(palette: Palette) -> Rgb:
    """Categorical: the lead color. Sequential: the middle stop."""
    if palette.kind is PaletteKind.CATEGORICAL:
        return palette.colors[0]
    return palette.colors[(len(palette.colors) - 1) // 2]


def series_color(palette: Palette, index: int) -> Rgb:
    """Color for the index-th series; wraps around the palette."""
    return palette.colors[index % len(palette.colors)]
