"""Palette and embellishment value types.

Pure data; construction does not validate perceptual invariants (distance,
lightness monotonicity) — those are enforced by the recommendation path and
re-checked by the evaluator and tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

Rgb = tuple[int, int, int]


class PaletteKind(str, Enum):
    CATEGORICAL = "Categorical"
    SEQUENTIAL = "Sequential"


class EmbellishmentKind(str, Enum):
    BORDER = "Border"
    DIVIDER = "Divider"
    ICON = "Icon"


@dataclass(frozen=True)
class Palette:
    """An ordered list of sRGB colors with a perceptual role.

    Categorical palettes carry 6-10 well-separated colors for discrete
    series; sequential palettes carry 5-9 gradient stops ordered by
    strictly increasing or decreasing CIELAB lightness.
    """

    kind: PaletteKind
    name: str
    colors: tuple[Rgb, ...]

    def to_payload(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "name": self.name,
            "colors": [list(c) for c in self.colors],
        }

    @classmethod
    def from_payload(cls, d: dict[str, Any]) -> Palette:
        return cls(
            kind=PaletteKind(d["kind"]),
            name=d["name"],
            colors=tuple(tuple(int(v) for v in c) for c in d["colors"]),
        )


@dataclass(frozen=True)
class EmbellishmentSpec:
    """Descriptor for one procedural decoration (border frame, divider, icon).

    ``prompt_text`` is a natural-language rendition of the element kept for
    an optional external image endpoint; the default rendering path is the
    procedural vector fragment generated from the geometry parameters.
    """

    kind: EmbellishmentKind
    theme_color: Rgb
    corner_style: str = "bracket"
    stroke_width: float = 2.0
    glyph_id: str | None = None
    prompt_text: str = ""

    def to_payload(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "kind": self.kind.value,
            "theme_color": list(self.theme_color),
            "corner_style": self.corner_style,
            "stroke_width": self.stroke_width,
            "prompt_text": self.prompt_text,
        }
        if self.glyph_id is not None:
            d["glyph_id"] = self.glyph_id
        return d

    @classmethod
    def from_payload(cls, d: dict[str, Any]) -> EmbellishmentSpec:
        return cls(
            kind=EmbellishmentKind(d["kind"]),
            theme_color=tuple(int(v) for v in d["theme_color"]),
            corner_style=d.get("corner_style", "bracket"),
            stroke_width=float(d.get("stroke_width", 2.0)),
            glyph_id=d.get("glyph_id"),
            prompt_text=d.get("prompt_text", ""),
        )
