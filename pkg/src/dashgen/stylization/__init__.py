"""Stylization: palettes, theme colors, procedural embellishments."""

from dashgen.stylization.color import (
    ciede2000,
    lightness,
    nearest_color_name,
    rgb_distance,
    rgb_to_lab,
    to_hex,
)
from dashgen.stylization.embellish import generate_embellishment, glyph_set
from dashgen.stylization.palette import (
    MIN_CATEGORICAL_DISTANCE,
    default_preset,
    extract_theme_color,
    palette_presets,
    palette_violations,
    recommend_palette,
    repair_palette,
    required_palette_kind,
    series_color,
)
from dashgen.stylization.types import (
    EmbellishmentKind,
    EmbellishmentSpec,
    Palette,
    PaletteKind,
    Rgb,
)

__all__ = [
    "MIN_CATEGORICAL_DISTANCE",
    "EmbellishmentKind",
    "EmbellishmentSpec",
    "Palette",
    "PaletteKind",
    "Rgb",
    "ciede2000",
    "default_preset",
    "extract_theme_color",
    "generate_embellishment",
    "glyph_set",
    "lightness",
    "nearest_color_name",
    "palette_presets",
    "palette_violations",
    "recommend_palette",
    "repair_palette",
    "required_palette_kind",
    "rgb_distance",
    "rgb_to_lab",
    "series_color",
    "to_hex",
]
