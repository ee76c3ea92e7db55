"""Color space conversions and the CIEDE2000 difference metric.

Scalar implementations of the standard sRGB (D65) -> CIEXYZ -> CIELAB chain
and the CIEDE2000 formula, used to enforce palette readability invariants:
pairwise distance for categorical palettes, lightness monotonicity for
sequential ones.
"""

from __future__ import annotations

import math

from dashgen.stylization.types import Rgb

_D65 = (95.047, 100.0, 108.883)


def srgb_to_linear(channel: float) -> float:
    return channel / 12.92 if channel <= 0.04045 else ((channel + 0.055) / 1.055) ** 2.4


def rgb_to_xyz(rgb: Rgb) -> tuple[float, float, float]:
    r, g, b = (srgb_to_linear(c / 255.0) for c in rgb)
    x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b
    y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b
    z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b
    return (100.0 * x, 100.0 * y, 100.0 * z)


def xyz_to_lab(xyz: tuple[float, float, float]) -> tuple[float, float, float]:
    eps = (6 / 29) ** 3

    def f(t: float) -> float:
        return t ** (1 / 3) if t > eps else t / (3 * (6 / 29) ** 2) + 4 / 29

    fx, fy, fz = (f(c / w) for c, w in zip(xyz, _D65))
    return (116 * fy - 16, 500 * (fx - fy), 200 * (fy - fz))


def rgb_to_lab(rgb: Rgb) -> tuple[float, float, float]:
    return xyz_to_lab(rgb_to_xyz(rgb))


def lightness(rgb: Rgb) -> float:
    """CIELAB L* of an sRGB color, in [0, 100]."""
    return rgb_to_lab(rgb)[0]


def ciede2000(lab1: tuple[float, float, float], lab2: tuple[float, float, float]) -> float:
    """CIEDE2000 color difference between two CIELAB colors."""
    L1, a1, b1 = lab1
    L2, a2, b2 = lab2

    c1 = math.hypot(a1, b1)
    c2 = math.hypot(a2, b2)
    c_bar = (c1 + c2) / 2.0
    g = 0.5 * (1.0 - math.sqrt(c_bar**7 / (c_bar**7 + 25.0**7)))
    a1p = (1.0 + g) * a1
    a2p = (1.0 + g) * a2
    c1p = math.hypot(a1p, b1)
    c2p = math.hypot(a2p, b2)

    def hue(ap: float, b: float) -> float:
        if ap == 0.0 and b == 0.0:
            return 0.0
        h = math.degrees(math.atan2(b, ap))
        return h + 360.0 if h < 0 else h

    h1p = hue(a1p, b1)
    h2p = hue(a2p, b2)

    dl = L2 - L1
    dc = c2p - c1p
    if c1p * c2p == 0.0:
        dh = 0.0
    else:
        diff = h2p - h1p
        if abs(diff) <= 180.0:
            dh = diff
        elif diff > 180.0:
            dh = diff - 360.0
        else:
            dh = diff + 360.0
    dbig_h = 2.0 * math.sqrt(c1p * c2p) * math.sin(math.radians(dh) / 2.0)

    l_bar = (L1 + L2) / 2.0
    cp_bar = (c1p + c2p) / 2.0
    if c1p * c2p == 0.0:
        h_bar = h1p + h2p
    elif abs(h1p - h2p) <= 180.0:
        h_bar = (h1p + h2p) / 2.0
    elif h1p + h2p < 360.0:
        h_bar = (h1p + h2p + 360.0) / 2.0
    else:
        h_bar = (h1p + h2p - 360.0) / 2.0

    t = (
        1.0
        - 0.17 * math.cos(math.radians(h_bar - 30.0))
        + 0.24 * math.cos(math.radians(2.0 * h_bar))
        + 0.32 * math.cos(math.radians(3.0 * h_bar + 6.0))
        - 0.20 * math.cos(math.radians(4.0 * h_bar - 63.0))
    )
    d_theta = 30.0 * math.exp(-(((h_bar - 275.0) / 25.0) ** 2))
    r_c = 2.0 * math.sqrt(cp_bar**7 / (cp_bar**7 + 25.0**7))
    s_l = 1.0 + 0.015 * (l_bar - 50.0) ** 2 / math.sqrt(20.0 + (l_bar - 50.0) ** 2)
    s_c = 1.0 + 0.045 * cp_bar
    s_h = 1.0 + 0.015 * cp_bar * t
    r_t = -math.sin(math.radians(2.0 * d_theta)) * r_c

    return math.sqrt(
        (dl / s_l) ** 2
        + (dc / s_c) ** 2
        + (dbig_h / s_h) ** 2
        + r_t * (dc / s_c) * (dbig_h / s_h)
    )


def rgb_distance(rgb1: Rgb, rgb2: Rgb) -> float:
    """CIEDE2000 between two sRGB colors."""
    return ciede2000(rgb_to_lab(rgb1), rgb_to_lab(rgb2))


def to_hex(rgb: Rgb) -> str:
    return "#{:02x}{:02x}{:02x}".format(*rgb)


_NAMED: tuple[tuple[str, Rgb], ...] = (
    ("black", (0, 0, 0)),
    ("white", (255, 255, 255)),
    ("gray", (128, 128, 128)),
    ("red", (220, 40, 40)),
    ("orange", (245, 130, 32)),
    ("amber", (255, 190, 0)),
    ("yellow", (250, 240, 70)),
    ("green", (60, 180, 80)),
    ("teal", (0, 170, 160)),
    ("cyan", (40, 200, 235)),
    ("blue", (45, 110, 235)),
    ("indigo", (75, 60, 200)),
    ("violet", (150, 80, 220)),
    ("magenta", (225, 60, 190)),
)


def nearest_color_name(rgb: Rgb) -> str:
    """Closest entry of a small named-color table (for prompt text)."""
    return min(_NAMED, key=lambda item: rgb_distance(rgb, item[1]))[0]
