"""Deterministic synthetic glyph corpus.

Seven round shape families stand in for round-script glyph categories:
ring, barred_ring (ring with a center bar), double_ring (concentric),
spiral_arc (open ring with radial drift), cup (open-top arc), lobed
(two overlapping rings), and cross_bar (vertical stroke with a raised
bar). Each variant perturbs stroke width, scale, structural parameters,
and applies 1-pixel jitter. Rendering is pure geometry on a fixed grid,
seeded per sample, so a given seed always produces byte-identical output.

Glyphs are drawn near the pipeline's 7:5 canvas ratio and slightly
smaller than the canvas, so normalization only ever upsamples; this keeps
thin strokes gap-free after resizing.
"""

from __future__ import annotations

import random
from pathlib import Path

import numpy as np

from .raster import BinaryImage, serialize_pbm

SHAPE_FAMILIES = (
    "ring",
    "barred_ring",
    "double_ring",
    "spiral_arc",
    "cup",
    "lobed",
    "cross_bar",
)

_GRID_H = 80
_GRID_W = 60
_BASE_RY = 30.0
_BASE_RX = 21.0


def _coordinate_grid(cx: float, cy: float):
    """dx, dy offsets from the glyph center; y grows upward."""
    rows = np.arange(_GRID_H, dtype=float)[:, None]
    cols = np.arange(_GRID_W, dtype=float)[None, :]
    dx = cols - cx
    dy = cy - rows
    return dx, dy


def _ring_mask(dx, dy, rx: float, ry: float, stroke: float) -> np.ndarray:
    r = min(rx, ry)
    radial = np.hypot(dx * (r / rx), dy * (r / ry))
    return np.abs(radial - r) <= stroke / 2.0


def _arc_mask(dx, dy, rx, ry, stroke, gap_center, gap_width, drift=0.0) -> np.ndarray:
    """Elliptical ring with an angular gap; drift grows the radius with angle."""
    theta = np.degrees(np.arctan2(dy, dx)) % 360.0
    r = min(rx, ry)
    radial = np.hypot(dx * (r / rx), dy * (r / ry))
    if drift:
        # Sweep measured from the gap's trailing edge, so growth is continuous.
        start = (gap_center + gap_width / 2.0) % 360.0
        sweep = (theta - start) % 360.0
        local = r * (1.0 + drift * sweep / 360.0)
    else:
        local = r
    on_ring = np.abs(radial - local) <= stroke / 2.0
    in_gap = np.minimum((theta - gap_center) % 360.0, (gap_center - theta) % 360.0) < (
        gap_width / 2.0
    )
    return on_ring & ~in_gap


def _segment_mask(dx, dy, x1, y1, x2, y2, stroke) -> np.ndarray:
    px, py = dx - x1, dy - y1
    vx, vy = x2 - x1, y2 - y1
    norm2 = vx * vx + vy * vy
    t = np.clip((px * vx + py * vy) / norm2, 0.0, 1.0) if norm2 else 0.0
    closest_x = x1 + t * vx
    closest_y = y1 + t * vy
    return np.hypot(dx - closest_x, dy - closest_y) <= stroke / 2.0


def render_glyph(family: str, rng: random.Random) -> BinaryImage:
    """Render one perturbed variant of a shape family."""
    if family not in SHAPE_FAMILIES:
        raise ValueError(f"unknown shape family {family!r}")
    scale = rng.uniform(0.8, 1.0)
    stroke = float(rng.choice((3, 4, 5)))
    jitter_x = rng.choice((-1, 0, 1))
    jitter_y = rng.choice((-1, 0, 1))
    ry = _BASE_RY * scale
    rx = _BASE_RX * scale
    cx = _GRID_W / 2.0 + jitter_x
    cy = _GRID_H / 2.0 + jitter_y
    dx, dy = _coordinate_grid(cx, cy)

    if family == "ring":
        fx = rng.uniform(0.94, 1.06)
        fy = rng.uniform(0.94, 1.06)
        mask = _ring_mask(dx, dy, rx * fx, ry * fy, stroke)
    elif family == "barred_ring":
        fx = rng.uniform(0.95, 1.05)
        mask = _ring_mask(dx, dy, rx * fx, ry, stroke)
        half = rx * fx * rng.uniform(0.92, 1.0)
        mask |= _segment_mask(dx, dy, -half, 0.0, half, 0.0, stroke)
    elif family == "double_ring":
        inner = rng.uniform(0.45, 0.55)
        mask = _ring_mask(dx, dy, rx, ry, stroke)
        mask |= _ring_mask(dx, dy, rx * inner, ry * inner, stroke)
    elif family == "spiral_arc":
        # Outer open arc plus an inner arc under the lower sector: rays
        # toward S/SW/SE cross two strokes, the rest cross one.
        gap_center = rng.uniform(38.0, 52.0)
        gap_width = rng.uniform(40.0, 56.0)
        drift = rng.uniform(0.0, 0.06)
        mask = _arc_mask(dx, dy, rx * 0.96, ry * 0.96, stroke, gap_center, gap_width, drift)
        inner = rng.uniform(0.52, 0.58)
        mask |= _arc_mask(dx, dy, rx * inner, ry * inner, stroke, 90.0, 210.0)
    elif family == "cup":
        # Double-walled bowl, open at the top: rays into the opening meet
        # nothing, rays toward the covered sides cross both walls.
        gap_width = rng.uniform(130.0, 150.0)
        inner = rng.uniform(0.5, 0.56)
        mask = _arc_mask(dx, dy, rx, ry, stroke, 90.0, gap_width)
        mask |= _arc_mask(dx, dy, rx * inner, ry * inner, stroke, 90.0, gap_width)
    elif family == "lobed":
        spread = rx * rng.uniform(0.36, 0.40)
        lobe_rx = rx - spread
        lobe_ry = ry * rng.uniform(0.95, 1.0)
        mask = _ring_mask(dx + spread, dy, lobe_rx, lobe_ry, stroke)
        mask |= _ring_mask(dx - spread, dy, lobe_rx, lobe_ry, stroke)
    else:  # cross_bar
        bar_y = ry * rng.uniform(0.4, 0.5)
        bar_half = rx * rng.uniform(0.85, 1.0)
        mask = _segment_mask(dx, dy, 0.0, -ry, 0.0, ry, stroke)
        mask |= _segment_mask(dx, dy, -bar_half, bar_y, bar_half, bar_y, stroke)

    return BinaryImage(mask)


def sample_rng(seed: int, family: str, index: int) -> random.Random:
    return random.Random(f"{seed}/{family}/{index}")


def generate_corpus(
    out_dir: str | Path,
    classes: int,
    per_class: int,
    seed: int,
) -> list[Path]:
    """Write a directory-per-class corpus of P1 files; returns written paths."""
    if not 1 <= classes <= len(SHAPE_FAMILIES):
        raise ValueError(f"classes must lie in [1, {len(SHAPE_FAMILIES)}]")
    if per_class < 1:
        raise ValueError("per_class must be >= 1")
    root = Path(out_dir)
    written = []
    for family in SHAPE_FAMILIES[:classes]:
        class_dir = root / family
        class_dir.mkdir(parents=True, exist_ok=True)
        for index in range(per_class):
            img = render_glyph(family, sample_rng(seed, family, index))
            path = class_dir / f"{index:03d}.pbm"
            path.write_bytes(serialize_pbm(img))
            written.append(path)
    return written
