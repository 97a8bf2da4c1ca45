"""Glyph normalization pipeline.

Stages, in order: binarize (gray inputs only), opening, closing, crop to
content, thinning, spur pruning, resize to the 7:5 canvas, and a final
dilation that re-fills gaps the resize opened. All morphology uses a 3x3
square structuring element; out-of-bounds pixels read as background, so
erosion shrinks shapes at the image border.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyGlyph
from .raster import BinaryImage, GrayImage, binarize

STAGE_NAMES = ("binary", "open", "close", "crop", "skeleton", "spur", "resize", "dilate")

DEFAULT_THRESHOLD = 128


@dataclass(frozen=True)
class PipelineConfig:
    """Knobs for the normalization pipeline. Canvas must keep the 7:5 ratio."""

    canvas_height: int = 70
    canvas_width: int = 50
    spur_iterations: int = 3
    open_iterations: int = 1
    close_iterations: int = 1
    final_dilate_iterations: int = 1

    def __post_init__(self):
        if self.canvas_height < 1 or self.canvas_width < 1:
            raise ValueError("canvas dimensions must be positive")
        g = math.gcd(self.canvas_height, self.canvas_width)
        if (self.canvas_height // g, self.canvas_width // g) != (7, 5):
            raise ValueError(
                f"canvas {self.canvas_height}x{self.canvas_width} does not reduce to 7:5"
            )
        if self.spur_iterations < 0:
            raise ValueError("spur_iterations must be >= 0")
        for name in ("open_iterations", "close_iterations", "final_dilate_iterations"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


def _padded(arr: np.ndarray) -> np.ndarray:
    return np.pad(arr, 1, mode="constant", constant_values=False)


def _neighborhood_stack(arr: np.ndarray) -> np.ndarray:
    """All nine 3x3-shifted views of arr, border-clipped to background."""
    p = _padded(arr)
    h, w = arr.shape
    return np.stack(
        [p[dr : dr + h, dc : dc + w] for dr in range(3) for dc in range(3)]
    )


def dilate(img: BinaryImage, iterations: int = 1) -> BinaryImage:
    """3x3 dilation: foreground iff any pixel of the 3x3 neighborhood was foreground."""
    arr = img.pixels
    for _ in range(iterations):
        arr = _neighborhood_stack(arr).any(axis=0)
    return BinaryImage(arr)


def erode(img: BinaryImage, iterations: int = 1) -> BinaryImage:
    """3x3 erosion: foreground iff all nine neighborhood pixels are foreground."""
    arr = img.pixels
    for _ in range(iterations):
        arr = _neighborhood_stack(arr).all(axis=0)
    return BinaryImage(arr)


def opening(img: BinaryImage, iterations: int = 1) -> BinaryImage:
    """Erode then dilate, repeated; removes specks smaller than the element."""
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    out = img
    for _ in range(iterations):
        out = dilate(erode(out))
    return out


def closing(img: BinaryImage, iterations: int = 1) -> BinaryImage:
    """Dilate then erode, repeated; fills holes smaller than the element."""
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    out = img
    for _ in range(iterations):
        out = erode(dilate(out))
    return out


def crop_to_content(img: BinaryImage) -> BinaryImage:
    """Tight bounding-box subimage of all foreground pixels."""
    rows = np.flatnonzero(img.pixels.any(axis=1))
    cols = np.flatnonzero(img.pixels.any(axis=0))
    if rows.size == 0:
        raise EmptyGlyph("image has no foreground pixels")
    return BinaryImage(img.pixels[rows[0] : rows[-1] + 1, cols[0] : cols[-1] + 1])


def _thinning_pass(arr: np.ndarray, first_subpass: bool) -> np.ndarray:
    """One Zhang-Suen subpass; deletes marked pixels simultaneously."""
    p = _padded(arr)
    h, w = arr.shape
    # Neighbors P2..P9 clockwise starting north.
    p2 = p[0:h, 1 : w + 1]
    p3 = p[0:h, 2 : w + 2]
    p4 = p[1 : h + 1, 2 : w + 2]
    p5 = p[2 : h + 2, 2 : w + 2]
    p6 = p[2 : h + 2, 1 : w + 1]
    p7 = p[2 : h + 2, 0:w]
    p8 = p[1 : h + 1, 0:w]
    p9 = p[0:h, 0:w]
    ring = (p2, p3, p4, p5, p6, p7, p8, p9)

    b = sum(n.astype(np.uint8) for n in ring)
    a = sum(
        ((~ring[i]) & ring[(i + 1) % 8]).astype(np.uint8) for i in range(8)
    )
    if first_subpass:
        cond3 = ~(p2 & p4 & p6)
        cond4 = ~(p4 & p6 & p8)
    else:
        cond3 = ~(p2 & p4 & p8)
        cond4 = ~(p2 & p6 & p8)
    delete = arr & (b >= 2) & (b <= 6) & (a == 1) & cond3 & cond4
    return arr & ~delete


def skeletonize(img: BinaryImage) -> BinaryImage:
    """Zhang-Suen thinning: run both subpasses until neither deletes a pixel."""
    arr = img.pixels
    while True:
        after1 = _thinning_pass(arr, first_subpass=True)
        after2 = _thinning_pass(after1, first_subpass=False)
        if np.array_equal(after2, arr):
            return BinaryImage(after2)
        arr = after2


def prune_spurs(img: BinaryImage, iterations: int) -> BinaryImage:
    """Per iteration, simultaneously delete every endpoint pixel.

    An endpoint is a foreground pixel with exactly one foreground 8-neighbor
    in the iteration's starting snapshot.
    """
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    arr = img.pixels
    for _ in range(iterations):
        stack = _neighborhood_stack(arr)
        neighbor_count = stack.sum(axis=0, dtype=np.int16) - arr.astype(np.int16)
        endpoints = arr & (neighbor_count == 1)
        arr = arr & ~endpoints
    return BinaryImage(arr)


def resize_to_canvas(img: BinaryImage, cfg: PipelineConfig) -> BinaryImage:
    """Nearest-neighbor resample to the canvas; source index = floor(dst*src/dst_dim)."""
    if img.count_foreground() == 0:
        raise EmptyGlyph("cannot resize an empty glyph")
    h, w = img.height, img.width
    rows = (np.arange(cfg.canvas_height) * h) // cfg.canvas_height
    cols = (np.arange(cfg.canvas_width) * w) // cfg.canvas_width
    return BinaryImage(img.pixels[np.ix_(rows, cols)])


def pipeline_stages(
    img: GrayImage | BinaryImage,
    threshold: int = DEFAULT_THRESHOLD,
    cfg: PipelineConfig = PipelineConfig(),
) -> dict[str, BinaryImage]:
    """Run the full chain and return every intermediate stage keyed by name."""
    binary = img if isinstance(img, BinaryImage) else binarize(img, threshold)
    stages = {"binary": binary}
    stages["open"] = opening(binary, cfg.open_iterations)
    stages["close"] = closing(stages["open"], cfg.close_iterations)
    stages["crop"] = crop_to_content(stages["close"])
    stages["skeleton"] = skeletonize(stages["crop"])
    stages["spur"] = prune_spurs(stages["skeleton"], cfg.spur_iterations)
    stages["resize"] = resize_to_canvas(stages["spur"], cfg)
    stages["dilate"] = dilate(stages["resize"], cfg.final_dilate_iterations)
    return stages


def run_pipeline(
    img: GrayImage | BinaryImage,
    threshold: int = DEFAULT_THRESHOLD,
    cfg: PipelineConfig = PipelineConfig(),
) -> BinaryImage:
    """Normalize a glyph image to the canvas. Raises EmptyGlyph for blank input."""
    return pipeline_stages(img, threshold, cfg)["dilate"]
