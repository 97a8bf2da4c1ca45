"""Radial glyph descriptors.

From the canvas center, a ray is walked in each of the eight compass
directions. Two descriptors are read off every ray: the normalized
minimum and maximum distances at which it meets ink (summed into a total
distance in [0, 20]) and the number of separate ink runs it crosses.
Distance is the step count along the ray; a diagonal step counts 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .raster import BinaryImage


class Direction(Enum):
    """Compass directions in canonical order; value is the (drow, dcol) unit step."""

    W = (0, -1)
    E = (0, 1)
    N = (-1, 0)
    S = (1, 0)
    NW = (-1, -1)
    SE = (1, 1)
    SW = (1, -1)
    NE = (-1, 1)

    @property
    def step(self) -> tuple[int, int]:
        return self.value


DIRECTIONS: tuple[Direction, ...] = tuple(Direction)
DIRECTION_NAMES: tuple[str, ...] = tuple(d.name for d in DIRECTIONS)

MAX_INTERSECTIONS = 5


@dataclass(frozen=True)
class RadialFeatureVector:
    """Per-direction distance and intersection descriptors, canonical order."""

    d_min: tuple[float, ...]
    d_max: tuple[float, ...]
    d_total: tuple[float, ...]
    intersections: tuple[int, ...]

    def __post_init__(self):
        for field in (self.d_min, self.d_max, self.d_total, self.intersections):
            if len(field) != 8:
                raise ValueError("radial feature vectors have one entry per direction")
        for lo, hi, total, count in zip(
            self.d_min, self.d_max, self.d_total, self.intersections
        ):
            if not 0.0 <= lo <= hi <= 10.0:
                raise ValueError(f"need 0 <= d_min <= d_max <= 10, got {lo}, {hi}")
            if abs(total - (lo + hi)) > 1e-9:
                raise ValueError("d_total must equal d_min + d_max")
            if count < 0:
                raise ValueError("intersection counts are nonnegative")
            if count == 0 and (lo != 0.0 or hi != 0.0):
                raise ValueError("a ray with no runs must report zero distances")

    def clamped_intersections(self) -> tuple[int, ...]:
        """Counts capped at 5, the fuzzification domain for intersections."""
        return tuple(min(c, MAX_INTERSECTIONS) for c in self.intersections)


def center_of(img: BinaryImage) -> tuple[int, int]:
    return img.height // 2, img.width // 2


def max_steps(img: BinaryImage, direction: Direction) -> int:
    """Steps from the center to the last in-bounds pixel along the direction."""
    row, col = center_of(img)
    drow, dcol = direction.step
    room_r = row if drow < 0 else (img.height - 1 - row) if drow > 0 else None
    room_c = col if dcol < 0 else (img.width - 1 - col) if dcol > 0 else None
    rooms = [r for r in (room_r, room_c) if r is not None]
    return min(rooms)


def ray_runs(img: BinaryImage, direction: Direction) -> list[tuple[int, int]]:
    """Maximal foreground runs along the ray as (start_step, end_step), inclusive.

    The center pixel is step 0 and participates in the first run when it is
    foreground.
    """
    row, col = center_of(img)
    drow, dcol = direction.step
    runs: list[tuple[int, int]] = []
    start = None
    step = 0
    while 0 <= row < img.height and 0 <= col < img.width:
        if img.pixels[row, col]:
            if start is None:
                start = step
        elif start is not None:
            runs.append((start, step - 1))
            start = None
        row += drow
        col += dcol
        step += 1
    if start is not None:
        runs.append((start, step - 1))
    return runs


def distance_features(
    img: BinaryImage,
) -> tuple[tuple[float, ...], tuple[float, ...], tuple[tuple[int, int], ...]]:
    """Normalized (d_min, d_max) per direction plus the raw step pairs.

    raw_min is the start of the first run and raw_max the end of the last;
    a ray that meets no ink reports (0, 0).
    """
    d_min, d_max, raw = [], [], []
    for direction in DIRECTIONS:
        runs = ray_runs(img, direction)
        if runs:
            raw_min, raw_max = runs[0][0], runs[-1][1]
        else:
            raw_min = raw_max = 0
        raw.append((raw_min, raw_max))
        d_min.append(normalize_distance(raw_min, direction, img))
        d_max.append(normalize_distance(raw_max, direction, img))
    return tuple(d_min), tuple(d_max), tuple(raw)


def normalize_distance(raw: int, direction: Direction, img: BinaryImage) -> float:
    """Map a raw step count onto [0, 10] using the direction's reach."""
    reach = max_steps(img, direction)
    if raw < 0 or raw > reach:
        raise ValueError(f"raw step {raw} outside [0, {reach}] for {direction.name}")
    if reach == 0:
        return 0.0
    return 10.0 * raw / reach


def extract(img: BinaryImage) -> RadialFeatureVector:
    """Full radial descriptor of a pipeline-normalized glyph."""
    d_min, d_max, _ = distance_features(img)
    counts = tuple(len(ray_runs(img, d)) for d in DIRECTIONS)
    d_total = tuple(lo + hi for lo, hi in zip(d_min, d_max))
    return RadialFeatureVector(d_min, d_max, d_total, counts)
