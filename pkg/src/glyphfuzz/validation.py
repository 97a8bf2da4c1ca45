"""Input validation helpers for the estimator API."""

from __future__ import annotations

import numpy as np

from .raster import BinaryImage, GrayImage

Image = GrayImage | BinaryImage


def as_image(obj) -> Image:
    """Coerce one sample into an image.

    Accepts GrayImage/BinaryImage instances, 2-D boolean arrays (treated as
    binary, True = ink), and 2-D integer/float arrays with values in
    [0, 255] (treated as grayscale).
    """
    if isinstance(obj, (GrayImage, BinaryImage)):
        return obj
    arr = np.asarray(obj)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {arr.shape}")
    if arr.dtype == bool:
        return BinaryImage(arr)
    return GrayImage(arr)


def check_image_list(X) -> list[Image]:
    """Validate a sequence of samples, coercing each to an image."""
    if isinstance(X, (GrayImage, BinaryImage)) or (
        isinstance(X, np.ndarray) and X.ndim == 2
    ):
        raise ValueError("expected a sequence of images, got a single image")
    images = [as_image(x) for x in X]
    if not images:
        raise ValueError("expected at least one image")
    return images


def check_image_labels(X, y) -> tuple[list[Image], np.ndarray]:
    """Validate aligned samples and labels for fitting."""
    images = check_image_list(X)
    labels = np.asarray(y, dtype=object)
    if labels.ndim != 1 or len(labels) != len(images):
        raise ValueError(
            f"y must be 1-D with one label per image; got {labels.shape} for {len(images)} images"
        )
    return images, labels
