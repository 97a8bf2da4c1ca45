"""Scikit-learn style estimators wrapping the functional core.

GlyphPreprocessor and RadialFeatureExtractor are stateless transformers,
so the pipeline composes with the wider ecosystem; GlyphRecognizer is the
classifier that trains the two fuzzy rule bases from labeled glyphs.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin

from .errors import EmptyGlyph
from .preprocess import PipelineConfig, run_pipeline
from .radial import extract
from .raster import BinaryImage
from .recognizer import RecognitionResult, recognize, train_model
from .validation import check_image_labels, check_image_list

UNRECOGNIZED_LABEL = "?"


def _config_from(est) -> PipelineConfig:
    return PipelineConfig(
        canvas_height=est.canvas_height,
        canvas_width=est.canvas_width,
        spur_iterations=est.spur_iterations,
        open_iterations=est.open_iterations,
        close_iterations=est.close_iterations,
        final_dilate_iterations=est.final_dilate_iterations,
    )


class GlyphPreprocessor(TransformerMixin, BaseEstimator):
    """Normalize glyph images onto the 7:5 canvas."""

    def __init__(
        self,
        canvas_height=70,
        canvas_width=50,
        threshold=128,
        spur_iterations=3,
        open_iterations=1,
        close_iterations=1,
        final_dilate_iterations=1,
    ):
        self.canvas_height = canvas_height
        self.canvas_width = canvas_width
        self.threshold = threshold
        self.spur_iterations = spur_iterations
        self.open_iterations = open_iterations
        self.close_iterations = close_iterations
        self.final_dilate_iterations = final_dilate_iterations

    def fit(self, X, y=None):
        check_image_list(X)
        return self

    def transform(self, X) -> list[BinaryImage]:
        cfg = _config_from(self)
        return [run_pipeline(img, self.threshold, cfg) for img in check_image_list(X)]


class RadialFeatureExtractor(TransformerMixin, BaseEstimator):
    """Turn normalized glyphs into a (n_samples, 16) feature matrix.

    Columns are the eight total distances followed by the eight clamped
    intersection counts, both in canonical direction order.
    """

    def fit(self, X, y=None):
        return self

    def transform(self, X) -> np.ndarray:
        rows = []
        for img in check_image_list(X):
            if not isinstance(img, BinaryImage):
                raise ValueError("feature extraction expects normalized binary images")
            feats = extract(img)
            rows.append(feats.d_total + feats.clamped_intersections())
        return np.asarray(rows, dtype=float)


class GlyphRecognizer(ClassifierMixin, BaseEstimator):
    """Fuzzy glyph classifier with the full normalize/extract/infer path.

    fit() induces the distance and intersection rule bases from labeled
    images; predict() returns one label per image, with "?" standing for
    glyphs neither system could place.
    """

    def __init__(
        self,
        canvas_height=70,
        canvas_width=50,
        threshold=128,
        spur_iterations=3,
        open_iterations=1,
        close_iterations=1,
        final_dilate_iterations=1,
        ambiguity_epsilon=0.05,
    ):
        self.canvas_height = canvas_height
        self.canvas_width = canvas_width
        self.threshold = threshold
        self.spur_iterations = spur_iterations
        self.open_iterations = open_iterations
        self.close_iterations = close_iterations
        self.final_dilate_iterations = final_dilate_iterations
        self.ambiguity_epsilon = ambiguity_epsilon

    def fit(self, X, y):
        images, labels = check_image_labels(X, y)
        classes = sorted(set(labels))
        by_class = {label: [] for label in classes}
        for img, label in zip(images, labels):
            by_class[label].append(img)
        self.model_, self.collisions_ = train_model(
            by_class,
            config=_config_from(self),
            threshold=self.threshold,
            ambiguity_epsilon=self.ambiguity_epsilon,
        )
        self.classes_ = np.asarray(classes, dtype=object)
        return self

    def recognize(self, img) -> RecognitionResult:
        """Full per-glyph outcome, including both systems' crisp values."""
        self._check_fitted()
        return recognize(self.model_, img, threshold=self.threshold)

    def predict(self, X) -> np.ndarray:
        self._check_fitted()
        out = []
        for img in check_image_list(X):
            try:
                label = self.recognize(img).label
            except EmptyGlyph:
                label = None
            out.append(UNRECOGNIZED_LABEL if label is None else label)
        return np.asarray(out, dtype=object)

    def _check_fitted(self):
        if not hasattr(self, "model_"):
            raise RuntimeError("GlyphRecognizer must be fitted before predicting")
