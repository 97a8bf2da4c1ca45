"""Round-glyph recognition: radial features scored by cascaded fuzzy systems."""

from .errors import (
    CorpusError,
    EmptyAntecedent,
    EmptyGlyph,
    GlyphfuzzError,
    MalformedHeader,
    ModelFormatError,
    NoRuleFired,
    TruncatedPixelData,
    UnknownLabel,
    UnknownTerm,
    UnknownVariable,
    UnsupportedMaxval,
)
from .estimators import GlyphPreprocessor, GlyphRecognizer, RadialFeatureExtractor
from .fuzzy import (
    FisDefinition,
    InferenceOutcome,
    LinguisticVariable,
    MembershipFunction,
    Rule,
    trapezoid,
    triangle,
)
from .model_io import parse_model, serialize_model
from .preprocess import (
    PipelineConfig,
    closing,
    crop_to_content,
    dilate,
    erode,
    opening,
    pipeline_stages,
    prune_spurs,
    resize_to_canvas,
    run_pipeline,
    skeletonize,
)
from .radial import Direction, DIRECTIONS, RadialFeatureVector, extract, ray_runs
from .raster import BinaryImage, GrayImage, binarize, parse_netpbm, serialize_pbm
from .recognizer import (
    EvaluationReport,
    LevelCollision,
    RecognitionModel,
    RecognitionResult,
    build_fis1,
    build_fis2,
    classify_crisp,
    evaluate,
    induce_rules,
    recognize,
    train_model,
)
from .synth import SHAPE_FAMILIES, generate_corpus, render_glyph, sample_rng

__version__ = "0.1.0"

__all__ = [
    "BinaryImage",
    "CorpusError",
    "Direction",
    "DIRECTIONS",
    "EmptyAntecedent",
    "EmptyGlyph",
    "EvaluationReport",
    "FisDefinition",
    "GlyphfuzzError",
    "GlyphPreprocessor",
    "GlyphRecognizer",
    "GrayImage",
    "InferenceOutcome",
    "LevelCollision",
    "LinguisticVariable",
    "MalformedHeader",
    "MembershipFunction",
    "ModelFormatError",
    "NoRuleFired",
    "PipelineConfig",
    "RadialFeatureExtractor",
    "RadialFeatureVector",
    "RecognitionModel",
    "RecognitionResult",
    "Rule",
    "SHAPE_FAMILIES",
    "TruncatedPixelData",
    "UnknownLabel",
    "UnknownTerm",
    "UnknownVariable",
    "UnsupportedMaxval",
    "binarize",
    "build_fis1",
    "build_fis2",
    "classify_crisp",
    "closing",
    "crop_to_content",
    "dilate",
    "erode",
    "evaluate",
    "extract",
    "generate_corpus",
    "induce_rules",
    "opening",
    "parse_model",
    "parse_netpbm",
    "pipeline_stages",
    "prune_spurs",
    "ray_runs",
    "recognize",
    "render_glyph",
    "resize_to_canvas",
    "run_pipeline",
    "sample_rng",
    "serialize_model",
    "serialize_pbm",
    "skeletonize",
    "train_model",
    "trapezoid",
    "triangle",
]
