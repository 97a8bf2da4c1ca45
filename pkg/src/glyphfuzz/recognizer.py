"""Glyph classification with two cascaded fuzzy systems.

The distance system scores total radial distances (three feature levels
per direction); the intersection system scores ray intersection counts
(four levels). Rule bases are induced from labeled training glyphs by
mapping each sample to its per-direction feature-level vector and keeping
one rule per distinct vector per class. At recognition time both systems
run and their outcomes are arbitrated: agreement wins outright, otherwise
the stronger system decides, with ties going to the intersection system,
which exists to split classes whose distance patterns collide.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import EmptyGlyph, NoRuleFired, UnknownLabel
from .fuzzy import FisDefinition, LinguisticVariable, Rule, trapezoid, triangle
from .preprocess import DEFAULT_THRESHOLD, PipelineConfig, run_pipeline
from .radial import DIRECTION_NAMES, RadialFeatureVector, extract
from .raster import BinaryImage, GrayImage

DISTANCE_RANGE = (0.0, 20.0)
INTERSECTION_RANGE = (0.0, 5.0)
CLASS_TERM_WIDTH = 10.0

OUTPUT_VARIABLE = "character"

UNRECOGNIZED = None


def _output_variable(classes: Sequence[str]) -> LinguisticVariable:
    """One triangular output term per class on consecutive width-10 intervals."""
    terms = []
    for k, label in enumerate(classes):
        lo = CLASS_TERM_WIDTH * k
        terms.append((label, triangle(lo, lo + CLASS_TERM_WIDTH / 2, lo + CLASS_TERM_WIDTH)))
    return LinguisticVariable(
        OUTPUT_VARIABLE, 0.0, CLASS_TERM_WIDTH * len(classes), tuple(terms)
    )


def build_fis1(classes: Sequence[str]) -> FisDefinition:
    """Distance system: 8 inputs over [0, 20] with low/medium/high levels."""
    classes = _checked_classes(classes)
    inputs = tuple(
        LinguisticVariable(
            name,
            *DISTANCE_RANGE,
            (
                ("low", trapezoid(0, 0, 4, 8)),
                ("medium", triangle(4, 10, 16)),
                ("high", trapezoid(12, 16, 20, 20)),
            ),
        )
        for name in DIRECTION_NAMES
    )
    return FisDefinition(inputs, _output_variable(classes))


def build_fis2(classes: Sequence[str]) -> FisDefinition:
    """Intersection system: 8 inputs over [0, 5] with four levels.

    Breakpoints place integer counts exactly on term peaks: 0 and 1 are
    low, 2 is low-medium, 3 is medium, 4 and 5 are high.
    """
    classes = _checked_classes(classes)
    inputs = tuple(
        LinguisticVariable(
            name,
            *INTERSECTION_RANGE,
            (
                ("low", trapezoid(0, 0, 1, 2)),
                ("low-medium", triangle(1, 2, 3)),
                ("medium", triangle(2, 3, 4)),
                ("high", trapezoid(3, 4, 5, 5)),
            ),
        )
        for name in DIRECTION_NAMES
    )
    return FisDefinition(inputs, _output_variable(classes))


def _checked_classes(classes: Sequence[str]) -> tuple[str, ...]:
    out = tuple(str(c) for c in classes)
    if not out:
        raise ValueError("need at least one class")
    if len(set(out)) != len(out):
        raise ValueError("class labels must be unique")
    return out


@dataclass(frozen=True)
class LevelCollision:
    """The same feature-level vector was induced for more than one class."""

    levels: tuple[str, ...]
    classes: tuple[str, ...]

    def __str__(self):
        return f"classes {'/'.join(self.classes)} share level vector {' '.join(self.levels)}"


def induce_rules(
    fis: FisDefinition,
    samples_by_class: Mapping[str, Sequence[Sequence[float]]],
) -> tuple[FisDefinition, list[LevelCollision]]:
    """Build the rule base from labeled 8-value feature vectors.

    Every sample maps each value to the strongest term of its direction's
    variable; distinct level vectors become one rule each (full 8-entry
    antecedent, consequent = the class term). Classes are processed in the
    output-term order of `fis`. Identical level vectors appearing under
    different classes are reported as collisions, not errors: the second
    system exists to disambiguate them.
    """
    classes = fis.output.labels
    for label in classes:
        if not samples_by_class.get(label):
            raise ValueError(f"class {label!r} has no training samples")

    rules: list[Rule] = []
    seen_by_class: dict[str, list[tuple[str, ...]]] = {c: [] for c in classes}
    owners: dict[tuple[str, ...], list[str]] = {}
    for label in classes:
        for vector in samples_by_class[label]:
            if len(vector) != len(fis.inputs):
                raise ValueError(
                    f"sample for {label!r} has {len(vector)} values, expected {len(fis.inputs)}"
                )
            levels = tuple(
                var.best_term(value) for var, value in zip(fis.inputs, vector)
            )
            if levels in seen_by_class[label]:
                continue
            seen_by_class[label].append(levels)
            rules.append(
                Rule(tuple(zip((v.name for v in fis.inputs), levels)), label)
            )
            owners.setdefault(levels, []).append(label)

    collisions = [
        LevelCollision(levels, tuple(labels))
        for levels, labels in owners.items()
        if len(labels) > 1
    ]
    return fis.with_rules(rules), collisions


def classify_crisp(fis: FisDefinition, crisp: float) -> str:
    """Class whose output-term center is nearest to the crisp value; ties to
    the earlier class."""
    best_label, best_dist = None, None
    for label, mf in fis.output.terms:
        center = (mf.b + mf.c) / 2.0
        dist = abs(crisp - center)
        if best_dist is None or dist < best_dist:
            best_label, best_dist = label, dist
    return best_label


@dataclass(frozen=True)
class RecognitionModel:
    """Trained pair of fuzzy systems over a shared class list."""

    classes: tuple[str, ...]
    fis1: FisDefinition
    fis2: FisDefinition
    pipeline_config: PipelineConfig = PipelineConfig()
    ambiguity_epsilon: float = 0.05

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if self.fis1.output.labels != self.classes or self.fis2.output.labels != self.classes:
            raise ValueError("both systems must share the model's class list")
        for name, fis in (("fis1", self.fis1), ("fis2", self.fis2)):
            covered = {rule.consequent for rule in fis.rules}
            missing = [c for c in self.classes if c not in covered]
            if missing:
                raise ValueError(f"{name} has no rules for classes {missing}")

    def rules_for(self, fis_name: str, label: str) -> int:
        fis = self.fis1 if fis_name == "fis1" else self.fis2
        return sum(1 for rule in fis.rules if rule.consequent == label)


@dataclass(frozen=True)
class RecognitionResult:
    """Outcome of classifying one glyph.

    `label` is None exactly when neither system fired. `decided_by` records
    which system settled the label: 'agreement', 'fis1', 'fis2', or 'none'.
    `near_tie` flags |fis1_strength - fis2_strength| < ambiguity_epsilon for
    audit; it never changes the label.
    """

    label: str | None
    fis1_crisp: float | None
    fis2_crisp: float | None
    fis1_class: str | None
    fis2_class: str | None
    fis1_strength: float
    fis2_strength: float
    decided_by: str
    near_tie: bool = False
    features: RadialFeatureVector | None = None


def features_for(
    img: GrayImage | BinaryImage,
    config: PipelineConfig = PipelineConfig(),
    threshold: int = DEFAULT_THRESHOLD,
) -> RadialFeatureVector:
    """Normalize a glyph and extract its radial descriptor."""
    return extract(run_pipeline(img, threshold, config))


def train_model(
    samples_by_class: Mapping[str, Sequence[GrayImage | BinaryImage]],
    config: PipelineConfig = PipelineConfig(),
    threshold: int = DEFAULT_THRESHOLD,
    ambiguity_epsilon: float = 0.05,
) -> tuple[RecognitionModel, list[LevelCollision]]:
    """Induce both rule bases from labeled glyph images."""
    classes = _checked_classes(list(samples_by_class))
    distance_vectors: dict[str, list[tuple[float, ...]]] = {}
    count_vectors: dict[str, list[tuple[int, ...]]] = {}
    for label in classes:
        feats = [features_for(img, config, threshold) for img in samples_by_class[label]]
        if not feats:
            raise ValueError(f"class {label!r} has no training samples")
        distance_vectors[label] = [f.d_total for f in feats]
        count_vectors[label] = [f.clamped_intersections() for f in feats]

    fis1, collisions1 = induce_rules(build_fis1(classes), distance_vectors)
    fis2, collisions2 = induce_rules(build_fis2(classes), count_vectors)
    model = RecognitionModel(classes, fis1, fis2, config, ambiguity_epsilon)
    return model, collisions1 + collisions2


def recognize(
    model: RecognitionModel,
    img: GrayImage | BinaryImage,
    threshold: int = DEFAULT_THRESHOLD,
) -> RecognitionResult:
    """Classify one glyph image.

    Raises EmptyGlyph when the input has no ink. A glyph that fires no rule
    in either system yields label None rather than an error.
    """
    feats = features_for(img, model.pipeline_config, threshold)
    distance_inputs = dict(zip(DIRECTION_NAMES, feats.d_total))
    count_inputs = dict(zip(DIRECTION_NAMES, map(float, feats.clamped_intersections())))

    crisp1 = class1 = None
    strength1 = 0.0
    try:
        outcome1 = model.fis1.infer(distance_inputs)
        crisp1, strength1 = outcome1.crisp, outcome1.max_strength
        class1 = classify_crisp(model.fis1, crisp1)
    except NoRuleFired:
        pass

    crisp2 = class2 = None
    strength2 = 0.0
    try:
        outcome2 = model.fis2.infer(count_inputs)
        crisp2, strength2 = outcome2.crisp, outcome2.max_strength
        class2 = classify_crisp(model.fis2, crisp2)
    except NoRuleFired:
        pass

    near_tie = (
        strength1 > 0.0
        and strength2 > 0.0
        and abs(strength1 - strength2) < model.ambiguity_epsilon
    )

    if class1 is not None and class2 is not None:
        if class1 == class2:
            label, decided_by = class1, "agreement"
        elif strength1 > strength2:
            label, decided_by = class1, "fis1"
        else:
            label, decided_by = class2, "fis2"
    elif class1 is not None:
        label, decided_by = class1, "fis1"
    elif class2 is not None:
        label, decided_by = class2, "fis2"
    else:
        label, decided_by = UNRECOGNIZED, "none"

    return RecognitionResult(
        label=label,
        fis1_crisp=crisp1,
        fis2_crisp=crisp2,
        fis1_class=class1,
        fis2_class=class2,
        fis1_strength=strength1,
        fis2_strength=strength2,
        decided_by=decided_by,
        near_tie=near_tie,
        features=feats,
    )


@dataclass
class ClassReport:
    tested: int = 0
    correct: int = 0
    fis1_rules: int = 0
    fis2_rules: int = 0
    seconds: list[float] = field(default_factory=list)

    @property
    def accuracy(self) -> float:
        return 100.0 * self.correct / self.tested if self.tested else 0.0

    @property
    def mean_seconds(self) -> float:
        return sum(self.seconds) / len(self.seconds) if self.seconds else 0.0

    @property
    def variance_seconds(self) -> float:
        if not self.seconds:
            return 0.0
        mean = self.mean_seconds
        return sum((t - mean) ** 2 for t in self.seconds) / len(self.seconds)


@dataclass
class EvaluationReport:
    per_class: dict[str, ClassReport]
    total_tested: int
    total_correct: int

    @property
    def overall_accuracy(self) -> float:
        return 100.0 * self.total_correct / self.total_tested if self.total_tested else 0.0


def evaluate(
    model: RecognitionModel,
    corpus: Iterable[tuple[str, GrayImage | BinaryImage]],
    threshold: int = DEFAULT_THRESHOLD,
    jobs: int = 1,
) -> EvaluationReport:
    """Classify a labeled corpus and aggregate accuracy and timing per class.

    Aggregation is order-independent, so the report is identical for any
    `jobs` value (timings aside). Glyphs that raise EmptyGlyph count as
    tested and incorrect.
    """
    items = list(corpus)
    if not items:
        raise ValueError("corpus is empty")
    per_class = {label: ClassReport() for label in model.classes}
    for label, _ in items:
        if label not in per_class:
            raise UnknownLabel(f"corpus label {label!r} not in model classes")
        per_class[label].tested += 1
    for label in model.classes:
        per_class[label].fis1_rules = model.rules_for("fis1", label)
        per_class[label].fis2_rules = model.rules_for("fis2", label)

    def run_one(item: tuple[str, GrayImage | BinaryImage]) -> tuple[str, bool, float]:
        label, img = item
        start = time.perf_counter()
        try:
            result = recognize(model, img, threshold)
            predicted = result.label
        except EmptyGlyph:
            predicted = None
        elapsed = time.perf_counter() - start
        return label, predicted == label, elapsed

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_one, items))
    else:
        outcomes = [run_one(item) for item in items]

    total_correct = 0
    for label, correct, elapsed in outcomes:
        report = per_class[label]
        if correct:
            report.correct += 1
            total_correct += 1
        report.seconds.append(elapsed)
    return EvaluationReport(per_class, len(items), total_correct)
