"""Command-line front end.

Subcommands: train, recognize, eval, inspect, synth. Exit codes: 0 on
success, 1 when any glyph went unrecognized, 2 for usage or input errors,
3 when a training sample contains no glyph.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import CorpusError, EmptyGlyph, GlyphfuzzError
from .model_io import parse_model, serialize_model
from .preprocess import PipelineConfig, pipeline_stages, STAGE_NAMES
from .radial import DIRECTION_NAMES, extract
from .raster import parse_netpbm, serialize_pbm
from .recognizer import (
    RecognitionModel,
    evaluate,
    features_for,
    recognize,
    train_model,
)
from .synth import SHAPE_FAMILIES, generate_corpus

EXIT_OK = 0
EXIT_UNRECOGNIZED = 1
EXIT_USAGE = 2
EXIT_EMPTY_GLYPH = 3


def _parse_canvas(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("canvas must be <height>x<width>, e.g. 70x50")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError("canvas dimensions must be integers") from None


def load_corpus(root: str | Path) -> list[tuple[str, Path]]:
    """Labeled sample paths from a directory-per-class tree, sorted for
    deterministic ordering. Raises CorpusError on layout violations."""
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus root {root} is not a directory")
    class_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    if not class_dirs:
        raise CorpusError(f"corpus root {root} has no class directories")
    items: list[tuple[str, Path]] = []
    for class_dir in class_dirs:
        label = class_dir.name
        if any(ch.isspace() or ch == "," for ch in label):
            raise CorpusError(f"class label {label!r} may not contain spaces or commas")
        files = sorted(p for p in class_dir.iterdir() if p.is_file())
        if not files:
            raise CorpusError(f"class directory {class_dir} is empty")
        items.extend((label, path) for path in files)
    return items


def _read_image(path: Path):
    return parse_netpbm(path.read_bytes())


def _load_model(path: str) -> RecognitionModel:
    return parse_model(Path(path).read_text(encoding="ascii"))


def cmd_train(args) -> int:
    try:
        items = load_corpus(args.corpus)
        samples: dict[str, list] = {}
        current_path = None
        try:
            for label, path in items:
                current_path = path
                samples.setdefault(label, []).append(_read_image(path))
        except GlyphfuzzError as exc:
            print(f"error: {current_path}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        config = PipelineConfig(
            canvas_height=args.canvas[0],
            canvas_width=args.canvas[1],
            spur_iterations=args.spur,
        )
    except (CorpusError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        model, collisions = train_model(samples, config=config, threshold=args.threshold)
    except EmptyGlyph:
        # Re-run per sample to name the offending file.
        for label, path in items:
            try:
                features_for(_read_image(path), config, args.threshold)
            except EmptyGlyph:
                print(f"error: empty glyph in {path}", file=sys.stderr)
                return EXIT_EMPTY_GLYPH
        raise

    for collision in collisions:
        print(f"warning: {collision}", file=sys.stderr)

    Path(args.out).write_text(serialize_model(model), encoding="ascii")
    print(f"{'class':<16}{'fis1_rules':>12}{'fis2_rules':>12}")
    for label in model.classes:
        print(
            f"{label:<16}{model.rules_for('fis1', label):>12}{model.rules_for('fis2', label):>12}"
        )
    total1 = len(model.fis1.rules)
    total2 = len(model.fis2.rules)
    print(f"{'total':<16}{total1:>12}{total2:>12}")
    return EXIT_OK


def cmd_recognize(args) -> int:
    try:
        model = _load_model(args.model)
    except (OSError, GlyphfuzzError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    any_miss = False
    for name in args.images:
        path = Path(name)
        try:
            img = _read_image(path)
        except (OSError, GlyphfuzzError) as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        try:
            result = recognize(model, img, threshold=args.threshold)
        except EmptyGlyph:
            print(f"{path}\t?\tnone\t-\t-")
            any_miss = True
            continue
        label = result.label if result.label is not None else "?"
        crisp1 = f"{result.fis1_crisp:.4f}" if result.fis1_crisp is not None else "-"
        crisp2 = f"{result.fis2_crisp:.4f}" if result.fis2_crisp is not None else "-"
        print(f"{path}\t{label}\t{result.decided_by}\t{crisp1}\t{crisp2}")
        if result.label is None:
            any_miss = True
    return EXIT_UNRECOGNIZED if any_miss else EXIT_OK


def cmd_eval(args) -> int:
    try:
        model = _load_model(args.model)
        items = load_corpus(args.corpus)
        corpus = [(label, _read_image(path)) for label, path in items]
        report = evaluate(model, corpus, threshold=args.threshold, jobs=args.jobs)
    except (OSError, GlyphfuzzError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    print(f"{'class':<16}{'tested':>8}{'correct':>9}{'accuracy%':>11}")
    for label in model.classes:
        cls = report.per_class[label]
        print(f"{label:<16}{cls.tested:>8}{cls.correct:>9}{cls.accuracy:>11.1f}")
    print(
        f"{'overall':<16}{report.total_tested:>8}{report.total_correct:>9}"
        f"{report.overall_accuracy:>11.1f}"
    )
    print()
    print(f"{'class':<16}{'mean_seconds':>14}{'variance':>12}")
    for label in model.classes:
        cls = report.per_class[label]
        print(f"{label:<16}{cls.mean_seconds:>14.4f}{cls.variance_seconds:>12.6f}")

    if args.report:
        lines = ["class,tested,correct,accuracy,mean_seconds,variance"]
        for label in model.classes:
            cls = report.per_class[label]
            lines.append(
                f"{label},{cls.tested},{cls.correct},{cls.accuracy:.1f},"
                f"{cls.mean_seconds:.6f},{cls.variance_seconds:.6f}"
            )
        lines.append(
            f"overall,{report.total_tested},{report.total_correct},"
            f"{report.overall_accuracy:.1f},,"
        )
        Path(args.report).write_text("\n".join(lines) + "\n", encoding="ascii")
    return EXIT_OK


def cmd_inspect(args) -> int:
    try:
        model = _load_model(args.model)
        img = _read_image(Path(args.image))
    except (OSError, GlyphfuzzError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.stage is not None and args.stage not in STAGE_NAMES:
        print(
            f"error: unknown stage {args.stage!r}; choose from {', '.join(STAGE_NAMES)}",
            file=sys.stderr,
        )
        return EXIT_USAGE

    try:
        stages = pipeline_stages(img, args.threshold, model.pipeline_config)
    except EmptyGlyph as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY_GLYPH
    feats = extract(stages["dilate"])

    print("direction,d_min,d_max,d_total,intersections")
    for i, name in enumerate(DIRECTION_NAMES):
        print(
            f"{name},{feats.d_min[i]:.4f},{feats.d_max[i]:.4f},"
            f"{feats.d_total[i]:.4f},{feats.intersections[i]}"
        )

    distance_inputs = dict(zip(DIRECTION_NAMES, feats.d_total))
    count_inputs = dict(zip(DIRECTION_NAMES, map(float, feats.clamped_intersections())))
    print("fis,rule_index,consequent,strength")
    for fis_name, fis, inputs in (
        ("fis1", model.fis1, distance_inputs),
        ("fis2", model.fis2, count_inputs),
    ):
        for index, rule in enumerate(fis.rules):
            strength = fis.fire_strength(rule, inputs)
            print(f"{fis_name},{index},{rule.consequent},{strength:.6f}")

    if args.stage is not None:
        sys.stdout.write(serialize_pbm(stages[args.stage]).decode("ascii"))
    return EXIT_OK


def cmd_synth(args) -> int:
    if not 1 <= args.classes <= len(SHAPE_FAMILIES) or args.per_class < 1:
        print(
            f"error: --classes must lie in [1, {len(SHAPE_FAMILIES)}] and --per-class >= 1",
            file=sys.stderr,
        )
        return EXIT_USAGE
    paths = generate_corpus(args.out, args.classes, args.per_class, args.seed)
    print(f"wrote {len(paths)} glyphs under {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glyphfuzz",
        description="Round-glyph recognition with radial features and fuzzy inference.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="induce rule bases from a labeled corpus")
    p.add_argument("--corpus", required=True, help="directory-per-class corpus root")
    p.add_argument("--out", required=True, help="model file to write")
    p.add_argument("--canvas", type=_parse_canvas, default=(70, 50), metavar="HxW")
    p.add_argument("--threshold", type=int, default=128)
    p.add_argument("--spur", type=int, default=3, help="spur pruning iterations")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("recognize", help="classify glyph images")
    p.add_argument("--model", required=True)
    p.add_argument("--threshold", type=int, default=128)
    p.add_argument("images", nargs="+", metavar="IMAGE")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("eval", help="evaluate a model against a labeled corpus")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--report", help="write a CSV report to this path")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--threshold", type=int, default=128)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("inspect", help="dump features, rule strengths, pipeline stages")
    p.add_argument("--model", required=True)
    p.add_argument("--stage", help=f"emit this stage as P1: {', '.join(STAGE_NAMES)}")
    p.add_argument("--threshold", type=int, default=128)
    p.add_argument("image", metavar="IMAGE")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("synth", help="generate a synthetic glyph corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--classes", type=int, default=len(SHAPE_FAMILIES))
    p.add_argument("--per-class", type=int, dest="per_class", default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
