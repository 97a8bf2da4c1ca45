"""Line-oriented text persistence for recognition models.

Format (version 1): a header line, the class list, the canvas size, then
for each system eight input variable blocks in canonical direction order
followed by the output variable block, then one line per rule. Floats are
written with repr() so parsing reproduces them bit-exactly.

    glyphfuzz-model v1
    classes: <comma-separated labels>
    canvas: <height>x<width>
    var <fis> <name> <lo> <hi>
    term <label> <a> <b> <c> <d>
    ...
    rule <fis> <class> <8 term labels in canonical direction order>
"""

from __future__ import annotations

from .errors import ModelFormatError
from .fuzzy import FisDefinition, LinguisticVariable, MembershipFunction, Rule
from .preprocess import PipelineConfig
from .radial import DIRECTION_NAMES
from .recognizer import OUTPUT_VARIABLE, RecognitionModel

HEADER = "glyphfuzz-model v1"

_FIS_NAMES = ("fis1", "fis2")


def serialize_model(model: RecognitionModel) -> str:
    lines = [HEADER]
    lines.append("classes: " + ",".join(model.classes))
    lines.append(
        f"canvas: {model.pipeline_config.canvas_height}x{model.pipeline_config.canvas_width}"
    )
    for fis_name, fis in (("fis1", model.fis1), ("fis2", model.fis2)):
        for var in (*fis.inputs, fis.output):
            lines.append(f"var {fis_name} {var.name} {var.lo!r} {var.hi!r}")
            for label, mf in var.terms:
                lines.append(f"term {label} {mf.a!r} {mf.b!r} {mf.c!r} {mf.d!r}")
    for fis_name, fis in (("fis1", model.fis1), ("fis2", model.fis2)):
        for rule in fis.rules:
            by_var = dict(rule.antecedent)
            labels = " ".join(by_var[name] for name in DIRECTION_NAMES)
            lines.append(f"rule {fis_name} {rule.consequent} {labels}")
    return "\n".join(lines) + "\n"


def _parse_float(token: str, where: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ModelFormatError(f"bad number {token!r} in {where}") from None


def parse_model(text: str) -> RecognitionModel:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0].strip() != HEADER:
        raise ModelFormatError(f"missing header line {HEADER!r}")
    if len(lines) < 3:
        raise ModelFormatError("model file ends before classes/canvas lines")

    if not lines[1].startswith("classes: "):
        raise ModelFormatError("second line must be 'classes: ...'")
    classes = tuple(c for c in lines[1][len("classes: ") :].split(",") if c)
    if not classes:
        raise ModelFormatError("empty class list")

    if not lines[2].startswith("canvas: "):
        raise ModelFormatError("third line must be 'canvas: <h>x<w>'")
    dims = lines[2][len("canvas: ") :].split("x")
    if len(dims) != 2:
        raise ModelFormatError("canvas line must read <height>x<width>")
    try:
        canvas_h, canvas_w = int(dims[0]), int(dims[1])
    except ValueError:
        raise ModelFormatError("canvas dimensions must be integers") from None

    variables: dict[str, list[LinguisticVariable]] = {name: [] for name in _FIS_NAMES}
    rules: dict[str, list[Rule]] = {name: [] for name in _FIS_NAMES}
    pending: tuple[str, str, float, float] | None = None
    pending_terms: list[tuple[str, MembershipFunction]] = []

    def flush_variable():
        nonlocal pending, pending_terms
        if pending is None:
            return
        fis_name, var_name, lo, hi = pending
        if not pending_terms:
            raise ModelFormatError(f"variable {var_name!r} has no terms")
        variables[fis_name].append(
            LinguisticVariable(var_name, lo, hi, tuple(pending_terms))
        )
        pending, pending_terms = None, []

    for line in lines[3:]:
        parts = line.split()
        kind = parts[0]
        if kind == "var":
            flush_variable()
            if len(parts) != 5:
                raise ModelFormatError(f"malformed var line: {line!r}")
            fis_name = parts[1]
            if fis_name not in _FIS_NAMES:
                raise ModelFormatError(f"unknown system {fis_name!r} in {line!r}")
            pending = (
                fis_name,
                parts[2],
                _parse_float(parts[3], line),
                _parse_float(parts[4], line),
            )
        elif kind == "term":
            if pending is None:
                raise ModelFormatError(f"term line outside a var block: {line!r}")
            if len(parts) != 6:
                raise ModelFormatError(f"malformed term line: {line!r}")
            pending_terms.append(
                (
                    parts[1],
                    MembershipFunction(*(_parse_float(p, line) for p in parts[2:6])),
                )
            )
        elif kind == "rule":
            flush_variable()
            if len(parts) != 3 + len(DIRECTION_NAMES):
                raise ModelFormatError(f"malformed rule line: {line!r}")
            fis_name, consequent = parts[1], parts[2]
            if fis_name not in _FIS_NAMES:
                raise ModelFormatError(f"unknown system {fis_name!r} in {line!r}")
            rules[fis_name].append(
                Rule(tuple(zip(DIRECTION_NAMES, parts[3:])), consequent)
            )
        else:
            raise ModelFormatError(f"unrecognized line: {line!r}")
    flush_variable()

    systems = {}
    for fis_name in _FIS_NAMES:
        fis_vars = variables[fis_name]
        if len(fis_vars) != len(DIRECTION_NAMES) + 1:
            raise ModelFormatError(
                f"{fis_name} must define {len(DIRECTION_NAMES)} inputs plus one output"
            )
        input_names = tuple(v.name for v in fis_vars[:-1])
        if input_names != DIRECTION_NAMES:
            raise ModelFormatError(
                f"{fis_name} inputs must be the directions {DIRECTION_NAMES}, got {input_names}"
            )
        output = fis_vars[-1]
        if output.name != OUTPUT_VARIABLE:
            raise ModelFormatError(
                f"{fis_name} output variable must be named {OUTPUT_VARIABLE!r}"
            )
        if output.labels != classes:
            raise ModelFormatError(f"{fis_name} output terms must match the class list")
        try:
            systems[fis_name] = FisDefinition(
                tuple(fis_vars[:-1]), output, tuple(rules[fis_name])
            )
        except Exception as exc:
            raise ModelFormatError(f"invalid {fis_name}: {exc}") from exc

    try:
        config = PipelineConfig(canvas_height=canvas_h, canvas_width=canvas_w)
        return RecognitionModel(classes, systems["fis1"], systems["fis2"], config)
    except ValueError as exc:
        raise ModelFormatError(str(exc)) from exc
