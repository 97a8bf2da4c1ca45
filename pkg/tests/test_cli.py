import subprocess
import sys

import pytest

from glyphfuzz.cli import main
from glyphfuzz.raster import parse_netpbm, serialize_pbm
from glyphfuzz.synth import render_glyph, sample_rng


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def corpus(tmp_path, capsys):
    root = tmp_path / "corpus"
    code, _, _ = run_cli(
        capsys, "synth", "--out", str(root), "--classes", "7",
        "--per-class", "5", "--seed", "13",
    )
    assert code == 0
    return root


@pytest.fixture()
def model_file(tmp_path, corpus, capsys):
    out = tmp_path / "model.txt"
    code, stdout, _ = run_cli(
        capsys, "train", "--corpus", str(corpus), "--out", str(out)
    )
    assert code == 0
    return out


def strip_timing(eval_stdout: str) -> str:
    return eval_stdout.split("\n\n", 1)[0]


def test_synth_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for root in (a, b):
        code, _, _ = run_cli(
            capsys, "synth", "--out", str(root), "--classes", "3",
            "--per-class", "2", "--seed", "5",
        )
        assert code == 0
    for rel in sorted(p.relative_to(a) for p in a.rglob("*.pbm")):
        assert (a / rel).read_bytes() == (b / rel).read_bytes()


def test_synth_counts(corpus):
    assert len(list(corpus.rglob("*.pbm"))) == 35
    assert len(list(corpus.iterdir())) == 7


def test_synth_rejects_bad_arguments(tmp_path, capsys):
    code, _, err = run_cli(
        capsys, "synth", "--out", str(tmp_path / "x"), "--classes", "9",
        "--per-class", "1", "--seed", "0",
    )
    assert code == 2 and "classes" in err


def test_train_prints_rule_count_table(tmp_path, corpus, capsys):
    out = tmp_path / "model.txt"
    code, stdout, _ = run_cli(capsys, "train", "--corpus", str(corpus), "--out", str(out))
    assert code == 0
    lines = stdout.splitlines()
    assert lines[0].split() == ["class", "fis1_rules", "fis2_rules"]
    labels = [line.split()[0] for line in lines[1:-1]]
    assert labels == sorted(labels)
    assert lines[-1].startswith("total")
    assert out.exists()


def test_train_minimal_corpus_one_rule_each(tmp_path, capsys):
    root = tmp_path / "tiny"
    code, _, _ = run_cli(
        capsys, "synth", "--out", str(root), "--classes", "1",
        "--per-class", "1", "--seed", "2",
    )
    assert code == 0
    out = tmp_path / "tiny_model.txt"
    code, stdout, _ = run_cli(capsys, "train", "--corpus", str(root), "--out", str(out))
    assert code == 0
    row = stdout.splitlines()[1].split()
    assert row == ["ring", "1", "1"]


def test_train_warns_on_cross_class_duplicates(tmp_path, corpus, capsys):
    out = tmp_path / "model.txt"
    _, _, err = run_cli(capsys, "train", "--corpus", str(corpus), "--out", str(out))
    # The all-medium distance pattern is shared by several round families.
    assert "share level vector" in err


def test_train_empty_glyph_exit_3(tmp_path, capsys):
    root = tmp_path / "corpus"
    (root / "blank").mkdir(parents=True)
    (root / "blank" / "000.pbm").write_bytes(b"P1\n4 4\n0000\n0000\n0000\n0000\n")
    code, _, err = run_cli(
        capsys, "train", "--corpus", str(root), "--out", str(tmp_path / "m.txt")
    )
    assert code == 3
    assert "000.pbm" in err


def test_train_malformed_corpus_exit_2(tmp_path, capsys):
    root = tmp_path / "corpus"
    (root / "empty_class").mkdir(parents=True)
    code, _, err = run_cli(
        capsys, "train", "--corpus", str(root), "--out", str(tmp_path / "m.txt")
    )
    assert code == 2 and "empty" in err


def test_train_rejects_non_7_to_5_canvas(tmp_path, corpus, capsys):
    code, _, err = run_cli(
        capsys, "train", "--corpus", str(corpus), "--out", str(tmp_path / "m.txt"),
        "--canvas", "60x50",
    )
    assert code == 2 and "7:5" in err


def test_recognize_training_samples(corpus, model_file, capsys):
    images = [str(corpus / "ring" / "000.pbm"), str(corpus / "cup" / "001.pbm")]
    code, stdout, _ = run_cli(capsys, "recognize", "--model", str(model_file), *images)
    assert code == 0
    lines = stdout.splitlines()
    assert len(lines) == 2
    first = lines[0].split("\t")
    assert first[0] == images[0]
    assert first[1] == "ring"
    assert first[2] in ("agreement", "fis1", "fis2")
    float(first[3]), float(first[4])  # crisp columns parse
    assert lines[1].split("\t")[1] == "cup"


def test_recognize_blank_image_prints_question_mark(tmp_path, model_file, capsys):
    blank = tmp_path / "blank.pbm"
    blank.write_bytes(b"P1\n3 3\n000\n000\n000\n")
    code, stdout, _ = run_cli(capsys, "recognize", "--model", str(model_file), str(blank))
    assert code == 1
    fields = stdout.splitlines()[0].split("\t")
    assert fields[1] == "?"


def test_recognize_batch_preserves_argument_order(corpus, model_file, capsys):
    images = [
        str(corpus / fam / f"{i:03d}.pbm")
        for fam, i in (("cup", 0), ("ring", 1), ("lobed", 2), ("ring", 0))
    ]
    code, stdout, _ = run_cli(capsys, "recognize", "--model", str(model_file), *images)
    assert code == 0
    assert [line.split("\t")[0] for line in stdout.splitlines()] == images


def test_recognize_unreadable_model_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("not a model\n")
    code, _, err = run_cli(capsys, "recognize", "--model", str(bad), str(bad))
    assert code == 2


def test_eval_training_corpus_100_percent(corpus, model_file, tmp_path, capsys):
    report = tmp_path / "report.csv"
    code, stdout, _ = run_cli(
        capsys, "eval", "--model", str(model_file), "--corpus", str(corpus),
        "--report", str(report),
    )
    assert code == 0
    assert "overall" in stdout
    overall = [l for l in stdout.splitlines() if l.startswith("overall")][0]
    assert overall.split() == ["overall", "35", "35", "100.0"]
    lines = report.read_text().splitlines()
    assert lines[0] == "class,tested,correct,accuracy,mean_seconds,variance"
    assert len(lines) == 9  # header + 7 classes + overall
    assert lines[-1].startswith("overall,35,35,100.0")


def test_eval_jobs_deterministic_output(corpus, model_file, capsys):
    outputs = []
    for jobs in ("1", "4"):
        code, stdout, _ = run_cli(
            capsys, "eval", "--model", str(model_file), "--corpus", str(corpus),
            "--jobs", jobs,
        )
        assert code == 0
        outputs.append(strip_timing(stdout))
    assert outputs[0] == outputs[1]


def test_eval_missing_corpus_exit_2(model_file, tmp_path, capsys):
    code, _, err = run_cli(
        capsys, "eval", "--model", str(model_file), "--corpus", str(tmp_path / "nope")
    )
    assert code == 2


def test_inspect_feature_csv_and_rule_strengths(corpus, model_file, capsys):
    image = corpus / "ring" / "000.pbm"
    code, stdout, _ = run_cli(capsys, "inspect", "--model", str(model_file), str(image))
    assert code == 0
    lines = stdout.splitlines()
    assert lines[0] == "direction,d_min,d_max,d_total,intersections"
    directions = [line.split(",")[0] for line in lines[1:9]]
    assert directions == ["W", "E", "N", "S", "NW", "SE", "SW", "NE"]
    strength_header = lines.index("fis,rule_index,consequent,strength")
    strengths = {}
    for line in lines[strength_header + 1 :]:
        fis, index, consequent, strength = line.split(",")
        strengths.setdefault(fis, []).append((consequent, float(strength)))
    # A training replay fires a maximal rule whose consequent is the truth.
    for fis in ("fis1", "fis2"):
        top = max(s for _, s in strengths[fis])
        assert top > 0.0
        assert "ring" in {c for c, s in strengths[fis] if s == top}


def test_inspect_stage_binary_is_identity(corpus, model_file, capsys):
    image = corpus / "barred_ring" / "000.pbm"
    code, stdout, _ = run_cli(
        capsys, "inspect", "--model", str(model_file), "--stage", "binary", str(image)
    )
    assert code == 0
    p1_start = stdout.index("P1\n")
    emitted = parse_netpbm(stdout[p1_start:].encode("ascii"))
    assert emitted == parse_netpbm(image.read_bytes())


def test_inspect_stage_dilate_is_canvas_sized(corpus, model_file, capsys):
    image = corpus / "cup" / "002.pbm"
    code, stdout, _ = run_cli(
        capsys, "inspect", "--model", str(model_file), "--stage", "dilate", str(image)
    )
    assert code == 0
    emitted = parse_netpbm(stdout[stdout.index("P1\n") :].encode("ascii"))
    assert (emitted.height, emitted.width) == (70, 50)


def test_inspect_unknown_stage_exit_2(corpus, model_file, capsys):
    code, _, err = run_cli(
        capsys, "inspect", "--model", str(model_file), "--stage", "fourier",
        str(corpus / "ring" / "000.pbm"),
    )
    assert code == 2 and "unknown stage" in err


def test_cli_runs_as_subprocess(tmp_path):
    img = render_glyph("ring", sample_rng(1, "ring", 0))
    path = tmp_path / "g.pbm"
    path.write_bytes(serialize_pbm(img))
    corpus = tmp_path / "c"
    done = subprocess.run(
        [sys.executable, "-m", "glyphfuzz", "synth", "--out", str(corpus),
         "--classes", "2", "--per-class", "2", "--seed", "7"],
        capture_output=True, text=True,
    )
    assert done.returncode == 0, done.stderr
    assert "wrote 4 glyphs" in done.stdout
