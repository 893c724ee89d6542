import json

import pytest

from kaehleraut.cli import main
from kaehleraut.ga import PolyEndo
from kaehleraut.series import TruncatedSeriesMap, random_automorphism


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_diff_square(capsys):
    code, out, _ = run(capsys, "diff", "x^2", "--m", "1", "--N", "3")
    assert code == 0
    assert out.splitlines() == ["d^1f = 2*x*d1x", "d^2f = 2*x*d2x + d1x^2", "d^3f = 2*x*d3x + 2*d1x*d2x"]


def test_diff_constant(capsys):
    code, out, _ = run(capsys, "diff", "7", "--m", "2", "--N", "2")
    assert code == 0
    assert [line.split(" = ")[1] for line in out.splitlines()] == ["0", "0"]


def test_diff_generic_shape(capsys):
    code, out, _ = run(capsys, "diff", "x1^2*x2^2", "--m", "2", "--N", "2", "--format", "json")
    data = json.loads(out)
    assert len(data["differentials"]) == 2
    # x1^2 x2^2 has all five second-order terms
    assert len(data["differentials"][1]["terms"]) == 5


def test_diff_latex(capsys):
    code, out, _ = run(capsys, "diff", "x^2", "--m", "1", "--N", "1", "--format", "latex")
    assert code == 0 and "d^{1}x" in out


def test_diff_parse_error(capsys):
    code, _, err = run(capsys, "diff", "2x", "--m", "1", "--N", "2")
    assert code == 1 and "position 1" in err


def test_alpha_cubic(capsys):
    code, out, _ = run(capsys, "alpha", "x + x^2 + x^3", "--N", "3", "--verify")
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["y1 -> y1", "y2 -> y1^2 + y2", "y3 -> y1^3 + 2*y1*y2 + y3"]


def test_alpha_identity(capsys):
    code, out, _ = run(capsys, "alpha", "x1", "x2", "--N", "2")
    assert out.splitlines() == ["y1_1 -> y1_1", "y2_1 -> y2_1", "y1_2 -> y1_2", "y2_2 -> y2_2"]


def test_alpha_singular(capsys):
    code, _, err = run(capsys, "alpha", "x1+x2", "x1+x2", "--N", "2")
    assert code == 1 and "not an automorphism" in err and "[[1, 1], [1, 1]]" in err


def test_alpha_from_file_and_json(capsys, tmp_path):
    phi = random_automorphism(2, 2, seed=1)
    path = tmp_path / "phi.json"
    path.write_text(json.dumps(phi.to_record()))
    code, out, _ = run(capsys, "alpha", "--input", str(path), "--format", "json")
    rec = json.loads(out)
    assert rec["kind"] == "poly_endo" and rec["n"] == 4
    from kaehleraut.rep import alpha
    assert PolyEndo.from_record(rec) == alpha(phi).base


def test_compose_and_invert_inline(capsys):
    code, out, _ = run(capsys, "compose", "--map", "y1; y2 + y1^2", "--map", "y1; y2 + y1^2")
    assert out.splitlines() == ["y1 -> y1", "y2 -> 2*y1^2 + y2"]
    code, out, _ = run(capsys, "invert", "--map", "2*y1; 2*y2 + y1^2")
    assert out.splitlines() == ["y1 -> 1/2*y1", "y2 -> -1/8*y1^2 + 1/2*y2"]


def test_series_compose_and_invert(capsys, tmp_path):
    code, out, _ = run(capsys, "compose", "--series", "--N", "2", "--map", "x + x^2", "--map", "x + x^2")
    assert out.strip() == "x -> 2*x^2 + x"
    code, out, _ = run(capsys, "invert", "--series", "--N", "2", "--map", "x + x^2", "--format", "json")
    assert TruncatedSeriesMap.from_record(json.loads(out)).render() == ["-x1^2 + x1"]


def test_invert_non_triangular(capsys):
    code, _, err = run(capsys, "invert", "--map", "y2; y1")
    assert code == 1


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--map", "y1; y2 + y1^3", "--format", "json")
    info = json.loads(out)
    assert info["triangular"] and info["elementary"] and info["jacobian_constant_nonzero"]
    code, out, _ = run(capsys, "classify", "--map", "y1 + y2; y2 + y1")
    assert "triangular: false" in out and "elementary: false" in out


def test_embed(capsys):
    code, out, _ = run(capsys, "embed", "--map", "x1; x2 + x1^2", "--N", "1")
    assert code == 0
    assert out.splitlines() == ["x1 -> x1", "x2 -> x1^2 + x2", "d1x1 -> d1x1", "d1x2 -> 2*x1*d1x1 + d1x2"]
    code, _, err = run(capsys, "embed", "--map", "x + x^2", "--N", "1")
    assert code == 1


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "3")
    assert code == 0 and "all suites passed" in out
    code, _, err = run(capsys, "verify", "--trials", "0")
    assert code == 1
    code, out, _ = run(capsys, "verify", "--trials", "3", "--corrupt")
    assert code == 2 and "first counterexample" in out


def test_verify_is_deterministic(capsys):
    first = run(capsys, "verify", "--trials", "4", "--seed", "7", "--format", "json")[1]
    second = run(capsys, "verify", "--trials", "4", "--seed", "7", "--format", "json")[1]
    assert first == second


def test_examples(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0 and "MISMATCH" not in out
    assert "y3 -> a3*y1^3 + 2*a2*y1*y2 + a1*y3" in out
    code, out, _ = run(capsys, "examples", "--format", "json")
    data = json.loads(out)
    assert all(block["match"] for block in data["alpha"] + data["differentials"])


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.txt"
    code, out, _ = run(capsys, "diff", "x", "--m", "1", "--N", "1", "--output", str(target))
    assert out == "" and target.read_text() == "d^1f = d1x\n"


def test_truncation_warning_goes_to_stderr(capsys):
    code, _, err = run(capsys, "alpha", "x + x^5", "--N", "2")
    assert code == 0 and "truncated" in err
