"""End-to-end CLI tests over temp files.

Exit codes: 0 success, 1 validation failure, 2 usage/schema error.
"""

import json
from pathlib import Path

import pytest

from tunespace.cli import main
from tunespace.space import import_space

PROBLEM = {
    "parameters": {"x": [1, 2, 4], "y": [1, 2, 4]},
    "constraints": ["x*y <= 4"],
}

# A real 8-parameter tuning space: ~50 % of 22272 combinations valid.
HALF_DENSE_COUNTS = {
    "cartesian_size": 22272,
    "valid_count": 11130,
    "num_constraints": 3,
}


@pytest.fixture
def problem_file(tmp_path):
    path = tmp_path / "problem.json"
    path.write_text(json.dumps(PROBLEM), encoding="utf-8")
    return path


def test_solve_count_only(problem_file, capsys):
    assert main(["solve", "--input", str(problem_file), "--count-only"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "6"
    assert out.isdigit()


def test_solve_formats_reimport_identically(problem_file, tmp_path, capsys):
    spaces = []
    for fmt in ("rows", "columns", "maps"):
        out_path = tmp_path / f"space_{fmt}.json"
        code = main(["solve", "--input", str(problem_file),
                     "--format", fmt, "--output", str(out_path)])
        assert code == 0
        payload = json.loads(out_path.read_text(encoding="utf-8"))
        assert payload["format"] == fmt
        spaces.append(import_space(payload))
    assert spaces[0] == spaces[1] == spaces[2]


def test_solve_writes_to_stdout(problem_file, capsys):
    assert main(["solve", "--input", str(problem_file)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["format"] == "rows"
    assert len(payload["configurations"]) == 6


def test_validate_pass(problem_file, capsys):
    assert main(["validate", "--input", str(problem_file)]) == 0
    assert "PASS" in capsys.readouterr().out


def test_validate_bundled_examples(capsys):
    bundled = Path(__file__).resolve().parent.parent / "demos" / "problems"
    files = sorted(bundled.glob("*.json"))
    assert files, "bundled example problems missing"
    for path in files:
        assert main(["validate", "--input", str(path)]) == 0, path
    out = capsys.readouterr().out
    assert out.count("PASS") == len(files)


def test_stats_on_problem_file(problem_file, capsys):
    assert main(["stats", "--input", str(problem_file)]) == 0
    out = capsys.readouterr().out
    assert "cartesian_size: 9" in out
    assert "valid_count: 6" in out
    assert "sparsity_fraction: 0.333333" in out


def test_stats_on_counts_file(tmp_path, capsys):
    path = tmp_path / "counts.json"
    path.write_text(json.dumps(HALF_DENSE_COUNTS), encoding="utf-8")
    assert main(["stats", "--input", str(path)]) == 0
    out = capsys.readouterr().out
    assert "avg_constraint_evaluations: 33414" in out


def test_generate_then_solve(tmp_path, capsys):
    out_path = tmp_path / "generated.json"
    code = main(["generate", "--size", "10000", "--dims", "3",
                 "--constraints", "2", "--seed", "1", "--output", str(out_path)])
    assert code == 0
    payload = json.loads(out_path.read_text(encoding="utf-8"))
    assert set(payload) == {"parameters", "constraints"}
    assert len(payload["parameters"]) == 3
    assert main(["validate", "--input", str(out_path)]) == 0


def test_generate_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        main(["generate", "--size", "5000", "--dims", "2",
              "--constraints", "3", "--seed", "9", "--output", str(path)])
    assert a.read_text(encoding="utf-8") == b.read_text(encoding="utf-8")


def test_bench_grid(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code = main(["bench", "--grid", "d=2;s=1e4;m=2", "--reps", "1",
                 "--output", str(out_path)])
    assert code == 0
    payload = json.loads(out_path.read_text(encoding="utf-8"))
    assert {r["method"] for r in payload["spaces"]} == {"optimized", "bruteforce"}
    assert all(r["validation"] == "pass" for r in payload["spaces"])
    assert (tmp_path / "report.csv").exists()
    err = capsys.readouterr().err
    assert "speedup" in err


def test_bench_suite_directory(tmp_path, problem_file):
    out_path = tmp_path / "suite_report.json"
    code = main(["bench", "--suite", str(problem_file.parent),
                 "--methods", "optimized", "--output", str(out_path)])
    assert code == 0
    payload = json.loads(out_path.read_text(encoding="utf-8"))
    assert payload["spaces"][0]["validation"] == "skipped"


def test_bench_bad_grid(capsys):
    assert main(["bench", "--grid", "d=2;s=1e4"]) == 2
    assert main(["bench", "--grid", "q=1;d=2;s=1e4;m=2"]) == 2


def test_bench_bad_methods(capsys):
    assert main(["bench", "--grid", "d=2;s=1e4;m=2", "--methods", "warp"]) == 2


def test_schema_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"constraints": []}', encoding="utf-8")
    assert main(["solve", "--input", str(path)]) == 2
    assert "parameters" in capsys.readouterr().err


def test_missing_file_exit_code(tmp_path, capsys):
    assert main(["solve", "--input", str(tmp_path / "nope.json")]) == 2


def test_usage_error_exit_code(capsys):
    assert main(["solve"]) == 2          # missing --input
    assert main(["frobnicate"]) == 2     # unknown subcommand


def test_unsatisfiable_constant_constraint_is_schema_level_error(tmp_path, capsys):
    path = tmp_path / "contradiction.json"
    path.write_text(json.dumps({
        "parameters": {"x": [1, 2]},
        "constraints": ["1 > 2"],
    }), encoding="utf-8")
    assert main(["solve", "--input", str(path)]) == 2
    assert "constant false" in capsys.readouterr().err
