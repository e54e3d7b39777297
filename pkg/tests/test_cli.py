# 命令行测试
"""生成、计数、枚举与验证子命令的输出和退出码"""

import json

import pytest

from src.cli import main
from src.utils import EXIT_HYPOTHESIS, EXIT_IO, EXIT_OK


@pytest.fixture
def c5_file(tmp_path, capsys):
    assert main(["generate", "cycle", "--param", "n=5"]) == EXIT_OK
    text = capsys.readouterr().out
    path = tmp_path / "c5.json"
    path.write_text(text, encoding="utf-8")
    return path


def test_generate_writes_json(capsys):
    assert main(["generate", "cycle", "--param", "n=7"]) == EXIT_OK
    [raw] = json.loads(capsys.readouterr().out)
    assert raw["vertices"] == 7
    assert raw["metadata"] == {"family": "cycle", "n": 7}


def test_count(c5_file, capsys):
    assert main(["count", "--input", str(c5_file)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {"colorings": 30}


def test_count_as_csv(c5_file, capsys):
    assert main(["count", "--input", str(c5_file), "--output", "csv"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["colorings", "30"]


def test_enumerate_with_limit(c5_file, capsys):
    assert main(["enumerate", "--input", str(c5_file), "--limit", "2"]) == EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert record["count"] == 2
    assert record["colorings"][0] == [1, 2, 1, 2, 3]


def test_missing_input_file(tmp_path, capsys):
    assert main(["count", "--input", str(tmp_path / "missing.json")]) == EXIT_IO
    assert capsys.readouterr().err.startswith("错误")


def test_unknown_family(capsys):
    assert main(["generate", "no_such_family"]) == EXIT_HYPOTHESIS
    assert "BAD_PARAMS" in capsys.readouterr().err


def test_verify_cycles(capsys, monkeypatch):
    monkeypatch.delenv("TFP_SEED", raising=False)
    assert main(["verify", "cycles"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["check"] == "cycles"
    assert report["violations"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "no_such_check"],
        ["count", "--jobs", "x"],
        ["count", "--output", "xml"],
        ["verify", "cycles", "--max-n", "13"],
        ["generate", "cycle", "--param", "n"],
        [],
    ],
)
def test_bad_arguments_exit_with_hypothesis_code(argv, capsys):
    assert main(argv) == EXIT_HYPOTHESIS
    assert "BAD_PARAMS" in capsys.readouterr().err


def test_csv_has_one_row_per_instance(tmp_path, capsys):
    assert main(["generate", "exhaustive_tfp", "--param", "max_n=3"]) == EXIT_OK
    path = tmp_path / "small.json"
    path.write_text(capsys.readouterr().out, encoding="utf-8")
    assert main(["count", "--input", str(path), "--output", "csv"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.endswith("\n") and not out.endswith("\n\n")
    assert out.splitlines() == ["colorings", "3", "6", "12"]
