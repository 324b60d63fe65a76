import json
from pathlib import Path

import pytest

import main
from analysis.sequence import TphProblem
from scripts.problem_io import save_matrix, save_problem
from exact.matrix import ExactMatrix

PROBLEMS = Path(__file__).parent / "problems"
WORKED = str(PROBLEMS / "worked_example.json")


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("TPH_CHECK", "TPH_LOG_LEVEL", "TPH_LOG_FILE", "TPH_ALLOW_TRANSPOSE_FALLBACK"):
        monkeypatch.delenv(name, raising=False)


def run(capsys, *argv):
    code = main.main(list(argv))
    return code, capsys.readouterr()


def write_problem(tmp_path, name, prob):
    path = tmp_path / name
    save_problem(prob, path)
    return str(path)


def test_analyze_worked_example(capsys):
    code, out = run(capsys, "analyze", WORKED)
    assert code == 0
    data = json.loads(out.out)
    assert data["indices"] == [-1, 0, 0, 1]
    assert (data["alpha"], data["omega"]) == (0, 0)
    assert data["pinv"] is None


def test_analyze_scalar_problem(capsys):
    code, out = run(capsys, "analyze", str(PROBLEMS / "scalar.json"))
    assert code == 0
    data = json.loads(out.out)
    assert data["indices"] == [0, 0, 0, 0]
    assert (data["alpha"], data["omega"]) == (0, 0)


def test_analyze_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"p": 1, "q": 1, "n": 0, "m": 0, "a": [[["1/0"]]], "b": [[["1"]]]}), encoding="utf-8")
    code, out = run(capsys, "analyze", str(path))
    assert code == 2
    assert "ParseError" in out.err


def test_float_entries_are_parse_errors(capsys, tmp_path):
    path = tmp_path / "float.json"
    path.write_text(json.dumps({"p": 1, "q": 1, "n": 0, "m": 0, "a": [[[0.5]]], "b": [[["1"]]]}), encoding="utf-8")
    assert run(capsys, "pinv", str(path))[0] == 2


def test_analyze_zero_sequence(capsys, tmp_path):
    path = write_problem(tmp_path, "zero.json", TphProblem.from_scalars(0, 0, [0], [0]))
    assert run(capsys, "analyze", path)[0] == 3


def test_pinv_plus_with_checks(capsys):
    code, out = run(capsys, "pinv", WORKED, "--sign", "plus", "--check")
    assert code == 0
    data = json.loads(out.out)
    assert data["pinv"][0] == ["1/4", "1/2", "0", "0"]
    assert data["pinv"][1] == ["1/10", "-1/5", "3/5", "-1/5"]
    assert data["invertible"] is True
    assert data["checks"] and all(data["checks"].values())
    assert data["status"] == "ok"


def test_pinv_minus_with_checks(capsys):
    code, out = run(capsys, "pinv", WORKED, "--sign", "minus", "--check")
    assert code == 0
    data = json.loads(out.out)
    assert data["invertible"] is False
    assert data["checks"]["g_inverse"] is True


def test_blockwise_output_is_identical(capsys):
    _, direct = run(capsys, "pinv", WORKED, "--sign", "minus")
    _, blockwise = run(capsys, "pinv", WORKED, "--sign", "minus", "--method", "blockwise")
    assert json.loads(direct.out)["pinv"] == json.loads(blockwise.out)["pinv"]


def test_pinv_both_signs_to_file(capsys, tmp_path):
    out_path = tmp_path / "both.json"
    code, out = run(capsys, "pinv", WORKED, "--sign", "both", "--out", str(out_path))
    assert code == 0
    assert out.out == ""
    data = json.loads(out_path.read_text(encoding="utf-8"))
    assert [d["sign"] for d in data] == ["plus", "minus"]


def test_environment_forces_checks(capsys, monkeypatch):
    monkeypatch.setenv("TPH_CHECK", "1")
    _, out = run(capsys, "pinv", WORKED)
    assert "blockwise_equals_direct" in json.loads(out.out)["checks"]


def test_defective_problem_and_fallback(capsys, monkeypatch, tmp_path):
    path = write_problem(tmp_path, "defective.json", TphProblem.from_scalars(1, 0, [1, 2], [2, 1]))
    assert run(capsys, "pinv", path)[0] == 3
    code, out = run(capsys, "pinv", path, "--allow-transpose-fallback")
    assert code == 0
    record = json.loads(out.out)
    assert record["transposed"] is True
    assert record["omega"] == 1
    assert record["transposed_table"]["omega"] == 0
    assert json.loads(run(capsys, "pinv", WORKED)[1].out)["transposed_table"] is None
    monkeypatch.setenv("TPH_ALLOW_TRANSPOSE_FALLBACK", "yes")
    assert run(capsys, "pinv", path)[0] == 0
    assert run(capsys, "pinv", path, "--no-allow-transpose-fallback")[0] == 3


def test_verify_exit_codes(capsys, tmp_path):
    minus = str(PROBLEMS / "worked_t_minus_h.json")
    plus = str(PROBLEMS / "worked_t_plus_h.json")
    candidate = str(PROBLEMS / "worked_t_minus_h_pinv.json")
    code, out = run(capsys, "verify", minus, candidate)
    assert code == 0
    assert json.loads(out.out)["is_g_inverse"] is True
    assert run(capsys, "verify", plus, candidate)[0] == 4

    wide = tmp_path / "wide.json"
    save_matrix(ExactMatrix.zeros(2, 3), wide)
    assert run(capsys, "verify", minus, str(wide))[0] == 1

    zero = tmp_path / "zero.json"
    save_matrix(ExactMatrix.zeros(2, 2), zero)
    assert run(capsys, "verify", str(zero), str(zero))[0] == 0


def test_oracle_command(capsys, tmp_path):
    out_path = tmp_path / "oracle.json"
    code, _ = run(capsys, "oracle", str(PROBLEMS / "worked_t_minus_h.json"), "--out", str(out_path))
    assert code == 0
    data = json.loads(out_path.read_text(encoding="utf-8"))
    assert (data["rows"], data["cols"]) == (4, 4)
    assert data["report"]["xa_symmetric"] is True
    assert data["report"]["rank"] == 3


def test_dense_command_feeds_verify(capsys, tmp_path):
    dense = tmp_path / "minus.json"
    assert run(capsys, "dense", WORKED, "--sign", "minus", "--out", str(dense))[0] == 0
    data = json.loads(dense.read_text(encoding="utf-8"))
    assert data["entries"][0] == ["0", "0", "0", "0"]
    assert run(capsys, "verify", str(dense), str(PROBLEMS / "worked_t_minus_h_pinv.json"))[0] == 0


def test_usage_errors_exit_one(capsys):
    assert run(capsys, "pinv", WORKED, "--sign", "times")[0] == 1
    assert run(capsys, "invert", WORKED)[0] == 1
    assert run(capsys)[0] == 1


def test_log_file(capsys, tmp_path):
    log_file = tmp_path / "tph.log"
    code, _ = run(capsys, "--log-level", "debug", "--log-file", str(log_file), "analyze", WORKED)
    assert code == 0
    text = log_file.read_text(encoding="utf-8")
    assert "indices" in text
    main.setup_logging("WARNING")


def test_info_messages_reach_stderr_once(capsys, tmp_path):
    log_file = tmp_path / "tph.log"
    code, captured = run(capsys, "--log-level", "info", "--log-file", str(log_file), "analyze", WORKED)
    assert code == 0
    assert captured.err.count("Analyzing") == 1
    assert log_file.read_text(encoding="utf-8").count("Analyzing") == 1
    main.setup_logging("WARNING")
