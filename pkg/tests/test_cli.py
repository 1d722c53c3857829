import json

import pytest

from qhfocus.cli import main

SYSTEM_31 = """\
# 2:3 weighted system
p 2
q 3
x 5 0 1.0
y 4 1 1.0
"""


@pytest.fixture
def system_file(tmp_path):
    path = tmp_path / "system.txt"
    path.write_text(SYSTEM_31, encoding="utf-8")
    return path


def test_analyze_reports_first_order_focus(system_file, capsys):
    code = main(["analyze", "--system", str(system_file)])
    out = capsys.readouterr().out
    assert code == 0
    assert "focus order       1" in out
    assert "weak-focus" in out


def test_analyze_empty_file_exits_1(tmp_path, capsys):
    path = tmp_path / "empty.txt"
    path.write_text("", encoding="utf-8")
    assert main(["analyze", "--system", str(path)]) == 1


def test_analyze_missing_file_exits_1(tmp_path):
    assert main(["analyze", "--system", str(tmp_path / "nope.txt")]) == 1


def test_analyze_writes_artifacts(system_file, tmp_path, capsys):
    out = tmp_path / "report.txt"
    code = main(["analyze", "--system", str(system_file), "--out", str(out)])
    assert code == 0
    assert out.exists()
    doc = json.loads(out.with_suffix(".json").read_text())
    assert doc["focus_order"] == 1
    assert out.with_suffix(".csv").read_text().startswith("k,nu_k,tol")


def test_analyze_rq_table(system_file, tmp_path, capsys):
    table = tmp_path / "rq.csv"
    code = main(["analyze", "--system", str(system_file), "--rq-table", str(table)])
    assert code == 0
    assert len(table.read_text().splitlines()) == 181


def test_verify_passes_and_is_deterministic(capsys):
    assert main(["verify"]) == 0
    first = capsys.readouterr().out
    assert main(["verify"]) == 0
    second = capsys.readouterr().out
    assert [l for l in first.splitlines() if "elapsed" not in l] == [
        l for l in second.splitlines() if "elapsed" not in l
    ]
    assert "FAIL" not in first


def test_quad_schemes_agree(capsys):
    assert main(["quad"]) == 0
    out = capsys.readouterr().out
    for name in ("I2", "I4", "IA", "IB"):
        assert name in out


def test_cycles_family_eq325(capsys):
    code = main(
        [
            "cycles",
            "--family", "eq325",
            "--params", "eps1=1.22e-08,eps2=2.41e-04",
            "--h-min", "0.03",
            "--h-max", "0.45",
            "--grid", "48",
            "--noise-floor", "1e-12",
        ]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "cycles found   2" in out


def test_jacobian_eq325(capsys):
    assert main(["jacobian", "--family", "eq325"]) == 0
    out = capsys.readouterr().out
    assert "rank        2" in out


def test_survey_seed_determinism(capsys):
    args = ["survey", "--weights", "2:3", "--samples", "4", "--seed", "9"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first


def test_missing_input_source_exits_1(capsys):
    assert main(["analyze"]) == 1
