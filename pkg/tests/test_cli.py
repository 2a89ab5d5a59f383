"""CLI behaviour: reports, exit codes, JSON stability, sweeps."""

import json
import subprocess
import sys
from importlib import resources

import pytest

from riddle_forge.cli import main

CORPUS = resources.files("riddle_forge") / "corpus" / "classic_problems.speck"


@pytest.fixture
def corpus_path(tmp_path):
    target = tmp_path / "classic_problems.speck"
    target.write_text(CORPUS.read_text(encoding="utf-8"), encoding="utf-8")
    return target


def run_main(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_corpus_text(corpus_path, capsys):
    code, out, err = run_main(["solve", str(corpus_path)], capsys)
    assert code == 0
    assert err == ""
    answers = [line.split("answer = ")[1] for line in out.splitlines() if "answer" in line]
    assert answers == ["12", "80", "30", "3", "2", "2", "4", "13"]


def test_solve_corpus_json_is_byte_stable(corpus_path, capsys):
    argv = ["solve", str(corpus_path), "--format", "json", "--check", "--explain"]
    code1, out1, _ = run_main(argv, capsys)
    code2, out2, _ = run_main(argv, capsys)
    assert code1 == code2 == 0
    assert out1 == out2
    reports = json.loads(out1)
    assert [r["answer"] for r in reports] == ["12", "80", "30", "3", "2", "2", "4", "13"]
    for report in reports:
        keys = list(report.keys())
        assert keys[:3] == ["label", "kind", "answer"]
        assert report["explanation"]  # nonempty in explain mode
        if report["kind"] == "rate":
            assert "oracle" not in report  # no oracle exists for rate
        else:
            assert report["agreement"] is True


def test_check_flag_never_changes_answers(corpus_path, capsys):
    _, plain, _ = run_main(["solve", str(corpus_path), "--format", "json"], capsys)
    _, checked, _ = run_main(
        ["solve", str(corpus_path), "--format", "json", "--check"], capsys
    )
    plain_reports = json.loads(plain)
    checked_reports = json.loads(checked)
    assert [r["answer"] for r in plain_reports] == [r["answer"] for r in checked_reports]
    assert all("agreement" not in r for r in plain_reports)


def test_solve_empty_file(tmp_path, capsys):
    empty = tmp_path / "empty.speck"
    empty.write_text("", encoding="utf-8")
    code, out, err = run_main(["solve", str(empty)], capsys)
    assert code == 0
    assert out == ""
    assert err == ""


def test_solve_parse_error_exits_one(tmp_path, capsys):
    bad = tmp_path / "bad.speck"
    bad.write_text("puzzle weighing { objects = -3 }\n", encoding="utf-8")
    code, out, err = run_main(["solve", str(bad)], capsys)
    assert code == 1
    assert "negative_count" in err
    assert str(bad) in err


def test_solve_missing_file_exits_one(tmp_path, capsys):
    code, _, err = run_main(["solve", str(tmp_path / "nope.speck")], capsys)
    assert code == 1
    assert "nope.speck" in err


def test_transfer_disagreement_exits_two(tmp_path, capsys):
    source = (
        "puzzle transfer { container_a = (red: 1); container_b = (blue: 1); "
        "moved = 1; query = moved }\n"
    )
    path = tmp_path / "transfer.speck"
    path.write_text(source, encoding="utf-8")
    code, out, _ = run_main(["solve", str(path)], capsys)
    assert code == 0  # no oracle consulted without --check
    code, out, _ = run_main(["solve", str(path), "--format", "json", "--check"], capsys)
    assert code == 2
    (report,) = json.loads(out)
    assert report["answer"] == "1"  # 2n/(n+d) with n = d = 1
    assert report["oracle"] == "1/2"
    assert report["agreement"] is False


def test_station_check_agrees(tmp_path, capsys):
    path = tmp_path / "station.speck"
    path.write_text("puzzle station { early = 60 min; saved = 10 min }\n", "utf-8")
    code, out, _ = run_main(["solve", str(path), "--format", "json", "--check"], capsys)
    assert code == 0
    (report,) = json.loads(out)
    assert report["answer"] == "55"
    assert report["agreement"] is True


def test_station_check_outside_simulation_regime(tmp_path, capsys):
    path = tmp_path / "station.speck"
    path.write_text("puzzle station { early = 10 min; saved = 15 min }\n", "utf-8")
    code, out, _ = run_main(
        ["solve", str(path), "--format", "json", "--check"], capsys
    )
    assert code == 0  # not a disagreement, just unverifiable kinematically
    (report,) = json.loads(out)
    assert report["answer"] == "5/2"
    assert report["oracle"] is None
    assert report["agreement"] is None


def test_ceil_subjects_flag(tmp_path, capsys):
    source = (
        "puzzle rate { work = 5; subjects = 2; time = 7 min; "
        "find subjects where work = 3, time = 2 min }\n"
    )
    path = tmp_path / "rate.speck"
    path.write_text(source, encoding="utf-8")
    _, exact, _ = run_main(["solve", str(path), "--format", "json"], capsys)
    assert json.loads(exact)[0]["answer"] == "21/5"
    _, ceiled, _ = run_main(
        ["solve", str(path), "--format", "json", "--ceil-subjects"], capsys
    )
    assert json.loads(ceiled)[0]["answer"] == "5"


def test_explain_mode_includes_strategy_tree(tmp_path, capsys):
    path = tmp_path / "nine.speck"
    path.write_text("puzzle weighing { objects = 9 }\n", encoding="utf-8")
    code, out, _ = run_main(["solve", str(path), "--explain"], capsys)
    assert code == 0
    assert "3^1 < 9 <= 3^2" in out
    assert "weigh [0 1 2] vs [3 4 5]" in out
    code, out, _ = run_main(
        ["solve", str(path), "--explain", "--format", "json"], capsys
    )
    (report,) = json.loads(out)
    assert report["strategy"]["left"] == [0, 1, 2]
    assert report["strategy"]["on_balance"]["suspects"] == [6, 7, 8]


def test_out_writes_lf_file(tmp_path, corpus_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_main(
        ["solve", str(corpus_path), "--format", "json", "--out", str(target)], capsys
    )
    assert code == 0
    assert out == ""
    raw = target.read_bytes()
    assert b"\r" not in raw
    assert json.loads(raw.decode("utf-8"))[0]["answer"] == "12"


def test_sweep_weighing(capsys):
    code, out, _ = run_main(["sweep", "weighing", "--max", "200"], capsys)
    assert code == 0
    assert "199 compared, 199 matched, 0 mismatched" in out


def test_sweep_weighing_trivial_bound(capsys):
    code, out, _ = run_main(["sweep", "weighing", "--max", "1"], capsys)
    assert code == 0
    assert "0 compared" in out


def test_sweep_weighing_rejects_out_of_bounds(capsys):
    code, _, err = run_main(["sweep", "weighing", "--max", "6562"], capsys)
    assert code == 2
    assert "6561" in err


def test_sweep_pigeonhole_small(capsys):
    code, out, _ = run_main(
        ["sweep", "pigeonhole", "--max-colors", "3", "--max-count", "4",
         "--max-required", "3"],
        capsys,
    )
    assert code == 0
    assert "0 mismatched" in out


def test_sweep_pigeonhole_rejects_out_of_bounds(capsys):
    code, _, err = run_main(["sweep", "pigeonhole", "--max-colors", "5"], capsys)
    assert code == 2
    assert "colors" in err


def test_sweep_transfer_writes_report(tmp_path, capsys):
    target = tmp_path / "survey.tsv"
    code, out, _ = run_main(
        ["sweep", "transfer", "--max-n", "2", "--max-d", "2", "--out", str(target)],
        capsys,
    )
    assert code == 0  # mismatches expected, still success
    assert "mismatches expected" in out
    lines = target.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "n\td\tsame\tmoved\tquery\tenumerated\tformula\tmatch"
    assert len(lines) == 1 + 30  # sum over n<=2 of 2n times sum over d<=2 of d+1


def test_threads_env_does_not_change_results(monkeypatch, capsys):
    argv = ["sweep", "pigeonhole", "--max-colors", "2", "--max-count", "3",
            "--max-required", "2"]
    code1, out1, _ = run_main(argv, capsys)
    monkeypatch.setenv("RIDDLE_FORGE_THREADS", "4")
    code2, out2, _ = run_main(argv, capsys)
    assert (code1, out1) == (code2, out2)


def test_threads_env_rejects_garbage(monkeypatch, capsys):
    monkeypatch.setenv("RIDDLE_FORGE_THREADS", "zero")
    code, _, err = run_main(["sweep", "pigeonhole", "--max-colors", "2"], capsys)
    assert code == 2
    assert "RIDDLE_FORGE_THREADS" in err


def test_explain_is_nonempty_for_every_kind(tmp_path, capsys):
    source = "\n".join(
        [
            "puzzle rate { work = 6; subjects = 6; time = 6 min; "
            "find subjects where work = 100, time = 50 min }",
            "puzzle weighing { objects = 5 }",
            "puzzle pigeonhole { counts = (a: 3, b: 3); required = 2 }",
            "puzzle transfer { container_a = (red: 2); container_b = (blue: 2); "
            "moved = 1; query = red }",
            "puzzle station { early = 60 min; saved = 10 min }",
        ]
    )
    path = tmp_path / "mixed.speck"
    path.write_text(source + "\n", encoding="utf-8")
    _, out, _ = run_main(
        ["solve", str(path), "--explain", "--check", "--format", "json"], capsys
    )
    reports = json.loads(out)
    assert [r["kind"] for r in reports] == [
        "rate", "weighing", "pigeonhole", "transfer", "station",
    ]
    assert all(r["explanation"] for r in reports)


def test_module_entry_point(corpus_path):
    result = subprocess.run(
        [sys.executable, "-m", "riddle_forge", "solve", str(corpus_path)],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert result.returncode == 0
    assert "tailor_buttons [pigeonhole] answer = 13" in result.stdout
