import json
import subprocess
import sys

import pytest

from tiotest import cli
from tiotest.suite import fixture_text

FIX = {n: None for n in ("conveyor", "ship2_tp", "conveyor_dp", "conveyor_det", "conveyor_impl", "mutant_a")}


@pytest.fixture
def files(tmp_path):
    out = {}
    for n in FIX:
        p = tmp_path / f"{n}.ta"
        p.write_text(fixture_text(n))
        out[n] = str(p)
    return out


def test_check_bundled_models(files):
    assert cli.main(["check", files["conveyor"], files["ship2_tp"], "--dp", files["conveyor_dp"]]) == cli.OK


def test_check_reports_failing_property(files, tmp_path, capsys):
    p = tmp_path / "noreset.ta"
    p.write_text(fixture_text("conveyor").replace("edge Waste -- true / zeta / {x} -> Start\n", ""))
    assert cli.main(["check", str(p)]) == cli.INVALID
    assert "FAILED" in capsys.readouterr().out


def test_malformed_guard_is_a_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.ta"
    p.write_text(fixture_text("conveyor").replace("x <= 2 / tau", "x <== 2 / tau"))
    assert cli.main(["check", str(p)]) == cli.IO_ERROR
    assert f"{p}:18:" in capsys.readouterr().err


def test_missing_file_is_io_error(files):
    code = cli.main(["run", files["conveyor"], files["ship2_tp"], "/no/such/impl.ta", "--dp", files["conveyor_dp"]])
    assert code == cli.IO_ERROR


def test_product_command_writes_model(files, tmp_path):
    out = tmp_path / "o"
    assert cli.main(["product", files["conveyor"], files["ship2_tp"], "--out", str(out)]) == cli.OK
    text = (out / "conveyor_x_ship2_tp.ta").read_text()
    assert text.count("\nlocation ") == 7


def test_synth_writes_artifacts(files, tmp_path):
    out = tmp_path / "o"
    assert cli.main(["synth", files["conveyor"], files["ship2_tp"], "--dp", files["conveyor_dp"], "--out", str(out)]) == 0
    strategy = (out / "strategy.txt").read_text()
    assert "D2A" in strategy and "wait-max" in strategy and "play(0, ship2?)" in strategy
    assert (out / "ranks.txt").exists() and (out / "tester.ta").exists()
    recs = [json.loads(l) for l in (out / "synth.jsonl").read_text().splitlines()]
    assert recs[-1] == {"command": "synth", "kind": "exit", "code": 0}


def test_synth_is_reproducible(files, tmp_path):
    for d in ("a", "b"):
        cli.main(["synth", files["conveyor"], files["ship2_tp"], "--dp", files["conveyor_dp"], "--out", str(tmp_path / d)])
    for name in ("strategy.txt", "ranks.txt", "tester.ta", "synth.jsonl"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_synth_without_deterministic_product(files, capsys):
    assert cli.main(["synth", files["conveyor"], files["ship2_tp"]]) == cli.NONDETERMINISTIC
    assert "deterministic" in capsys.readouterr().err


def test_synth_unsatisfiable(files, tmp_path, capsys):
    p = tmp_path / "never.ta"
    text = fixture_text("ship2_tp").replace("accept Accept", "accept Waste")
    text = text.replace("edge Start -- true / waste! / {} -> Waste", "edge Start -- true / waste! / {} -> Start")
    p.write_text(text)
    code = cli.main(["synth", files["conveyor"], str(p), "--det-spec", files["conveyor_det"]])
    assert code == cli.UNSATISFIABLE
    assert "UNSATISFIABLE" in capsys.readouterr().err


def test_run_campaign(files):
    code = cli.main(["run", files["conveyor"], files["ship2_tp"], files["conveyor_impl"], files["mutant_a"],
                     "--dp", files["conveyor_dp"], "--det-spec", files["conveyor_det"],
                     "--target", f"{files['mutant_a']}=0 · ship2 · 1 · end2"])
    assert code == cli.OK


def test_run_forced_bug_names_soundness(files, capsys):
    code = cli.main(["run", files["conveyor"], files["ship2_tp"], files["conveyor_impl"], "--dp", files["conveyor_dp"],
                     "--seed", "1", "--inject-fail"])
    assert code == cli.VIOLATION
    assert "violated: soundness" in capsys.readouterr().out


def test_run_zero_budget_is_inconclusive(files, capsys):
    code = cli.main(["run", files["conveyor"], files["ship2_tp"], files["conveyor_impl"], "--dp", files["conveyor_dp"],
                     "--restarts", "0", "--steps", "0", "--seed", "1..3"])
    assert code == cli.OK
    assert "inconclusive budget" in capsys.readouterr().out


def test_oracle_commands(files, capsys):
    assert cli.main(["oracle", "equiv", files["conveyor"], files["conveyor_det"], "--horizon", "6"]) == cli.OK
    assert cli.main(["oracle", "tioco", files["mutant_a"], files["conveyor"], "--json"]) == cli.INVALID
    lines = capsys.readouterr().out.strip().splitlines()
    rec = json.loads(lines[-2])
    assert rec["ok"] is False and rec["action"] == "end1"


def test_output_dir_from_environment(files, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path / "env"))
    assert cli.main(["oracle", "equiv", files["conveyor"], files["conveyor"], "--horizon", "3"]) == cli.OK
    assert (tmp_path / "env" / "oracle.jsonl").exists()


def test_auto_complete_tp(files, tmp_path):
    p = tmp_path / "partial.ta"
    p.write_text(fixture_text("ship2_tp").replace("edge Start -- y > 5 / ship2? / {} -> Start\n", ""))
    assert cli.main(["check", files["conveyor"], str(p)]) == cli.INVALID
    assert cli.main(["check", files["conveyor"], str(p), "--auto-complete-tp"]) == cli.OK


def test_console_script_entry_point(files):
    r = subprocess.run([sys.executable, "-m", "tiotest.cli", "check", files["conveyor"]], capture_output=True, text=True)
    assert r.returncode == 0
