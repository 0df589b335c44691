import io
import os
import subprocess
import sys
from pathlib import Path

import pytest

from peacegame.cli import build_parser, main

GOLDEN = Path(__file__).parent / "golden"
COMMANDS = ["thresholds", "acrit", "payoff", "solve", "sweep", "simulate", "verify"]


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def help_text(command=None):
    env = dict(os.environ, COLUMNS="100")
    argv = [sys.executable, "-m", "peacegame.cli"] + ([command] if command else []) + ["--help"]
    return subprocess.run(argv, env=env, capture_output=True, text=True, check=True).stdout


@pytest.mark.parametrize("command", [None] + COMMANDS)
def test_help_matches_golden(command):
    name = f"help_{command or 'main'}.txt"
    assert help_text(command) == (GOLDEN / name).read_text()


def test_help_lists_every_flag():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    for name, p in sub.choices.items():
        text = help_text(name)
        for action in p._actions:
            for flag in action.option_strings:
                assert flag in text, (name, flag)


def test_acrit_default_precision():
    assert run(["acrit", "--alpha", "0.7", "--x", "0"]) == (0, "a_crit=0.916291\n")
    assert run(["acrit", "--alpha", "0.45", "--x", "1"]) == (0, "a_crit=UNBOUNDED\n")


def test_validation_error_exit_code(capsys):
    code, _ = run(["solve", "--alpha", "1.0", "--x", "0", "--a_half", "0.5"])
    assert code == 2
    err = capsys.readouterr().err
    assert err.startswith("error: AlphaOutOfRange")


def test_all_violations_reported(capsys):
    code, _ = run(["solve", "--alpha", "1.5", "--a_lo", "1", "--a_hi", "1"])
    assert code == 2
    lines = capsys.readouterr().err.splitlines()
    assert [ln.split(":")[1].strip() for ln in lines] == ["AlphaOutOfRange", "DegenerateSupport"]


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "g.cfg"
    cfg.write_text("alpha=0.7\nx=0\na_half=0.5\n")
    _, text = run(["thresholds", "--config", str(cfg)])
    assert "beta_g_plus  = 0.435722" in text
    _, text = run(["thresholds", "--config", str(cfg), "--a_half", "1.0"])
    assert "peace_exists = false" in text


def test_unknown_config_key_is_error(tmp_path, capsys):
    cfg = tmp_path / "g.cfg"
    cfg.write_text("alpha=0.7\nzeta=1\n")
    assert run(["acrit", "--config", str(cfg)])[0] == 2
    assert "unknown key" in capsys.readouterr().err


def test_unknown_flag_is_error():
    with pytest.raises(SystemExit) as exc:
        main(["acrit", "--alpha", "0.7", "--gamma", "1"])
    assert exc.value.code == 2


def test_thresholds_output():
    code, text = run(["thresholds", "--alpha", "0.7", "--x", "0", "--a_half", "0.5",
                      "--beta", "0.5", "--csv"])
    assert code == 0
    lines = text.splitlines()
    assert "t_g          = -0.916291" in lines
    assert lines[-2].startswith("beta_g_minus,beta_g_plus,beta_r_minus,beta_r_plus")
    assert lines[-1].split(",")[0] == "0.264278468159"


def test_payoff_csv():
    code, text = run(["payoff", "--alpha", "0.7", "--x", "0", "--a_half", "0.5",
                      "--points", "5"])
    lines = text.splitlines()
    assert code == 0 and len(lines) == 6
    assert lines[0] == "beta,branch,gov_total,reb_total,prob_war,welfare"
    assert lines[3] == "0.5,GuaranteedPeace,0.5,0.5,0,1"


def test_solve_with_oracle():
    code, text = run(["solve", "--alpha", "0.9", "--x", "1", "--a_half", "0.27", "--oracle"])
    assert code == 0
    assert "regime     = RiskWar" in text
    steps = float(text.split("oracle_grid_steps =")[1].split()[0])
    assert steps <= 2


def test_sweep_writes_csv_and_annotations(tmp_path):
    out = tmp_path / "s.csv"
    code, text = run(["sweep", "--alpha", "0.7", "--x", "1", "--a_half", "0.5",
                      "--count", "40", "--out", str(out)])
    assert code == 0 and text == ""
    assert len(out.read_text().splitlines()) == 41
    notes = Path(str(out) + ".annotations.txt").read_text()
    assert notes.startswith("param=a_half\nswitch_point=0.8612")


def test_sweep_needs_symmetric_support(capsys):
    code, _ = run(["sweep", "--alpha", "0.7", "--a_lo", "-1", "--a_hi", "2"])
    assert code == 2


def test_simulate_prints_estimate():
    code, text = run(["simulate", "--alpha", "0.7", "--x", "0", "--a_half", "0.5",
                      "--beta", "0.5", "--draws", "1000", "--seed", "1"])
    assert code == 0
    assert "war_freq = 0.000000" in text and "gov_mean = 0.500000" in text


def test_verify_small_battery():
    code, text = run(["verify", "--draws", "20000", "--cases", "10", "--seed", "42"])
    assert code == 0
    assert text.endswith("verify: 10/10 cases within 4 s.e.\n")


@pytest.mark.slow
def test_verify_full_battery():
    code, text = run(["verify", "--draws", "1000000", "--seed", "42"])
    assert code == 0, text


def test_console_script_installed():
    res = subprocess.run(["peacegame", "acrit", "--alpha", "0.7", "--x", "0"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "a_crit=0.916291\n"
