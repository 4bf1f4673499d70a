import math
import subprocess
import sys

import pytest

from cogtherm.cli import main, run
from cogtherm.errors import DivergenceError
from cogtherm.scenario import parse_scenario

BASAL = """\
[dynamics]
length = 2
dt = 0.001
t_end = 0.69314718056
gamma = 0
subsumer = 01 1.0
input = 10 1.0
"""

SZILARD = "[szilard]\ntemperature = 300\nepsilon = 0\ncycles = 1000\nseed = 42\n"


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line and not line.startswith("#"))


def test_simulate_basal(tmp_path, capsys):
    path = tmp_path / "basal.txt"
    path.write_text(BASAL)
    assert main(["simulate", "--scenario", str(path), "--out", str(tmp_path / "out")]) == 0
    rows = (tmp_path / "out" / "trajectory.csv").read_text().splitlines()
    assert rows[0] == "t,s_01"
    assert float(rows[-1].split(",")[1]) == pytest.approx(2.0, abs=1e-6)
    assert not (tmp_path / "out" / "ledger.csv").exists()
    report = (tmp_path / "out" / "report.txt").read_text()
    assert kv(report)["landauer_J_per_bit"] == "-2.87098e-21"
    assert "# [dynamics]" in report


def test_simulate_szilard_reversible(tmp_path, capsys):
    path = tmp_path / "s.txt"
    path.write_text(SZILARD)
    assert main(["simulate", "--scenario", str(path), "--out", str(tmp_path)]) == 0
    values = kv(capsys.readouterr().out)
    assert values["mean_w_kT"] == "0.693147"
    assert values["net_mean_kT"] == "0.000000"
    assert values["fluct_estimator"] == "1.000000"
    assert len((tmp_path / "ledger.csv").read_text().splitlines()) == 1001


def test_report_temperature_from_szilard_section(tmp_path):
    sc = parse_scenario(SZILARD.replace("300", "310"))
    result = run(sc, tmp_path)
    assert kv(result.report)["landauer_J_per_bit"] == "-2.96668e-21"
    assert all(p.exists() for p in result.paths)


def test_empty_scenario_exit_1(tmp_path, capsys):
    path = tmp_path / "empty.txt"
    path.write_text("")
    assert main(["simulate", "--scenario", str(path), "--out", str(tmp_path)]) == 1
    assert "line 1" in capsys.readouterr().err


def test_parse_error_names_line(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("[dynamics]\nsubsumer = 011 1.0\ninput = 10 1.0\n")
    assert main(["simulate", "--scenario", str(path), "--out", str(tmp_path)]) == 1
    assert "line 3" in capsys.readouterr().err


def test_missing_scenario_file(tmp_path, capsys):
    assert main(["simulate", "--scenario", str(tmp_path / "nope"), "--out", str(tmp_path)]) == 1
    assert "--scenario" in capsys.readouterr().err


def test_divergence_exit_2_removes_partial_outputs(tmp_path, capsys):
    text = "[dynamics]\ndt = 0.01\nt_end = 10\nsubsumer = 01 1\ninput = 10 1000\n"
    path = tmp_path / "boom.txt"
    path.write_text(text)
    out = tmp_path / "out"
    assert main(["simulate", "--scenario", str(path), "--out", str(out)]) == 2
    assert "DivergenceError" in capsys.readouterr().err
    assert list(out.iterdir()) == []
    with pytest.raises(DivergenceError):
        run(parse_scenario(text), out)


def test_report_command(capsys):
    assert main(["report", "--temperature", "300"]) == 0
    values = kv(capsys.readouterr().out)
    assert values["landauer_J_per_bit"] == "-2.87098e-21"
    assert values["boltzmann_factor"] == "2"
    assert main(["report", "--temperature", "310"]) == 0
    assert float(kv(capsys.readouterr().out)["ops_per_second"]) == pytest.approx(6.74153e21, rel=1e-5)


@pytest.mark.parametrize("T", ["0", "-5", "hot"])
def test_report_bad_temperature(T, capsys):
    with pytest.raises(SystemExit) as info:
        main(["report", "--temperature", T])
    assert info.value.code == 1
    assert "--temperature" in capsys.readouterr().err


def test_capacity_command(capsys):
    assert main(["capacity", "--k", "1", "--dk", "1", "--d", "0.5", "--dt", "2"]) == 0
    values = kv(capsys.readouterr().out)
    assert float(values["capacity_nat_per_time"]) == pytest.approx(math.log(2), rel=1e-5)
    assert float(values["capacity_bit_per_time"]) == pytest.approx(1.0, rel=1e-5)
    assert float(values["lower_bound_nat_per_time"]) == pytest.approx(math.log(2) / 2, rel=1e-5)


@pytest.mark.parametrize(
    "args",
    [["--k", "1", "--dk", "1", "--d", "0", "--dt", "1"], ["--k", "1", "--dk", "-1", "--d", "1", "--dt", "1"]],
)
def test_capacity_domain_errors_exit_2(args):
    assert main(["capacity", *args]) == 2


def test_capacity_missing_flag_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["capacity", "--k", "1"])
    assert info.value.code == 1
    assert "--dk" in capsys.readouterr().err


def test_runs_are_byte_identical(tmp_path):
    path = tmp_path / "both.txt"
    path.write_text(BASAL + "[szilard]\nepsilon = 0.1\ncycles = 500\nseed = 3\n")
    for name in ("a", "b"):
        assert main(["simulate", "--scenario", str(path), "--out", str(tmp_path / name)]) == 0
    for f in ("trajectory.csv", "ledger.csv", "report.txt"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "cogtherm.cli", "report", "--temperature", "300"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "landauer_J_per_bit=-2.87098e-21" in proc.stdout
