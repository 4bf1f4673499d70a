import math

import pytest

from cogtherm.cognition import ThermalContext, energy_bound, landauer_bound
from cogtherm.errors import DomainError
from cogtherm.szilard import (
    EngineConfig,
    erase_memory,
    mutual_information,
    run_cycle,
    run_ensemble,
    summary_lines,
    write_ledger_csv,
)


def mi_brute_force(eps):
    """Mutual information from the 2x2 joint (true side, reading) table."""
    joint = {}
    for x in "LR":
        for y in "LR":
            joint[x, y] = 0.5 * ((1 - eps) if x == y else eps)
    px = {x: sum(joint[x, y] for y in "LR") for x in "LR"}
    py = {y: sum(joint[x, y] for x in "LR") for y in "LR"}
    total = 0.0
    for (x, y), p in joint.items():
        if p > 0:
            total += p * math.log(p / (px[x] * py[y]))
    return total


@pytest.mark.parametrize("eps", [0.0, 0.01, 0.05, 0.1, 0.25, 0.4])
def test_mutual_information_matches_brute_force(eps):
    assert mutual_information(eps) == pytest.approx(mi_brute_force(eps), abs=1e-15)


def test_mutual_information_values():
    assert mutual_information(0.0) == pytest.approx(math.log(2), abs=1e-15)
    assert mutual_information(0.1) == pytest.approx(0.368064, abs=1e-6)
    assert mutual_information(0.5 - 1e-9) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(DomainError):
        mutual_information(0.5)


def test_config_validation():
    with pytest.raises(DomainError):
        EngineConfig(epsilon=0.5)
    with pytest.raises(DomainError):
        EngineConfig(cycles=0)
    with pytest.raises(DomainError):
        EngineConfig(seed=-1)
    with pytest.raises(DomainError):
        EngineConfig(seed=2**64)


def test_reversible_cycle():
    cfg = EngineConfig(ThermalContext(300.0), 0.0, 10, 7)
    kT = cfg.ctx.kT
    for i in range(10):
        rec = run_cycle(cfg, i)
        assert rec.correct
        assert rec.work_extracted / kT == pytest.approx(math.log(2), abs=1e-15)
        assert rec.pointwise_info == pytest.approx(math.log(2), abs=1e-15)
        assert rec.erasure_heat == pytest.approx(kT * math.log(2), rel=1e-15)
        assert rec.work_extracted - rec.erasure_heat == 0.0


def test_noisy_cycle_outcomes():
    cfg = EngineConfig(ThermalContext(300.0), 0.1, 2000, 3)
    kT = cfg.ctx.kT
    seen = set()
    for i in range(2000):
        rec = run_cycle(cfg, i)
        w = rec.work_extracted / kT
        if rec.correct:
            assert w == pytest.approx(0.587787, abs=1e-6)
            assert rec.pointwise_info == pytest.approx(math.log(1.8), abs=1e-15)
        else:
            assert w == pytest.approx(-1.609438, abs=1e-6)
            assert rec.pointwise_info == pytest.approx(math.log(0.2), abs=1e-15)
        assert rec.erasure_heat >= kT * math.log(2) * (1 - 1e-15)
        seen.add((rec.true_side, rec.measured_side))
    assert seen == {("L", "L"), ("R", "R"), ("L", "R"), ("R", "L")}


def test_cycle_is_counter_based():
    cfg = EngineConfig(epsilon=0.25, cycles=100, seed=11)
    assert run_cycle(cfg, 57) == run_cycle(cfg, 57)
    ledger = run_ensemble(cfg)
    assert ledger.records[57] == run_cycle(cfg, 57)
    other = run_ensemble(EngineConfig(epsilon=0.25, cycles=100, seed=12))
    assert [r.true_side for r in ledger.records] != [r.true_side for r in other.records]


def test_sides_roughly_uniform():
    ledger = run_ensemble(EngineConfig(epsilon=0.0, cycles=4000, seed=1))
    left = sum(r.true_side == "L" for r in ledger.records)
    # binomial sd = sqrt(4000)/2 ~ 31.6
    assert abs(left - 2000) < 4 * 31.6


@pytest.mark.parametrize("eps", [0.05, 0.25])
def test_ensemble_small(eps):
    ledger = run_ensemble(EngineConfig(epsilon=eps, cycles=20_000, seed=5))
    assert ledger.cycles == 20_000
    mi = mutual_information(eps)
    assert abs(ledger.mean_work_kT - mi) <= 3 * ledger.standard_error_kT
    assert abs(ledger.mean_info - mi) <= 3 * ledger.standard_error_kT
    assert ledger.net_mean < 0
    assert ledger.fluctuation_estimator == pytest.approx(1.0, abs=1e-12)


def test_parallel_equals_serial():
    cfg = EngineConfig(epsilon=0.1, cycles=3001, seed=99)
    assert run_ensemble(cfg, n_jobs=1) == run_ensemble(cfg, n_jobs=3)


@pytest.mark.parametrize("T", [1.0, 77.0, 300.0, 310.0, 1000.0])
def test_erasure_equals_landauer(T):
    c = ThermalContext(T)
    assert erase_memory(c) == -landauer_bound(c)
    assert erase_memory(c) == -energy_bound(1.0, -0.5, c)


@pytest.mark.parametrize("T, quoted", [(300.0, 2.8710e-21), (310.0, 2.9667e-21)])
def test_erasure_values(T, quoted):
    assert erase_memory(ThermalContext(T)) == pytest.approx(quoted, rel=1e-4)


def test_ledger_csv(tmp_path):
    ledger = run_ensemble(EngineConfig(epsilon=0.1, cycles=50, seed=2))
    path = tmp_path / "ledger.csv"
    write_ledger_csv(ledger, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "cycle,true_side,measured_side,w_ext_kT,i_pt_nat,erase_heat_kT"
    assert len(lines) == 51
    for line, rec in zip(lines[1:], ledger.records):
        cyc, ts, ms, w, i, q = line.split(",")
        assert int(cyc) == rec.cycle and ts == rec.true_side and ms == rec.measured_side
        assert ts in "LR" and ms in "LR"
        assert float(w) == pytest.approx(rec.pointwise_info, rel=1e-11)
        assert float(q) == pytest.approx(math.log(2), rel=1e-11)


def test_summary_lines_reversible():
    ledger = run_ensemble(EngineConfig(epsilon=0.0, cycles=1000, seed=42))
    assert summary_lines(ledger) == [
        "mean_w_kT=0.693147",
        "mutual_info_nat=0.693147",
        "fluct_estimator=1.000000",
        "net_mean_kT=0.000000",
    ]
