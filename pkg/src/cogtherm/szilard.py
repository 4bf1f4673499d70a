"""Monte Carlo one-molecule Szilárd engine with a noisy demon.

Each cycle: the molecule sits left or right with equal probability; the demon
reads the side with error probability epsilon; the partition is moved
quasi-statically to the posterior volume fractions (1 - eps, eps) on the
measured side; the demon's one-bit memory is then reset at the Landauer cost.

Under this protocol the work extracted equals k_B T times the pointwise
mutual information of the measurement outcome, so each cycle contributes
exactly one to the fluctuation estimator exp(W / kT - i).
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cognition import LN2, ThermalContext, landauer_bound
from .errors import DomainError


@dataclass(frozen=True)
class EngineConfig:
    ctx: ThermalContext = field(default_factory=ThermalContext)
    epsilon: float = 0.0
    cycles: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if not (0 <= self.epsilon < 0.5):
            raise DomainError(f"epsilon must lie in [0, 1/2), got {self.epsilon!r}")
        if int(self.cycles) != self.cycles or self.cycles < 1:
            raise DomainError(f"cycles must be a positive integer, got {self.cycles!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")


@dataclass(frozen=True)
class CycleRecord:
    cycle: int
    true_side: str
    measured_side: str
    work_extracted: float  # J, positive = extracted by the demon
    pointwise_info: float  # nats
    erasure_heat: float  # J, positive = dissipated to the bath

    @property
    def correct(self) -> bool:
        return self.true_side == self.measured_side


@dataclass
class Ledger:
    config: EngineConfig
    records: list[CycleRecord]
    mean_work: float
    mean_info: float
    mean_erasure_heat: float
    fluctuation_estimator: float
    net_mean: float
    work_std_kT: float

    @property
    def cycles(self) -> int:
        return len(self.records)

    @property
    def mean_work_kT(self) -> float:
        return self.mean_work / self.config.ctx.kT

    @property
    def net_mean_kT(self) -> float:
        return self.net_mean / self.config.ctx.kT

    @property
    def standard_error_kT(self) -> float:
        """σ/√N of the extracted work, in units of k_B T."""
        return self.work_std_kT / math.sqrt(self.cycles)


def mutual_information(epsilon: float) -> float:
    """ln 2 - H(eps) in nats for a binary symmetric measurement."""
    if not 0 <= epsilon < 0.5:
        raise DomainError(f"epsilon must lie in [0, 1/2), got {epsilon!r}")
    h = -(1 - epsilon) * math.log1p(-epsilon)
    if epsilon > 0:
        h -= epsilon * math.log(epsilon)
    return LN2 - h


def erase_memory(ctx: ThermalContext) -> float:
    """Heat released resetting one bit at the Landauer cost, k_B T ln 2."""
    return -landauer_bound(ctx)


def _cycle_uniforms(seed: int, cycle_index: int) -> np.ndarray:
    # counter-based: the stream depends only on (seed, cycle_index)
    bitgen = np.random.Philox(key=seed, counter=[0, cycle_index, 0, 0])
    return np.random.Generator(bitgen).random(2)


def run_cycle(config: EngineConfig, cycle_index: int) -> CycleRecord:
    eps = config.epsilon
    kT = config.ctx.kT
    u_side, u_flip = _cycle_uniforms(config.seed, cycle_index)
    true_side = "L" if u_side < 0.5 else "R"
    flipped = u_flip < eps
    measured = ("R" if true_side == "L" else "L") if flipped else true_side
    # posterior volume fraction of the true side after feedback, times 2
    p = eps if flipped else 1.0 - eps
    info = math.log(2.0 * p)
    return CycleRecord(
        cycle=cycle_index,
        true_side=true_side,
        measured_side=measured,
        work_extracted=kT * info,
        pointwise_info=info,
        erasure_heat=erase_memory(config.ctx),
    )


def _run_range(config: EngineConfig, start: int, stop: int) -> list[CycleRecord]:
    return [run_cycle(config, i) for i in range(start, stop)]


def _chunks(n: int, parts: int) -> list[tuple[int, int]]:
    bounds = np.linspace(0, n, parts + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _mean(values) -> float:
    # exact summation, so the result is independent of any reduction order
    values = list(values)
    return math.fsum(values) / len(values)


def summarize(config: EngineConfig, records: list[CycleRecord]) -> Ledger:
    kT = config.ctx.kT
    w_kT = [r.work_extracted / kT for r in records]
    mean_w_kT = _mean(w_kT)
    var = _mean((w - mean_w_kT) ** 2 for w in w_kT) if len(records) > 1 else 0.0
    n = len(records)
    std = math.sqrt(var * n / (n - 1)) if n > 1 else 0.0
    return Ledger(
        config=config,
        records=records,
        mean_work=_mean(r.work_extracted for r in records),
        mean_info=_mean(r.pointwise_info for r in records),
        mean_erasure_heat=_mean(r.erasure_heat for r in records),
        fluctuation_estimator=_mean(
            math.exp(r.work_extracted / kT - r.pointwise_info) for r in records
        ),
        net_mean=_mean(r.work_extracted - r.erasure_heat for r in records),
        work_std_kT=std,
    )


def run_ensemble(config: EngineConfig, n_jobs: int = 1) -> Ledger:
    """Run ``config.cycles`` cycles and aggregate them.

    With ``n_jobs > 1`` cycles are split across worker processes; the ledger
    is bit-identical to the serial one.
    """
    if n_jobs <= 1 or config.cycles < 2:
        records = _run_range(config, 0, config.cycles)
    else:
        spans = _chunks(config.cycles, n_jobs)
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            futures = [pool.submit(_run_range, config, a, b) for a, b in spans]
            records = [r for fut in futures for r in fut.result()]
    return summarize(config, records)


LEDGER_HEADER = ["cycle", "true_side", "measured_side", "w_ext_kT", "i_pt_nat", "erase_heat_kT"]


def write_ledger_csv(ledger: Ledger, path) -> None:
    kT = ledger.config.ctx.kT
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(LEDGER_HEADER)
        for r in ledger.records:
            w.writerow(
                [
                    r.cycle,
                    r.true_side,
                    r.measured_side,
                    f"{r.work_extracted / kT:.12g}",
                    f"{r.pointwise_info:.12g}",
                    f"{r.erasure_heat / kT:.12g}",
                ]
            )


def summary_lines(ledger: Ledger) -> list[str]:
    return [
        f"mean_w_kT={ledger.mean_work_kT:.6f}",
        f"mutual_info_nat={mutual_information(ledger.config.epsilon):.6f}",
        f"fluct_estimator={ledger.fluctuation_estimator:.6f}",
        f"net_mean_kT={ledger.net_mean_kT:.6f}",
    ]
