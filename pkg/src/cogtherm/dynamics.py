"""Mass-action learning dynamics over a structure of subsumers.

Each subsumer strength s_i evolves as

    ds_i/dt = sum_j D(shape_i, input_j) * s_i * I_j                (differentiation)
            + gamma * sum_{k != i} D(shape_i, shape_k) * s_i * s_k  (reconciliation)

The scalar rate of the whole structure is the sum of the components. With a
single subsumer the reconciliation term vanishes and the solution is the
closed-form exponential returned by :func:`basal_solution`.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ComparabilityError, DivergenceError, DomainError
from .matching import Shape, matching_metric

DEFAULT_DT = 1e-3


@dataclass(frozen=True)
class Subsumer:
    shape: Shape
    strength: float

    def __post_init__(self):
        object.__setattr__(self, "shape", Shape.of(self.shape))
        if not math.isfinite(self.strength) or self.strength < 0:
            raise DomainError(f"subsumer strength must be finite and >= 0, got {self.strength!r}")


@dataclass(frozen=True)
class InputChannel:
    """External input of ``rate`` units of information per unit time.

    Without a window the channel is always on; with ``window=(start, end)``
    it is active for start <= t < end.
    """

    shape: Shape
    rate: float
    window: tuple[float, float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "shape", Shape.of(self.shape))
        if not math.isfinite(self.rate) or self.rate < 0:
            raise DomainError(f"input rate must be finite and >= 0, got {self.rate!r}")
        if self.window is not None:
            start, end = self.window
            if not start < end:
                raise DomainError(f"input window must satisfy start < end, got {self.window!r}")
            object.__setattr__(self, "window", (float(start), float(end)))

    def active(self, t: float) -> bool:
        if self.window is None:
            return True
        return self.window[0] <= t < self.window[1]


@dataclass(frozen=True)
class CognitiveStructure:
    subsumers: tuple[Subsumer, ...]
    gamma: float = 0.0

    def __post_init__(self):
        subs = tuple(self.subsumers)
        if not subs:
            raise DomainError("a cognitive structure needs at least one subsumer")
        lengths = {len(s.shape) for s in subs}
        if len(lengths) > 1:
            raise ComparabilityError(f"subsumer shapes have mixed lengths {sorted(lengths)}")
        if not math.isfinite(self.gamma) or self.gamma < 0:
            raise DomainError(f"reconciliation gain must be finite and >= 0, got {self.gamma!r}")
        object.__setattr__(self, "subsumers", subs)

    @property
    def length(self) -> int:
        return len(self.subsumers[0].shape)

    @property
    def strengths(self) -> np.ndarray:
        return np.array([s.strength for s in self.subsumers], dtype=float)

    @property
    def shapes(self) -> list[Shape]:
        return [s.shape for s in self.subsumers]


@dataclass
class Trajectory:
    times: np.ndarray
    strengths: np.ndarray  # (n_samples, n_subsumers)
    shapes: list[Shape] = field(default_factory=list)

    @property
    def final(self) -> np.ndarray:
        return self.strengths[-1]

    def total(self) -> np.ndarray:
        """Scalar structure S(t) as the component sum."""
        return self.strengths.sum(axis=1)

    def __len__(self) -> int:
        return len(self.times)


def _affinity_matrix(rows: Sequence[Shape], cols: Sequence[Shape]) -> np.ndarray:
    return np.array([[matching_metric(r, c) for c in cols] for r in rows], dtype=float).reshape(
        len(rows), len(cols)
    )


class _RateModel:
    """Precomputed affinities so each RK stage is a couple of matrix products."""

    def __init__(self, structure: CognitiveStructure, inputs: Sequence[InputChannel]):
        shapes = structure.shapes
        for inp in inputs:
            if len(inp.shape) != structure.length:
                raise ComparabilityError(
                    f"input shape {inp.shape} has length {len(inp.shape)}, "
                    f"subsumers have length {structure.length}"
                )
        self.inputs = list(inputs)
        self.input_affinity = _affinity_matrix(shapes, [i.shape for i in inputs])
        self.rates = np.array([i.rate for i in inputs], dtype=float)
        self.gamma = structure.gamma
        # D(s, s) = 0, so the diagonal drops out of the k != i sum by itself
        self.self_affinity = _affinity_matrix(shapes, shapes)
        self.always_on = all(i.window is None for i in inputs)

    def active_rates(self, t: float) -> np.ndarray:
        if self.always_on:
            return self.rates
        mask = np.array([i.active(t) for i in self.inputs], dtype=bool)
        return np.where(mask, self.rates, 0.0)

    def differentiation(self, s: np.ndarray, t: float) -> np.ndarray:
        if not self.inputs:
            return np.zeros_like(s)
        return s * (self.input_affinity @ self.active_rates(t))

    def reconciliation(self, s: np.ndarray) -> np.ndarray:
        if self.gamma == 0.0 or len(s) == 1:
            return np.zeros_like(s)
        return self.gamma * s * (self.self_affinity @ s)

    def __call__(self, t: float, s: np.ndarray) -> np.ndarray:
        return self.differentiation(s, t) + self.reconciliation(s)


def differentiation_rate(
    structure: CognitiveStructure, inputs: Sequence[InputChannel], t: float = 0.0
) -> np.ndarray:
    """Per-subsumer progressive-differentiation rate at time ``t``."""
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t!r}")
    return _RateModel(structure, inputs).differentiation(structure.strengths, t)


def reconciliation_rate(structure: CognitiveStructure) -> np.ndarray:
    """Per-subsumer integrative-reconciliation rate (pairwise mass action)."""
    return _RateModel(structure, []).reconciliation(structure.strengths)


def total_rate(structure: CognitiveStructure, inputs: Sequence[InputChannel], t: float = 0.0) -> float:
    """dS/dt of the whole structure, the sum of the per-subsumer rates."""
    model = _RateModel(structure, inputs)
    return float(model(t, structure.strengths).sum())


def _step_count(dt: float, t_end: float) -> int:
    n = t_end / dt
    # absorb representation error so e.g. 1.0 / 0.001 gives 1000 steps, not 1001
    return max(1, math.ceil(n - 1e-9 * max(1.0, n)))


def integrate(
    structure: CognitiveStructure,
    inputs: Sequence[InputChannel],
    dt: float = DEFAULT_DT,
    t_end: float = 1.0,
) -> Trajectory:
    """Classical fixed-step RK4 from t = 0 to exactly ``t_end``.

    The step is ``t_end / ceil(t_end / dt)``: equal to ``dt`` when ``dt``
    divides the horizon, otherwise the largest uniform step below ``dt`` that
    lands on ``t_end``.
    """
    if not (dt > 0 and math.isfinite(dt)):
        raise DomainError(f"dt must be positive and finite, got {dt!r}")
    if not (math.isfinite(t_end) and t_end >= dt):
        raise DomainError(f"t_end must be finite and >= dt, got t_end={t_end!r}, dt={dt!r}")

    f = _RateModel(structure, inputs)
    n = _step_count(dt, t_end)
    h = t_end / n
    times = np.arange(n + 1) * h
    times[-1] = t_end
    out = np.empty((n + 1, len(structure.subsumers)))
    s = structure.strengths
    out[0] = s
    with np.errstate(over="ignore", invalid="ignore"):
        _rk4_loop(f, times, h, s, out)
    return Trajectory(times, out, structure.shapes)


def _rk4_loop(f, times, h, s, out):
    for k in range(len(times) - 1):
        t = times[k]
        k1 = f(t, s)
        k2 = f(t + h / 2, s + h / 2 * k1)
        k3 = f(t + h / 2, s + h / 2 * k2)
        k4 = f(t + h, s + h * k3)
        s = s + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(s)):
            raise DivergenceError(float(times[k + 1]))
        out[k + 1] = s


def basal_solution(s0: float, D: float, I: float, t: float) -> float:
    """Closed-form single-subsumer strength s0 * exp(D * I * t)."""
    if not s0 > 0:
        raise DomainError(f"initial strength must be > 0 for the logarithmic integral, got {s0!r}")
    if not 0 <= D <= 1:
        raise DomainError(f"affinity must lie in [0, 1], got {D!r}")
    if I < 0 or t < 0:
        raise DomainError("rate and time must be >= 0")
    return s0 * math.exp(D * I * t)


def write_trajectory_csv(trajectory: Trajectory, path) -> None:
    header = ["t"] + [f"s_{shape}" for shape in trajectory.shapes]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for t, row in zip(trajectory.times, trajectory.strengths):
            w.writerow([f"{t:.12g}"] + [f"{v:.12g}" for v in row])
