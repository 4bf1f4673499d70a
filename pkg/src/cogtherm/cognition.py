"""Knowledge-state transitions and their thermodynamic cost.

Information is measured in nats throughout; ``nats_to_bits`` gives the bit
view. Energies are in joules. A negative energy bound means heat released to
the environment, which is what a compressive (obliterating) transition gives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, NoAffinityError, PhaseError

BOLTZMANN = 1.380649e-23  # J/K, exact SI value
LN2 = math.log(2.0)
DEFAULT_TEMPERATURE = 300.0
DEFAULT_REGIME_THRESHOLD = 10.0

RETAINED = "retained"
OBLITERATED = "obliterated"


@dataclass(frozen=True)
class ThermalContext:
    T: float = DEFAULT_TEMPERATURE
    k_B: float = BOLTZMANN

    def __post_init__(self):
        if not (math.isfinite(self.T) and self.T > 0):
            raise DomainError(f"temperature must be a positive number of kelvin, got {self.T!r}")

    @property
    def kT(self) -> float:
        return self.k_B * self.T


@dataclass(frozen=True)
class MindState:
    K: float

    def __post_init__(self):
        if not (math.isfinite(self.K) and self.K > 0):
            raise DomainError(f"knowledge eigenvalue K must be > 0, got {self.K!r}")


@dataclass(frozen=True)
class Transition:
    before: MindState
    after: MindState
    delta_K: float
    dt: float
    phase: str
    info_units: float = 0.0

    def __post_init__(self):
        if self.phase not in (RETAINED, OBLITERATED):
            raise ValueError(f"unknown phase {self.phase!r}")
        if not self.dt > 0:
            raise DomainError(f"transition duration must be > 0, got {self.dt!r}")
        if self.delta_K != self.after.K - self.before.K:
            raise ValueError("delta_K must equal after.K - before.K")

    @property
    def relative_change(self) -> float:
        """ΔK/K of the transition; -1/2 for a two-to-one squeeze."""
        return self.delta_K / self.before.K


def retain(state: MindState, info_units: float = 1.0, dt: float = 1.0) -> Transition:
    """Anchor ``info_units`` of information to ``state`` without merging it.

    The product is still dissociable, so K is unchanged; the information is
    carried forward for :func:`obliterate`.
    """
    if not isinstance(state, MindState):
        state = MindState(state)
    if not (math.isfinite(info_units) and info_units > 0):
        raise DomainError(f"information amount must be > 0, got {info_units!r}")
    return Transition(state, state, 0.0, dt, RETAINED, info_units)


def obliterate(t: Transition, states_before: int = 2, states_after: int = 1) -> Transition:
    """Merge a retained product, compressing ``states_before`` into ``states_after``.

    The relative change is ``states_after / states_before - 1``.
    """
    if t.phase != RETAINED:
        raise PhaseError(f"only a retained transition can be obliterated, got phase {t.phase!r}")
    if states_before < 2 or states_after < 1:
        raise DomainError("need states_before >= 2 and states_after >= 1")
    if states_after >= states_before:
        raise DomainError(
            f"obliteration must compress: {states_before} -> {states_after} is not a squeeze"
        )
    before = t.before
    after = MindState(before.K * states_after / states_before)
    return Transition(before, after, after.K - before.K, t.dt, OBLITERATED, t.info_units)


def squeeze_ratio(states_before: int = 2, states_after: int = 1) -> float:
    if states_after >= states_before:
        raise DomainError(f"{states_before} -> {states_after} is not a squeeze")
    return states_after / states_before - 1.0


def _log_growth(K: float, delta_K: float) -> float:
    if not K > 0:
        raise DomainError(f"K must be > 0, got {K!r}")
    ratio = delta_K / K
    if not 1.0 + ratio > 0:
        raise DomainError(f"ln(1 + ΔK/K) undefined for ΔK/K = {ratio!r}")
    return math.log1p(ratio)


def capacity(K: float, delta_K: float, D: float, dt: float) -> float:
    """Information rate (nats per unit time) of a K -> K + ΔK transition at affinity D."""
    if D == 0:
        raise NoAffinityError("capacity is undefined at zero affinity (D = 0)")
    if not 0 < D <= 1:
        raise DomainError(f"affinity must lie in (0, 1], got {D!r}")
    if not dt > 0:
        raise DomainError(f"duration must be > 0, got {dt!r}")
    return _log_growth(K, delta_K) / (D * dt)


def capacity_lower_bound(K: float, delta_K: float, dt: float) -> float:
    if not dt > 0:
        raise DomainError(f"duration must be > 0, got {dt!r}")
    return _log_growth(K, delta_K) / dt


def energy_bound(K: float, delta_K: float, ctx: ThermalContext) -> float:
    """Energy per unit of information, k_B T ln(1 + ΔK/K), in joules."""
    return ctx.kT * _log_growth(K, delta_K)


def landauer_bound(ctx: ThermalContext) -> float:
    """Signed energy per bit erased, -k_B T ln 2 (heat to the environment)."""
    return ctx.kT * math.log1p(-0.5)


def landauer_bound_per_nat(ctx: ThermalContext) -> float:
    return -ctx.kT


class BoltzmannWeight(NamedTuple):
    factor: float
    regime: str


def boltzmann_factor(
    delta_E: float, ctx: ThermalContext, threshold: float = DEFAULT_REGIME_THRESHOLD
) -> BoltzmannWeight:
    """exp(-ΔE / k_B T) with a regime flag.

    Factors not well above one (<= ``threshold``) are flagged
    ``quantum-indicated``; the flag is informational only.
    """
    factor = math.exp(-delta_E / ctx.kT)
    regime = "quantum-indicated" if factor <= threshold else "classical"
    return BoltzmannWeight(factor, regime)


def ops_rate(power: float, ctx: ThermalContext) -> float:
    """Operations per second at the Landauer cost for a given power budget (W)."""
    if not power > 0:
        raise DomainError(f"power must be > 0, got {power!r}")
    return power / (ctx.kT * LN2)


def nats_to_bits(x: float) -> float:
    return x / LN2


def bits_to_nats(x: float) -> float:
    return x * LN2


def transition_from_strengths(s_before: float, s_after: float, dt: float) -> Transition:
    """Read a pair of subsumer strengths as a Brookes transition K -> K + ΔK.

    Identifies K with the strength s(t) of a single subsumer, so that
    ``capacity`` applied to a basal trajectory recovers its input rate.
    """
    before, after = MindState(float(s_before)), MindState(float(s_after))
    return Transition(before, after, after.K - before.K, dt, OBLITERATED)


def transition_from_trajectory(trajectory, start: int = 0, stop: int = -1, index: int = 0) -> Transition:
    times = trajectory.times
    return transition_from_strengths(
        trajectory.strengths[start, index],
        trajectory.strengths[stop, index],
        float(times[stop] - times[start]),
    )


def format_sig(x: float, digits: int = 6) -> str:
    """Compact scientific text: 6 significant digits, exponent without '+' or padding."""
    text = f"{x:.{digits}g}"
    if "e" in text:
        mant, exp = text.split("e")
        text = f"{mant}e{int(exp)}"
    return text


REPORT_POWERS = (20.0, 1.0)


def report_lines(ctx: ThermalContext) -> list[str]:
    """Key/value report of the Landauer chain at ``ctx.T``.

    ``ops_per_second`` is quoted at 20 W; the 1 W figure is listed separately.
    """
    squeeze = energy_bound(1.0, squeeze_ratio(2, 1), ctx)
    weight = boltzmann_factor(squeeze, ctx)
    return [
        f"temperature_K={format_sig(ctx.T)}",
        f"landauer_J_per_bit={format_sig(landauer_bound(ctx))}",
        f"landauer_J_per_nat={format_sig(landauer_bound_per_nat(ctx))}",
        f"boltzmann_factor={format_sig(weight.factor)}",
        f"boltzmann_regime={weight.regime}",
        f"ops_per_second={format_sig(ops_rate(20.0, ctx))}",
        f"ops_per_second_1W={format_sig(ops_rate(1.0, ctx))}",
    ]


def report(T: float = DEFAULT_TEMPERATURE) -> str:
    return "\n".join(report_lines(ThermalContext(T))) + "\n"
