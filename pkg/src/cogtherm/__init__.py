"""Mass-action learning dynamics, Landauer bounds and a Monte Carlo Szilard engine."""

from .cognition import (
    BOLTZMANN,
    MindState,
    ThermalContext,
    Transition,
    boltzmann_factor,
    capacity,
    capacity_lower_bound,
    energy_bound,
    landauer_bound,
    obliterate,
    ops_rate,
    retain,
)
from .dynamics import (
    CognitiveStructure,
    InputChannel,
    Subsumer,
    Trajectory,
    basal_solution,
    differentiation_rate,
    integrate,
    reconciliation_rate,
)
from .errors import (
    CogthermError,
    ComparabilityError,
    DivergenceError,
    DomainError,
    NoAffinityError,
    PhaseError,
    ScenarioError,
)
from .matching import Shape, complement, matching_metric
from .scenario import Scenario, format_scenario, parse_scenario
from .szilard import (
    CycleRecord,
    EngineConfig,
    Ledger,
    erase_memory,
    mutual_information,
    run_cycle,
    run_ensemble,
)

__version__ = "0.1.0"
