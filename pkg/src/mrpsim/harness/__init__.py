"""Scenarios, closed-loop runs, metrics and invariant monitors."""

from mrpsim.harness.metrics import Comparison, ComparisonRow, compare_runs, compute_metrics
from mrpsim.harness.monitors import monitor_invariants
from mrpsim.harness.records import Metrics, MonitorReport, SimRecord
from mrpsim.harness.scenario import (
    ControllerKind,
    Scenario,
    SimulationConfig,
    builtin_scenario,
    theta_target_for,
)
from mrpsim.harness.simulation import run_pair, run_simulation, sliding_theta_rate, theta_rate

__all__ = [
    "Comparison",
    "ComparisonRow",
    "ControllerKind",
    "Metrics",
    "MonitorReport",
    "Scenario",
    "SimRecord",
    "SimulationConfig",
    "builtin_scenario",
    "compare_runs",
    "compute_metrics",
    "monitor_invariants",
    "run_pair",
    "run_simulation",
    "sliding_theta_rate",
    "theta_rate",
    "theta_target_for",
]
