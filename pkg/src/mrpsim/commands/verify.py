"""Command for running the invariant monitors on the built-in maneuvers."""

from typing import Optional

import typer

from mrpsim.commands.shared.config import RunConfig
from mrpsim.commands.shared.reporting import (
    EXIT_INVARIANT,
    console,
    err_console,
    exit_on_error,
    monitor_table,
)
from mrpsim.controllers.base import ControllerKind
from mrpsim.harness.monitors import monitor_invariants
from mrpsim.harness.records import MonitorReport
from mrpsim.harness.scenario import BUILTIN_SCENARIOS
from mrpsim.harness.simulation import run_simulation
from mrpsim.logger import default_logger


def verify(
    dt: Optional[float] = typer.Option(None, "--dt", help="Integration step [s]"),
    duration: Optional[float] = typer.Option(None, "--duration", help="Run length [s]"),
) -> None:
    """Check the unwinding-free controller's closed-loop guarantees.

    Runs every built-in scenario and exits with code 3 when any monitor
    reports a violation or the switching function never settles.

    Example:
        mrpsim verify
    """
    logger = default_logger()
    overrides = {"dt": dt, "duration": duration}
    reports: dict[str, MonitorReport] = {}

    with exit_on_error():
        for name in BUILTIN_SCENARIOS:
            sim = RunConfig(
                scenario=name,
                overrides={key: value for key, value in overrides.items() if value is not None},
            ).simulation_config()
            records = run_simulation(
                sim.scenario, ControllerKind.UFSMC, sim.ufsmc, sim.smc, logger=logger
            )
            reports[f"Scenario {name}"] = monitor_invariants(records, sim.ufsmc)

    console.print(monitor_table(reports))

    failed = [name for name, r in reports.items() if r.violations > 0 or not r.reached]
    if failed:
        err_console.print(f"[bold red]Invariant violations:[/bold red] {', '.join(failed)}")
        raise typer.Exit(EXIT_INVARIANT)
    console.print("[green]All invariant monitors passed.[/green]")
