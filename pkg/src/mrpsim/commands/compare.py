"""Command for comparing both controllers on one maneuver."""

from pathlib import Path
from typing import Optional

import typer

from mrpsim.commands.shared.config import RunConfig
from mrpsim.commands.shared.reporting import comparison_table, console, exit_on_error
from mrpsim.config import get_config
from mrpsim.controllers.base import ControllerKind
from mrpsim.harness.metrics import compare_runs, compute_metrics
from mrpsim.harness.scenario import theta_target_for
from mrpsim.harness.simulation import run_pair
from mrpsim.logger import default_logger


def compare(
    scenario: str = typer.Option(
        "A",
        "--scenario",
        "-s",
        help="Built-in scenario (A or B) or path to a JSON scenario document",
    ),
    config_path: Optional[Path] = typer.Option(
        None, "--config", help="JSON document layered over the built-in scenario"
    ),
    dt: Optional[float] = typer.Option(None, "--dt", help="Integration step [s]"),
    duration: Optional[float] = typer.Option(None, "--duration", help="Run length [s]"),
    parallel: Optional[bool] = typer.Option(
        None,
        "--parallel/--sequential",
        help="Run the two controllers concurrently (default: MRP_SIM_PARALLEL)",
    ),
) -> None:
    """Run the unwinding-free and baseline controllers and print a comparison.

    Example:
        mrpsim compare --scenario B
    """
    settings = get_config()
    logger = default_logger()
    overrides = {"dt": dt, "duration": duration}

    with exit_on_error():
        run = RunConfig(
            scenario=scenario,
            config_path=config_path,
            overrides={key: value for key, value in overrides.items() if value is not None},
        )
        sim = run.simulation_config()
        use_threads = settings.parallel_compare if parallel is None else parallel
        runs = run_pair(sim, parallel=use_threads, logger=logger)

        metrics = {
            kind: compute_metrics(
                records,
                theta_target_for(kind, records[0].theta),
                scenario=sim.scenario.name,
                controller=kind.value,
            )
            for kind, records in runs.items()
        }
        comparison = compare_runs(metrics[ControllerKind.UFSMC], metrics[ControllerKind.SMC])

    console.print(comparison_table(comparison))
