"""Command for simulating one maneuver and writing its telemetry."""

from pathlib import Path
from typing import Optional

import typer

from mrpsim.commands.shared.config import ControllerChoice, RunConfig
from mrpsim.commands.shared.output import emit_csv, emit_plot_data
from mrpsim.commands.shared.reporting import console, exit_on_error, metrics_table
from mrpsim.config import get_config
from mrpsim.controllers.base import ControllerKind
from mrpsim.harness.metrics import compute_metrics
from mrpsim.harness.scenario import theta_target_for
from mrpsim.harness.simulation import run_simulation
from mrpsim.logger import default_logger


def simulate(
    scenario: str = typer.Option(
        "A",
        "--scenario",
        "-s",
        help="Built-in scenario (A or B) or path to a JSON scenario document",
    ),
    controller: ControllerChoice = typer.Option(
        ControllerChoice.UFSMC,
        "--controller",
        "-c",
        help="Controller to run",
        case_sensitive=False,
    ),
    config_path: Optional[Path] = typer.Option(
        None, "--config", help="JSON document layered over the built-in scenario"
    ),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="Output directory (default: MRP_SIM_OUT)"
    ),
    dt: Optional[float] = typer.Option(None, "--dt", help="Integration step [s]"),
    duration: Optional[float] = typer.Option(None, "--duration", help="Run length [s]"),
    alpha: Optional[float] = typer.Option(None, "--alpha", help="Sliding gain"),
    gamma1: Optional[float] = typer.Option(None, "--gamma1", help="Switching gain [N m]"),
    eps1: Optional[float] = typer.Option(None, "--eps1", help="Boundary-layer half-width"),
    eps2: Optional[float] = typer.Option(None, "--eps2", help="MRP guard parameter"),
    k: Optional[float] = typer.Option(None, "--k", help="Baseline reaching gain"),
    lam: Optional[float] = typer.Option(None, "--lam", help="Baseline surface slope"),
    eps: Optional[float] = typer.Option(None, "--eps", help="Baseline boundary layer"),
    sign_control: bool = typer.Option(
        False, "--sign-control", help="Use the unsmoothed switching term"
    ),
) -> None:
    """Simulate a maneuver, write CSV and plot data, and print its metrics.

    Example:
        mrpsim simulate --scenario B --controller both --out results
    """
    settings = get_config()
    logger = default_logger()
    overrides = {
        "dt": dt,
        "duration": duration,
        "alpha": alpha,
        "gamma1": gamma1,
        "eps1": eps1,
        "eps2": eps2,
        "k": k,
        "lam": lam,
        "eps": eps,
    }

    with exit_on_error():
        run = RunConfig(
            scenario=scenario,
            config_path=config_path,
            controller=controller,
            out_dir=out or settings.out_dir,
            overrides={key: value for key, value in overrides.items() if value is not None},
            sign_control=sign_control,
        )
        sim = run.simulation_config()

        if run.controller == ControllerChoice.BOTH:
            kinds = list(ControllerKind)
        else:
            kinds = [ControllerKind(run.controller.value)]

        for kind in kinds:
            records = run_simulation(
                sim.scenario,
                kind,
                sim.ufsmc,
                sim.smc,
                sign_control=sim.sign_control,
                logger=logger,
            )
            metrics = compute_metrics(
                records,
                theta_target_for(kind, records[0].theta),
                scenario=sim.scenario.name,
                controller=kind.value,
            )

            stem = f"{sim.scenario.name}_{kind.value}"
            csv_path = emit_csv(records, run.out_dir / f"{stem}.csv", settings.csv_digits)
            emit_plot_data(records, run.out_dir / stem, settings.csv_digits)
            logger.info(f"Wrote {csv_path} and plot data in {run.out_dir / stem}")

            console.print(metrics_table(metrics))
