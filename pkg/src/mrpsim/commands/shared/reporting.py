"""Rich tables and error reporting shared by the commands."""

from contextlib import contextmanager
from typing import Iterator, Mapping, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from mrpsim.common.exceptions import NumericalError, SimulationError
from mrpsim.harness.metrics import Comparison
from mrpsim.harness.records import Metrics, MonitorReport

console = Console()
err_console = Console(stderr=True)

EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_INVARIANT = 3


def format_value(value: Optional[float]) -> str:
    """Format a metric for display; missing values render as ``-``."""
    if value is None:
        return "-"
    return f"{value:.6g}"


def format_flag(flag: bool) -> str:
    return "[red]yes[/red]" if flag else "[green]no[/green]"


def label(text: str) -> str:
    """Row or column label shown verbatim; unit brackets are not markup."""
    return escape(text)


@contextmanager
def exit_on_error() -> Iterator[None]:
    """Print failures to stderr and exit with the matching code.

    Validation and IO problems exit with 1, numerical blow-ups with 2.
    """
    try:
        yield
    except NumericalError as e:
        err_console.print(f"[bold red]Numerical failure:[/bold red] {escape(str(e))}")
        raise typer.Exit(EXIT_NUMERICAL)
    except ValidationError as e:
        err = e.errors()[0]
        loc = ".".join(str(p) for p in err["loc"])
        err_console.print(f"[bold red]Error:[/bold red] {escape(loc)}: {escape(err['msg'])}")
        raise typer.Exit(EXIT_VALIDATION)
    except (SimulationError, OSError) as e:
        err_console.print(f"[bold red]Error:[/bold red] {escape(str(e))}")
        raise typer.Exit(EXIT_VALIDATION)


def metrics_table(metrics: Metrics) -> Table:
    table = Table(
        title=label(f"Scenario {metrics.scenario} / {metrics.controller}"),
        show_header=True,
        header_style="bold cyan",
    )
    table.add_column("Metric", style="cyan")
    table.add_column("Value", justify="right")

    rows = [
        ("theta0 [rad]", metrics.theta0),
        ("theta_final [rad]", metrics.theta_final),
        ("theta_target [rad]", metrics.theta_target),
        ("convergence_time [s]", metrics.convergence_time),
        ("settling_time [s]", metrics.settling_time),
        ("total_rotation [rad]", metrics.total_rotation),
        ("effort [N m s]", metrics.effort),
        ("max_torque [N m]", metrics.max_torque),
    ]
    for name, value in rows:
        table.add_row(label(name), format_value(value))
    table.add_row("unwound", format_flag(metrics.unwound))
    return table


def comparison_table(comparison: Comparison) -> Table:
    a, b = comparison.controller_a, comparison.controller_b
    table = Table(
        title=label(f"Scenario {comparison.scenario}: {a} vs {b}"),
        show_header=True,
        header_style="bold cyan",
    )
    table.add_column("Metric", style="cyan")
    table.add_column(label(a), justify="right")
    table.add_column(label(b), justify="right")
    table.add_column("Delta", justify="right")
    table.add_column("Ratio", justify="right")

    for row in comparison.rows:
        table.add_row(
            label(row.metric),
            format_value(row.a),
            format_value(row.b),
            format_value(row.delta),
            format_value(row.ratio),
        )
    table.add_row("unwound", format_flag(comparison.unwound_a), format_flag(comparison.unwound_b))
    return table


def monitor_table(reports: Mapping[str, MonitorReport]) -> Table:
    table = Table(title="Invariant monitors", show_header=True, header_style="bold cyan")
    table.add_column("Check", style="cyan")
    for name in reports:
        table.add_column(label(name), justify="right")

    def add(name: str, values: list[str]) -> None:
        table.add_row(label(name), *values)

    rows = reports.values()
    add("angle-rate residual [rad/s]", [format_value(r.lemma1_max_residual) for r in rows])
    add("V2 growth while reaching", [str(r.v2_violations) for r in rows])
    add("V1 growth while sliding", [str(r.v1_violations_after_reaching) for r in rows])
    add("theta direction reversals", [str(r.theta_monotonicity_violations) for r in rows])
    add("reaching_time [s]", [format_value(r.reaching_time) for r in rows])
    add("|v(0) + alpha h(0)|", [format_value(r.initial_v_residual) for r in rows])
    add("|V2(0) - v(0)^2/2|", [format_value(r.initial_v2_residual) for r in rows])
    return table
