"""
mrpsim command line interface.
"""

from typing import Optional, Sequence

import typer

from .compare import compare
from .simulate import simulate
from .verify import verify

app = typer.Typer(no_args_is_help=True)

app.command()(simulate)
app.command()(compare)
app.command()(verify)

# typer only re-exports BadParameter; its bases are the usage and command-line
# error types of the click implementation typer runs on.
UsageError: type[Exception] = typer.BadParameter.__base__
CliError: type[Exception] = UsageError.__base__


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting the process.

    Usage errors (unknown commands or options, unparsable values) exit with 1
    like every other validation failure.
    """
    try:
        result = app(args=list(argv) if argv is not None else None, standalone_mode=False)
    except typer.Exit as e:
        return e.exit_code
    except typer.Abort:
        return 1
    except CliError as e:
        e.show()
        return 1
    return result if isinstance(result, int) else 0
