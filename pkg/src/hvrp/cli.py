"""Main CLI entry point using Typer."""

import logging
from typing import Annotated

import typer

from hvrp.utils.console import text
from hvrp.utils.logging import configure_logging
from hvrp.version import __version__

app = typer.Typer(
    name="hvrp",
    help="hvrp - Multi-depot routing with learned subproblem costs",
    add_completion=True,
    rich_markup_mode="rich",
    no_args_is_help=True,
    context_settings={
        "help_option_names": ["--help", "-h"],
    },
)


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        text(f"hvrp version {__version__}")
        raise typer.Exit()


# Runs before every command, `hvrp config init` included, so no config is
# loaded here; commands reconfigure logging from their own config.
@app.callback()
def main(
    verbose: Annotated[bool, typer.Option("--verbose", "-v")] = False,
    _: Annotated[
        bool,
        typer.Option(
            "--version",
            callback=version_callback,
            is_eager=True,
            help="Show version and exit",
        ),
    ] = False,
) -> None:
    """hvrp - Multi-depot routing with learned subproblem costs.

    Use 'hvrp COMMAND --help' for more information on a command.
    """
    configure_logging(level=logging.DEBUG if verbose else logging.WARNING)


def register_commands() -> None:
    """Register all commands and command groups."""
    from hvrp.commands.bench import bench
    from hvrp.commands.config import app as config_app
    from hvrp.commands.datagen import datagen
    from hvrp.commands.estimate import estimate
    from hvrp.commands.instances import generate
    from hvrp.commands.predictor import evaluate_command, train_command
    from hvrp.commands.routing import cvrp_solve
    from hvrp.commands.solve import check, solve

    app.add_typer(config_app, name="config", help="Manage configuration")
    app.command("generate")(generate)
    app.command("cvrp-solve")(cvrp_solve)
    app.command("estimate")(estimate)
    app.command("datagen")(datagen)
    app.command("train")(train_command)
    app.command("evaluate")(evaluate_command)
    app.command("solve")(solve)
    app.command("check")(check)
    app.command("bench")(bench)


register_commands()


if __name__ == "__main__":
    app()
