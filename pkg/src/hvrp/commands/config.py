"""Configuration management commands."""

from typing import Annotated

import typer
from rich.console import Console
from rich.table import Table

from hvrp.commands.common import ConfigOption, VerboseOption, load_config
from hvrp.config.manager import ConfigManager
from hvrp.config.schema import Config
from hvrp.core.decorators import handle_errors
from hvrp.utils.console import emphasis, info, new_line, success, text_dimmed

app = typer.Typer(
    name="config",
    help="Manage hvrp configuration",
    no_args_is_help=True,
    context_settings={"help_option_names": ["--help", "-h"]},
)

console = Console()


@app.command("init")
@handle_errors
def init(
    path: Annotated[
        str,
        typer.Option(
            "--path",
            help="Where to write the config (defaults to ~/.hvrp/config.toml)",
        ),
    ] = "",
    force: Annotated[
        bool,
        typer.Option("--force", "-f", help="Overwrite an existing file"),
    ] = False,
    verbose: VerboseOption = False,
) -> None:
    """Write a config file holding every default setting."""
    target = ConfigManager.DEFAULT_CONFIG_FILE if not path else path
    if (
        ConfigManager.exists(target)
        and not force
        and not typer.confirm(f"{target} already exists. Overwrite?", default=False)
    ):
        info("Configuration unchanged")
        raise typer.Exit()
    written = ConfigManager.save(Config(), target)
    success(f"Configuration saved to {written}")
    text_dimmed("Edit it and pass it with --config, or keep it at the default path")


@app.command("show")
@handle_errors
def show(
    config_path: ConfigOption = "",
    all_sections: Annotated[
        bool,
        typer.Option("--all", help="Show sections left at their defaults"),
    ] = False,
    verbose: VerboseOption = False,
) -> None:
    """Show the effective configuration.

    Only sections that differ from the defaults are shown unless --all is set.
    """
    config = load_config(config_path, verbose)
    defaults = Config()
    shown = 0
    for section in Config.model_fields:
        value = getattr(config, section)
        if not all_sections and value == getattr(defaults, section):
            continue
        shown += 1
        emphasis(f"{section}:")
        if isinstance(value, list):
            _section_table([item.model_dump() for item in value])
        else:
            _section_table([value.model_dump()], transpose=True)
        new_line()
    if not shown:
        info("All settings are at their defaults; use --all to list them")


def _section_table(rows: list[dict], transpose: bool = False) -> None:
    table = Table(show_header=True, header_style="bold cyan")
    if transpose:
        table.add_column("Setting")
        table.add_column("Value")
        for key, value in rows[0].items():
            table.add_row(key, str(value))
    else:
        for column in rows[0] if rows else []:
            table.add_column(column)
        for row in rows:
            table.add_row(*[str(v) for v in row.values()])
    console.print(table)
