#!/usr/bin/env python3
import os
from importlib.metadata import version


def _typecheck_enabled() -> bool:
    """Runtime type checks on dirty dev builds, or when GINIDYN_TYPECHECK is set."""
    return "dirty" in version("ginidyn") or bool(os.environ.get("GINIDYN_TYPECHECK"))


# flake8: noqa: E402
# pylint: disable=wrong-import-position
TYPE_CHECKING = _typecheck_enabled()
if TYPE_CHECKING:
    from typeguard import install_import_hook

    install_import_hook("ginidyn")

from ginidyn import io
from ginidyn import NAME_LOG_ENVVAR
from ginidyn.cli import cli_equilibrium
from ginidyn.cli import cli_metrics
from ginidyn.cli import cli_simulate
from ginidyn.cli import cli_verify

try:
    import rich_click as click
    from rich import box

    click.rich_click.SHOW_ARGUMENTS = True
    click.rich_click.STYLE_COMMANDS_PANEL_BOX = box.SIMPLE  # type: ignore
    click.rich_click.STYLE_OPTIONS_PANEL_BOX = box.SIMPLE  # type: ignore
except ImportError:
    import click  # type: ignore

CONTEXT_SETTINGS = {
    "help_option_names": ["-h", "--help"],
    "auto_envvar_prefix": "GINIDYN",
}


def resolve_verbosity(verbose: int, debug: bool, log_level: str | None) -> io.Verbosity:
    """
    Combine the verbosity sources, the most talkative wins.

    :param verbose: ``-v`` count
    :param debug: ``-d`` flag
    :param log_level: ``--log`` / GINIDYN_LOG label, already validated by click
    :return: the effective level
    """
    if debug:
        return io.Verbosity.DEBUG
    level = io.Verbosity.clamp(verbose)
    named = io.Verbosity.fromstr(log_level) if log_level is not None else None
    return max(level, named) if named is not None else level


@click.group(context_settings=CONTEXT_SETTINGS, name="ginidyn")
@click.option("-v", "--verbose", count=True, default=0, show_envvar=True, help="Increase verbosity (cumulative)")
@click.option("-d", "--debug", is_flag=True, default=False, show_envvar=True, help="Debug mode, keeps the debug log")
@click.option(
    "-l",
    "--log",
    "log_level",
    envvar=NAME_LOG_ENVVAR,
    show_envvar=True,
    default=None,
    type=click.Choice([str(v) for v in io.Verbosity.all_levels()], case_sensitive=False),
    help="Verbosity by name (the highest of -v and --log wins)",
)
@click.option(
    "-c",
    "--color/--no-color",
    "color",
    default=True,
    show_envvar=True,
    help="Colorize the output",
)
@click.version_option(
    version("ginidyn"),
    "-V",
    "--version",
    message="Gini index dynamics toolkit (ginidyn) -- version %(version)s",
)
@click.pass_context
def cli(ctx: click.Context, verbose: int, debug: bool, log_level: str | None, color: bool) -> None:
    """Simulate mean-field wealth/opinion dynamics and verify Gini index inequalities."""
    level = resolve_verbosity(verbose, debug, log_level)
    ctx.ensure_object(dict)
    ctx.obj.update(verbose=int(level), color=color)
    ctx.color = color

    io.init(color=color, verbose=int(level))
    io.console.debug(f"ginidyn {version('ginidyn')}, verbosity {level}")
    if TYPE_CHECKING:
        io.console.debug("Runtime type checking enabled.")


for _command in (
    cli_simulate.cli_simulate,
    cli_metrics.cli_metrics,
    cli_equilibrium.cli_equilibrium,
    cli_verify.cli_verify,
):
    cli.add_command(_command)
