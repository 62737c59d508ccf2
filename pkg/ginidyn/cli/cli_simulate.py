from ginidyn import io
from ginidyn.backend import report as gdReport
from ginidyn.backend.configfile import SimulateConfigFile
from ginidyn.dynamics.trajectory import simulate
from ginidyn.helpers.exceptions import GinidynException

try:
    import rich_click as click

    click.rich_click.SHOW_ARGUMENTS = True
except ImportError:
    import click  # type: ignore


@click.command("simulate", short_help="Integrate a mean-field system")
@click.option(
    "-c",
    "--config",
    "config_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Simulation configuration (JSON)",
)
@click.option(
    "-o",
    "--out",
    "out",
    default=None,
    type=click.Path(dir_okay=False),
    help="Trajectory file (defaults to the config 'output.path')",
)
@click.option(
    "-f",
    "--format",
    "fmt",
    default=None,
    type=click.Choice(gdReport.TRAJECTORY_FORMATS),
    help="Trajectory format (defaults to the config, then csv)",
)
@click.pass_context
@io.capture_exception(GinidynException)
def cli_simulate(ctx: click.Context, config_path: str, out: str | None, fmt: str | None) -> None:
    """
    Integrate the model described by CONFIG and record its trajectory.

    Without an output file, the first and last recorded rows are displayed.
    Exits with status 3 when a bound check reported on the trajectory fails.
    """
    config = SimulateConfigFile(config_path)
    record = simulate(config.model(), config.initial(), config.sim())

    out = out if out is not None else config.output_path()
    fmt = fmt if fmt is not None else config.output_format()
    if out is not None:
        gdReport.write_trajectory(record, out, fmt)
    else:
        gdReport.print_trajectory_summary(record)

    failed = {name: n for name, n in record.failures().items() if n > 0}
    if failed:
        for name, n in failed.items():
            io.console.error(f"Check '{name}' failed on {n} recorded row(s)")
        ctx.exit(3)
