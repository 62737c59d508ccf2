from ginidyn import io
from ginidyn.backend import report as gdReport
from ginidyn.backend.configfile import VerifyConfigFile
from ginidyn.helpers.exceptions import GinidynException
from ginidyn.verification.sweep import sweep

try:
    import rich_click as click

    click.rich_click.SHOW_ARGUMENTS = True
except ImportError:
    import click  # type: ignore


@click.command("verify", short_help="Run a randomized inequality sweep")
@click.option(
    "-c",
    "--config",
    "config_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Sweep configuration (JSON)",
)
@click.option(
    "-o",
    "--out",
    "out",
    default=None,
    type=click.Path(dir_okay=False),
    help="Report file (defaults to the config 'output.path')",
)
@click.option("-s", "--seed", "seed", default=None, type=click.IntRange(min=0), help="Base seed")
@click.option(
    "-w", "--workers", "workers", default=None, type=click.IntRange(min=1), help="Worker processes"
)
@click.option("--corrupt-check", "corrupt", default=None, hidden=True)
@click.pass_context
@io.capture_exception(GinidynException)
def cli_verify(
    ctx: click.Context,
    config_path: str,
    out: str | None,
    seed: int | None,
    workers: int | None,
    corrupt: str | None,
) -> None:
    """
    Evaluate every selected inequality on random distributions of each mean.

    Exits with status 3 when at least one inequality fails.
    """
    config = VerifyConfigFile(config_path)
    sweep_cfg = config.sweep_config(seed=seed, workers=workers, corrupt=corrupt)
    if corrupt is not None:
        io.console.warning(f"Check '{corrupt}' is corrupted on purpose, failures are expected")

    report = sweep(sweep_cfg, progress=True)
    out = out if out is not None else config.output_path()
    if out is not None:
        gdReport.write_sweep_report(report, out)
    gdReport.print_sweep_report(report)

    if report.failed:
        io.console.error(f"{report.failures} inequality evaluation(s) failed")
        ctx.exit(3)
