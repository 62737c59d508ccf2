from ginidyn import io
from ginidyn.backend import report as gdReport
from ginidyn.core.dist import load_dist
from ginidyn.helpers import utils
from ginidyn.helpers.exceptions import GinidynException

try:
    import rich_click as click

    click.rich_click.SHOW_ARGUMENTS = True
except ImportError:
    import click  # type: ignore


@click.command("metrics", short_help="Evaluate metrics of distribution files")
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.argument("second", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option(
    "-f",
    "--format",
    "fmt",
    default="table",
    type=click.Choice(["table", "json", "csv"]),
    help="Output format",
)
@click.pass_context
@io.capture_exception(GinidynException)
def cli_metrics(
    ctx: click.Context,  # pylint: disable=unused-argument
    first: str,
    second: str | None,
    fmt: str,
) -> None:
    """
    Print mean, Gini index (both forms) and Var[sqrt X] of FIRST.

    With SECOND, also print the W1 and l1 distances between them.
    """
    a = load_dist(first)
    b = load_dist(second) if second is not None else None
    values = gdReport.dist_metrics(a, b)
    if fmt == "json":
        io.console.print_raw(utils.dump_json(values))
    elif fmt == "csv":
        io.console.print_raw(gdReport.metrics_csv(values))
    else:
        gdReport.print_metrics(values)
