from ginidyn import io
from ginidyn.core.dist import gini_equilibrium_value
from ginidyn.core.dist import save_dist
from ginidyn.core.dist import shifted_bernoulli
from ginidyn.helpers import utils
from ginidyn.helpers.exceptions import DistException
from ginidyn.helpers.exceptions import GinidynException

try:
    import rich_click as click

    click.rich_click.SHOW_ARGUMENTS = True
except ImportError:
    import click  # type: ignore


@click.command("equilibrium", short_help="Build the two-point equilibrium of a mean")
@click.option("-m", "--mu", "mu", required=True, type=float, help="Mean value, 0 <= mu <= trunc - 1")
@click.option("-t", "--trunc", "trunc", required=True, type=click.IntRange(min=1), help="Largest state")
@click.option(
    "-o",
    "--out",
    "out",
    default=None,
    type=click.Path(dir_okay=False),
    help="Distribution file (printed on stdout otherwise)",
)
@click.pass_context
@io.capture_exception(GinidynException)
def cli_equilibrium(
    ctx: click.Context,  # pylint: disable=unused-argument
    mu: float,
    trunc: int,
    out: str | None,
) -> None:
    """
    Write the shifted Bernoulli distribution of mean MU and print its Gini index.
    """
    if not 0.0 <= mu <= trunc - 1:
        raise DistException.OutOfRangeError(
            "Mean outside the truncation",
            help_msg="Use 0 <= mu <= trunc - 1.",
            dbg_info={"mu": repr(mu), "trunc": str(trunc)},
        )
    equilibrium = shifted_bernoulli(mu, trunc)
    if out is not None:
        save_dist(equilibrium, out)
    else:
        io.console.print_raw(utils.dump_json(equilibrium.to_json()))
    io.console.print(f"gini_equilibrium = {utils.format_float(gini_equilibrium_value(mu))}")
