"""
Emitters for command results: trajectory files, metric tables and sweep
reports. Files are always written atomically.
"""

import csv
import io as stdio
from typing import Any

from rich.table import Column

from ginidyn import io
from ginidyn.core import metrics
from ginidyn.core.dist import Dist
from ginidyn.core.dist import mean
from ginidyn.dynamics.trajectory import TrajectoryRecord
from ginidyn.helpers import utils
from ginidyn.verification.sweep import SweepReport

TRAJECTORY_FORMATS = ["csv", "json"]


def trajectory_text(record: TrajectoryRecord, fmt: str = "csv") -> str:
    """
    Serialize a trajectory.

    :param record: the trajectory
    :param fmt: csv or json
    :return: the file content
    """
    if fmt == "json":
        return utils.dump_json(record.to_json())
    buf = stdio.StringIO()
    record.write_csv(buf)
    return buf.getvalue()


def write_trajectory(record: TrajectoryRecord, path: str, fmt: str = "csv") -> None:
    """Atomically write a trajectory file."""
    with utils.atomic_open(path) as fh:
        fh.write(trajectory_text(record, fmt))
    io.console.info(f"Trajectory ({len(record)} rows) written to {path}")


def print_trajectory_summary(record: TrajectoryRecord) -> None:
    """Table of the first and last recorded rows."""
    table = io.console.create_table(
        "Trajectory", [Column("column"), Column("initial", justify="right"), Column("final", justify="right")]
    )
    first, last = record.rows[0], record.rows[-1]
    for name, a, b in zip(record.columns, first, last):
        table.add_row(name, utils.format_float(a), utils.format_float(b))
    io.console.print_rich(table)
    if record.stopped_early:
        io.console.print_item("stopped on convergence")


def dist_metrics(a: Dist, b: Dist | None = None) -> dict[str, Any]:
    """
    Metrics of one distribution, and distances to a second one when given.

    :param a: first distribution
    :param b: optional second distribution
    :return: name -> value, in display order
    """
    out: dict[str, Any] = {"trunc": a.trunc, "mean": mean(a)}
    out["gini_double_sum"] = metrics.gini_double_sum(a)
    out["gini_cdf"] = metrics.gini_cdf(a)
    out["var_sqrt"] = metrics.var_sqrt(a)
    if b is not None:
        out["w1"] = metrics.wasserstein1(a, b)
        out["l1"] = metrics.lp_distance(a, b, 1.0)
    return out


def metrics_csv(values: dict[str, Any]) -> str:
    """One ``metric,value`` line per entry, after a header."""
    buf = stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["metric", "value"])
    for name, value in values.items():
        writer.writerow([name, utils.format_float(value) if isinstance(value, float) else str(value)])
    return buf.getvalue()


def print_metrics(values: dict[str, Any]) -> None:
    """Rich table of metric values."""
    table = io.console.create_table("Metrics", [Column("metric"), Column("value", justify="right")])
    for name, value in values.items():
        table.add_row(name, utils.format_float(value) if isinstance(value, float) else str(value))
    io.console.print_rich(table)


def print_sweep_report(report: SweepReport) -> None:
    """Rich table of per-check aggregates."""
    table = io.console.create_table(
        "Verification sweep",
        [
            Column("check"),
            Column("count", justify="right"),
            Column("failures", justify="right"),
            Column("skipped", justify="right"),
            Column("min slack", justify="right"),
            Column("witnesses", justify="right"),
        ],
    )
    for name, s in report.summaries.items():
        status = io.console.utf("failed") if s.failures else io.console.utf("passed")
        table.add_row(
            f"{status} {name}",
            str(s.count),
            f"[red]{s.failures}[/]" if s.failures else "0",
            str(s.skipped),
            utils.format_float(s.min_slack) if s.min_slack is not None else io.console.utf("skipped"),
            str(len(s.witnesses)),
        )
    io.console.print_rich(table)


def write_sweep_report(report: SweepReport, path: str) -> None:
    """Atomically write a sweep report."""
    utils.write_json(path, report.to_json())
    io.console.info(f"Sweep report written to {path}")
