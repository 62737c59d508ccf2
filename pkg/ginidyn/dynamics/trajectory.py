"""
Trajectory integration and recording.

:func:`simulate` integrates one model from an initial datum with a fixed
step, monitoring conservation, and records the metrics and selected bound
reports every ``record_every`` steps.
"""

import csv
import math
from typing import Any
from typing import IO

from ginidyn import DEFAULT_TAIL_WARN
from ginidyn import DEFAULT_TOL_MASS
from ginidyn import DEFAULT_TOL_MEAN
from ginidyn import DEFAULT_TOL_NEG
from ginidyn import io
from ginidyn import SLACK_TOL
from ginidyn.core import metrics
from ginidyn.core.dist import dirac
from ginidyn.core.dist import Dist
from ginidyn.core.dist import integer_part
from ginidyn.core.dist import mean
from ginidyn.core.dist import shifted_bernoulli
from ginidyn.dynamics.integrator import STEPPERS
from ginidyn.dynamics.models import ModelKind
from ginidyn.dynamics.models import ModelSpec
from ginidyn.helpers import utils
from ginidyn.helpers.exceptions import DynamicsException
from ginidyn.helpers.exceptions import MetricException
from ginidyn.verification.bounds import check_names
from ginidyn.verification.bounds import DistProfile
from ginidyn.verification.bounds import evaluate

Row = list[float | None]

# errors raised while stepping, reported with the step index and time
STEP_ERRORS = (
    DynamicsException.PositivityViolationError,
    DynamicsException.MassDriftError,
    DynamicsException.MeanDriftError,
)


class SimConfig:
    """
    Integration settings.

    :ivar trunc: largest represented state N
    :ivar dt: time step
    :ivar t_end: horizon
    :ivar record_every: step stride between recorded rows
    :ivar method: "rk4" or "euler"
    :ivar checks: bound checks reported on every row
    """

    def __init__(
        self,
        trunc: int,
        dt: float = 0.01,
        t_end: float = 10.0,
        record_every: int = 10,
        tol_mass: float = DEFAULT_TOL_MASS,
        tol_mean: float = DEFAULT_TOL_MEAN,
        tol_neg: float = DEFAULT_TOL_NEG,
        tail_warn: float = DEFAULT_TAIL_WARN,
        method: str = "rk4",
        checks: list[str] | None = None,
        stop_on_convergence: bool = False,
        convergence_tol: float = 1e-12,
    ):
        """
        Validate integration settings.

        :raises DynamicsException.InvalidConfigError: out-of-range setting
        :raises VerifierException.UnknownCheckError: unknown check name

        # noqa: DAR101
        # noqa: DAR401
        # noqa: DAR402
        """
        problems = []
        if trunc < 2:
            problems.append(("trunc", trunc))
        if not dt > 0:
            problems.append(("dt", dt))
        if not t_end >= 0:
            problems.append(("t_end", t_end))
        if record_every < 1:
            problems.append(("record_every", record_every))
        if method not in STEPPERS:
            problems.append(("method", method))
        if problems:
            raise DynamicsException.InvalidConfigError(
                "Invalid integration settings",
                help_msg="Need trunc >= 2, dt > 0, t_end >= 0, record_every >= 1, "
                "method in " + ", ".join(STEPPERS),
                dbg_info={k: str(v) for k, v in problems},
            )
        self.trunc = trunc
        self.dt = dt
        self.t_end = t_end
        self.record_every = record_every
        self.tol_mass = tol_mass
        self.tol_mean = tol_mean
        self.tol_neg = tol_neg
        self.tail_warn = tail_warn
        self.method = method
        self.checks = check_names(checks) if checks else []
        self.stop_on_convergence = stop_on_convergence
        self.convergence_tol = convergence_tol

    @property
    def n_steps(self) -> int:
        """Number of steps to reach t_end."""
        return int(math.ceil(self.t_end / self.dt - 1e-9))

    @classmethod
    def from_dict(cls, content: dict[str, Any]) -> "SimConfig":
        """Build from the 'sim' section of a configuration."""
        return cls(**content)


class TrajectoryRecord:
    """
    Recorded rows of a trajectory.

    :ivar columns: column names, metrics first then ``<check>_lhs|rhs|slack``
    :ivar rows: one list of values per recorded step, None for "not applicable"
    :ivar tail_warnings: steps at which p_N first exceeded tail_warn
    :ivar stopped_early: the convergence criterion ended the integration
    :ivar final_state: last state reached
    """

    BASE_COLUMNS = ["t", "mass", "mean", "gini", "w1_equil", "l1_dirac0", "tail_mass"]

    def __init__(self, checks: list[str]):
        self.checks = list(checks)
        self.columns: list[str] = self.BASE_COLUMNS + [
            f"{name}_{side}" for name in self.checks for side in ("lhs", "rhs", "slack")
        ]
        self.rows: list[Row] = []
        self.tail_warnings: list[int] = []
        self.stopped_early: bool = False
        self.final_state: Dist | None = None

    def __len__(self) -> int:
        return len(self.rows)

    def append(self, row: Row) -> None:
        assert len(row) == len(self.columns)
        assert not self.rows or row[0] > self.rows[-1][0]  # type: ignore[operator]
        self.rows.append(row)

    def column(self, name: str) -> list[float | None]:
        """
        All values of one column.

        :param name: column name
        :raises KeyError: unknown column
        :return: the values, in time order
        """
        if name not in self.columns:
            raise KeyError(name)
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def failures(self) -> dict[str, int]:
        """Number of rows where each check failed."""
        out = {}
        for name in self.checks:
            slacks = self.column(f"{name}_slack")
            out[name] = sum(1 for s in slacks if s is not None and s < -SLACK_TOL)
        return out

    def write_csv(self, fh: IO[str]) -> None:
        """Header row then one line per record, 17 significant digits."""
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([utils.format_float(v) for v in row])

    def to_json(self) -> list[dict[str, float | None]]:
        """Array of row objects."""
        return [dict(zip(self.columns, row)) for row in self.rows]


def _initial_state(spec: ModelSpec, d0: Dist, cfg: SimConfig) -> Dist:
    if d0.trunc > cfg.trunc:
        raise DynamicsException.InvalidInitialDatumError(
            "Initial datum does not fit in the truncation",
            dbg_info={"datum trunc": str(d0.trunc), "trunc": str(cfg.trunc)},
        )
    spec.check_trunc(cfg.trunc)
    start = Dist(d0.padded(cfg.trunc), tol_mass=cfg.tol_mass, tol_neg=cfg.tol_neg)
    if spec.kind == ModelKind.STICKY_DISPERSION:
        assert spec.mu is not None
        mu0 = mean(start)
        if abs(mu0 - spec.mu) > cfg.tol_mean:
            raise DynamicsException.InvalidInitialDatumError(
                "Sticky dispersion only conserves the mean it is parameterized with",
                help_msg="Set 'model.mu' to the mean of the initial datum.",
                dbg_info={"mu": repr(spec.mu), "datum mean": repr(mu0)},
            )
    return start


def simulate(spec: ModelSpec, d0: Dist, cfg: SimConfig) -> TrajectoryRecord:
    """
    Integrate a model from d0 up to cfg.t_end.

    Rows hold mass, mean, Gini index (CDF form), W1 to the equilibrium of the
    initial mean, l1 distance to delta_0, p_N and every selected bound. The
    first row is the initial datum, the last one the final state.

    :param spec: the model
    :param d0: initial datum, zero-padded up to cfg.trunc
    :param cfg: integration settings
    :raises DynamicsException.InvalidInitialDatumError: d0 incompatible with spec
    :raises DynamicsException.TruncationMismatchError: trunc != 2k
    :raises DynamicsException.MeanDriftError: mean left its truncation bound
    :raises DynamicsException.PositivityViolationError: dt too large
    :raises DynamicsException.MassDriftError: mass left 1 +/- tol_mass
    :return: the recorded trajectory

    # noqa: DAR401
    # noqa: DAR402
    """
    state = _initial_state(spec, d0, cfg)
    rhs = spec.rhs()
    stepper = STEPPERS[cfg.method]
    mu0 = mean(state)
    equilibrium = shifted_bernoulli(mu0, max(cfg.trunc, integer_part(mu0) + 1))
    origin = dirac(0, cfg.trunc)
    record = TrajectoryRecord(cfg.checks)
    can_converge = cfg.stop_on_convergence and spec.kind != ModelKind.RICH_BIASED

    def snapshot(t: float, d: Dist) -> None:
        profile = DistProfile(d)
        row: Row = [
            t,
            d.mass,
            profile.mu,
            profile.gini_cdf if profile.mu > 0 else 0.0,
            metrics.wasserstein1(d, equilibrium),
            metrics.lp_distance(d, origin, 1.0),
            float(d.probs[-1]),
        ]
        for name in cfg.checks:
            try:
                report = evaluate(name, profile)
            except MetricException.ZeroMeanError:
                row.extend([None, None, None])
                continue
            row.extend([report.lhs, report.rhs, report.slack])
        record.append(row)
        io.console.log(f"t={t:.6g} mass={d.mass:.17g} mean={profile.mu:.17g} gini={row[3]:.17g}")

    io.console.info(
        f"Integrating {spec.kind} with {cfg.method}, dt={cfg.dt}, {cfg.n_steps} step(s), "
        f"N={cfg.trunc}, mean={mu0:.17g}"
    )
    snapshot(0.0, state)
    previous_recorded = state
    flux_bound = 0.0
    n_steps = cfg.n_steps
    for step in range(1, n_steps + 1):
        t = step * cfg.dt
        try:
            nxt = stepper(rhs, state, cfg.dt)
            flux_bound += cfg.dt * max(
                spec.flux_defect_rate(state.probs) * float(state.probs[-1]),
                spec.flux_defect_rate(nxt.probs) * float(nxt.probs[-1]),
            )
            drift = abs(mean(nxt) - mu0)
            if drift > cfg.tol_mean + flux_bound:
                raise DynamicsException.MeanDriftError(
                    "Mean drifted beyond the truncation flux bound",
                    help_msg="Increase the truncation or decrease dt.",
                    dbg_info={"drift": repr(drift), "bound": repr(cfg.tol_mean + flux_bound)},
                )
        except STEP_ERRORS as e:
            e.add_dbg("step", step)
            e.add_dbg("time", t)
            raise e
        state = nxt

        if not record.tail_warnings and state.probs[-1] > cfg.tail_warn:
            record.tail_warnings.append(step)
            io.console.warning(
                f"Tail mass p_N={float(state.probs[-1]):.3g} exceeds {cfg.tail_warn:g} "
                f"at t={t:.6g}, the truncation may be too small"
            )

        if step % cfg.record_every == 0 or step == n_steps:
            snapshot(t, state)
            if can_converge:
                if metrics.lp_distance(state, previous_recorded, 1.0) < cfg.convergence_tol:
                    record.stopped_early = True
                    io.console.info(f"Converged at t={t:.6g}")
                    break
            previous_recorded = state

    record.final_state = state
    return record
