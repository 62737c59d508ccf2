"""
Randomized verification sweeps.

Every check runs on ``n_samples`` random members of the constraint set for
each mean of the grid. Sample ``i`` (counted across the whole grid) uses the
seed ``seed + i``, so results do not depend on how samples are spread over
workers.
"""

import multiprocessing
from typing import Any

from ginidyn import io
from ginidyn import WITNESS_TOL
from ginidyn.core.dist import shifted_bernoulli
from ginidyn.helpers.exceptions import VerifierException
from ginidyn.verification.bounds import check_names
from ginidyn.verification.bounds import DistProfile
from ginidyn.verification.bounds import evaluate
from ginidyn.verification.checkstate import CheckState
from ginidyn.verification.oracle import sample_Vmu

# (mu, seed, [(check, state, slack, dist json or None)])
SampleOutcome = tuple[float, int, list[tuple[str, str, float | None, dict[str, Any] | None]]]


class SweepConfig:
    """
    Parameters of a verification sweep.

    :ivar mu_grid: means to sample, each in (0, trunc)
    :ivar trunc: largest represented state
    :ivar n_samples: samples per mean
    :ivar seed: base seed
    :ivar checks: selected checks, all when empty
    :ivar workers: process pool size, 1 runs in-process
    :ivar max_witnesses: tightness witnesses kept per check
    :ivar equilibrium_only: evaluate on the equilibrium of each mean only
    :ivar corrupt: name of a check whose direction is flipped
    """

    def __init__(
        self,
        mu_grid: list[float],
        trunc: int,
        n_samples: int,
        seed: int = 0,
        checks: list[str] | None = None,
        workers: int = 1,
        max_witnesses: int = 5,
        equilibrium_only: bool = False,
        corrupt: str | None = None,
    ):
        """
        Validate sweep parameters.

        :raises VerifierException.InfeasibleMeanError: a mean outside (0, trunc)
        :raises VerifierException.UnknownCheckError: unknown check name

        # noqa: DAR101
        # noqa: DAR401
        # noqa: DAR402
        """
        for mu in mu_grid:
            if not 0.0 < mu < trunc:
                raise VerifierException.InfeasibleMeanError(
                    "Sweep means must lie in (0, trunc)",
                    dbg_info={"mu": repr(mu), "trunc": str(trunc)},
                )
        self.mu_grid = list(mu_grid)
        self.trunc = trunc
        self.n_samples = max(0, n_samples)
        self.seed = seed
        self.checks = check_names(checks)
        self.workers = max(1, workers)
        self.max_witnesses = max_witnesses
        self.equilibrium_only = equilibrium_only
        if corrupt is not None:
            check_names([corrupt])
        self.corrupt = corrupt

    def to_dict(self) -> dict[str, Any]:
        """Configuration, as echoed in the report."""
        return {
            "mu_grid": self.mu_grid,
            "trunc": self.trunc,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "checks": self.checks,
            "equilibrium_only": self.equilibrium_only,
        }


class CheckSummary:
    """Aggregated outcomes of one check over a sweep."""

    def __init__(self, name: str, max_witnesses: int):
        self.name = name
        self.count = 0
        self.failures = 0
        self.skipped = 0
        self.min_slack: float | None = None
        self.witnesses: list[dict[str, Any]] = []
        self._max_witnesses = max_witnesses

    def add(self, mu: float, seed: int, state: str, slack: float | None, dist: dict | None) -> None:
        """Account for one evaluation."""
        if state == str(CheckState.SKIPPED):
            self.skipped += 1
            return
        assert slack is not None
        self.count += 1
        if state == str(CheckState.FAIL):
            self.failures += 1
        if self.min_slack is None or slack < self.min_slack:
            self.min_slack = slack
        if dist is not None and len(self.witnesses) < self._max_witnesses:
            self.witnesses.append({"mu": mu, "seed": seed, "slack": slack, "dist": dist})

    def to_dict(self) -> dict[str, Any]:
        """JSON representation."""
        return {
            "count": self.count,
            "failures": self.failures,
            "skipped": self.skipped,
            "min_slack": self.min_slack,
            "witnesses": self.witnesses,
        }


class SweepReport:
    """Per-check aggregates, in check order."""

    def __init__(self, checks: list[str], max_witnesses: int = 5):
        self._summaries: dict[str, CheckSummary] = {
            name: CheckSummary(name, max_witnesses) for name in checks
        }
        self.n_evaluated = 0

    def add(self, outcome: SampleOutcome) -> None:
        """Fold the outcome of one sample in."""
        mu, seed, results = outcome
        self.n_evaluated += 1
        for name, state, slack, dist in results:
            self._summaries[name].add(mu, seed, state, slack, dist)

    @property
    def summaries(self) -> dict[str, CheckSummary]:
        """Aggregates by check name (empty before any sample)."""
        if self.n_evaluated == 0:
            return {}
        return self._summaries

    @property
    def failures(self) -> int:
        """Total number of failed evaluations."""
        return sum(s.failures for s in self._summaries.values())

    @property
    def failed(self) -> bool:
        """Whether at least one inequality failed."""
        return self.failures > 0

    def to_json(self) -> dict[str, Any]:
        """Report file content: check name -> aggregates."""
        return {name: s.to_dict() for name, s in self.summaries.items()}


def _run_sample(task: tuple[float, int, int, list[str], str | None, bool]) -> SampleOutcome:
    """Evaluate the selected checks on one sample (pool worker)."""
    mu, trunc, seed, checks, corrupt, equilibrium_only = task
    if equilibrium_only:
        d = shifted_bernoulli(mu, trunc)
    else:
        d = sample_Vmu(mu, trunc, seed)
    profile = DistProfile(d)
    results = []
    for name in checks:
        report = evaluate(name, profile, corrupt=(name == corrupt))
        witness = None
        if report.slack is not None and report.slack < WITNESS_TOL:
            witness = d.to_json()
        results.append((name, str(report.state), report.slack, witness))
    return mu, seed, results


def _tasks(cfg: SweepConfig) -> list[tuple[float, int, int, list[str], str | None, bool]]:
    if cfg.equilibrium_only:
        if cfg.n_samples == 0:
            return []
        return [
            (mu, cfg.trunc, cfg.seed + i, cfg.checks, cfg.corrupt, True)
            for i, mu in enumerate(cfg.mu_grid)
        ]
    return [
        (mu, cfg.trunc, cfg.seed + g * cfg.n_samples + s, cfg.checks, cfg.corrupt, False)
        for g, mu in enumerate(cfg.mu_grid)
        for s in range(cfg.n_samples)
    ]


def sweep(cfg: SweepConfig, progress: bool = False) -> SweepReport:
    """
    Run every selected check over random members of the constraint set.

    :param cfg: sweep parameters
    :param progress: display a progress bar
    :return: the aggregated report
    """
    tasks = _tasks(cfg)
    report = SweepReport(cfg.checks, cfg.max_witnesses)
    io.console.info(
        f"Sweeping {len(cfg.checks)} check(s) over {len(tasks)} sample(s) "
        f"with {cfg.workers} worker(s)"
    )
    if not tasks:
        return report

    if cfg.workers > 1:
        with multiprocessing.Pool(processes=cfg.workers) as pool:
            outcomes = pool.imap(_run_sample, tasks, chunksize=max(1, len(tasks) // (cfg.workers * 8)))
            if progress:
                outcomes = io.console.progress_iter(outcomes, total=len(tasks))
            for outcome in outcomes:
                report.add(outcome)
    else:
        items = io.console.progress_iter(tasks) if progress else tasks
        for task in items:
            report.add(_run_sample(task))

    for name, summary in report.summaries.items():
        io.console.log(
            f"{name}: {summary.count} evaluated, {summary.failures} failed, "
            f"{summary.skipped} skipped, min slack {summary.min_slack}"
        )
    return report
