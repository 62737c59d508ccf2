"""
Both sides of every Gini / transport inequality, evaluated on a distribution.

A check maps a distribution ``d`` of mean ``mu`` to a :class:`BoundReport`
holding ``lhs <= rhs`` (or ``lhs == rhs`` for identities). Checks that only
make sense for integer means, non-integer means or ``mu`` in (0, 1) come back
SKIPPED elsewhere.

Checks are registered in :data:`CHECKS` by name; sweeps, trajectories and
the command line all go through :func:`evaluate`.
"""

import math
from functools import cached_property
from typing import Any
from typing import Callable

from ginidyn import SLACK_TOL
from ginidyn.core import metrics
from ginidyn.core.dist import dirac
from ginidyn.core.dist import Dist
from ginidyn.core.dist import gini_equilibrium_value
from ginidyn.core.dist import integer_part
from ginidyn.core.dist import is_integer_mean
from ginidyn.core.dist import mean
from ginidyn.core.dist import shifted_bernoulli
from ginidyn.helpers.exceptions import MetricException
from ginidyn.helpers.exceptions import VerifierException
from ginidyn.verification.checkstate import CheckState


class BoundReport:
    """
    Outcome of one inequality on one distribution.

    :ivar name: check identifier
    :ivar lhs: left-hand side (None when skipped)
    :ivar rhs: right-hand side (None when skipped)
    :ivar slack: rhs - lhs, or -|rhs - lhs| for identities
    :ivar two_sided: identity rather than inequality
    :ivar branch: "integer", "non-integer" or "-" when the mean does not matter
    :ivar state: PASS, FAIL or SKIPPED
    """

    def __init__(
        self,
        name: str,
        lhs: float | None,
        rhs: float | None,
        two_sided: bool = False,
        branch: str = "-",
    ):
        self.name = name
        self.lhs = lhs
        self.rhs = rhs
        self.two_sided = two_sided
        self.branch = branch
        self.slack: float | None = None
        if lhs is None or rhs is None:
            self.state = CheckState.SKIPPED
            return
        self.slack = -abs(rhs - lhs) if two_sided else rhs - lhs
        self.state = CheckState.PASS if self.slack >= -SLACK_TOL else CheckState.FAIL

    @classmethod
    def skipped(cls, name: str, branch: str = "-") -> "BoundReport":
        """A report for a check that does not apply."""
        return cls(name, None, None, branch=branch)

    @property
    def passed(self) -> bool:
        """Whether the inequality holds (skipped checks do not fail)."""
        return self.state != CheckState.FAIL

    def to_dict(self) -> dict[str, Any]:
        """JSON representation."""
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "pass": self.passed,
            "two_sided": self.two_sided,
            "branch": self.branch,
            "state": str(self.state),
        }

    def __repr__(self) -> str:
        """Short representation."""
        return (
            f"BoundReport({self.name}: {self.lhs!r} <= {self.rhs!r}, "
            f"slack={self.slack!r}, {self.state})"
        )


def c_mu(mu: float) -> float:
    """
    Distance from mu to the nearest integer, min(mu - floor(mu), floor(mu) + 1 - mu).

    :param mu: a non-integer mean
    :raises VerifierException.IntegerMeanError: mu is an integer
    :return: C_mu in (0, 0.5]

    # noqa: DAR401
    # noqa: DAR402
    """
    if is_integer_mean(mu):
        raise VerifierException.IntegerMeanError(
            "The constant is undefined for integer means", dbg_info={"mu": repr(mu)}
        )
    low = math.floor(mu)
    return min(mu - low, low + 1 - mu)


class DistProfile:
    """Quantities of one distribution, computed once and shared by all checks."""

    def __init__(self, d: Dist):
        self.dist = d

    @cached_property
    def mu(self) -> float:
        return mean(self.dist)

    @cached_property
    def floor(self) -> int:
        return integer_part(self.mu)

    @cached_property
    def is_integer(self) -> bool:
        return is_integer_mean(self.mu)

    @property
    def branch(self) -> str:
        return "integer" if self.is_integer else "non-integer"

    @cached_property
    def gini(self) -> float:
        return metrics.gini_double_sum(self.dist)

    @cached_property
    def gini_cdf(self) -> float:
        return metrics.gini_cdf(self.dist)

    @cached_property
    def equilibrium(self) -> Dist:
        return shifted_bernoulli(self.mu, max(self.dist.trunc, self.floor + 1))

    @cached_property
    def gini_equilibrium(self) -> float:
        return gini_equilibrium_value(self.mu)

    @cached_property
    def w1_equilibrium(self) -> float:
        return metrics.wasserstein1(self.dist, self.equilibrium)

    @cached_property
    def w1_dirac_mu(self) -> float:
        """W1 to the Dirac mass at the (integer) mean."""
        self.require_integer()
        return metrics.wasserstein1(self.dist, dirac(round(self.mu), max(self.dist.trunc, round(self.mu))))

    @cached_property
    def var_sqrt(self) -> float:
        return metrics.var_sqrt(self.dist)

    @cached_property
    def lower_sums(self) -> tuple[float, float]:
        """
        (A, B) with A = sum_{n <= floor} (floor + 1 - n) p_n and
        B = sum_{n <= floor} (floor - n) p_n.
        """
        low = min(self.floor, self.dist.trunc)
        head = self.dist.probs[: low + 1]
        gaps = [self.floor - n for n in range(low + 1)]
        b = float(sum(g * p for g, p in zip(gaps, head)))
        a = b + float(head.sum())
        return a, b

    def require_positive_mean(self) -> None:
        if self.mu <= 0.0:
            raise MetricException.ZeroMeanError(
                "Inequalities need a positive mean", dbg_info={"dist": repr(self.dist)}
            )

    def require_integer(self) -> None:
        if not self.is_integer:
            raise VerifierException.NonIntegerMeanError(
                "Check only applies to integer means", dbg_info={"mu": repr(self.mu)}
            )

    def require_non_integer(self) -> None:
        if self.is_integer:
            raise VerifierException.IntegerMeanError(
                "Check only applies to non-integer means", dbg_info={"mu": repr(self.mu)}
            )


def _thm1(pr: DistProfile) -> BoundReport:
    pr.require_positive_mean()
    factor = 2.0 * pr.mu if pr.is_integer else 2.0 * pr.mu / c_mu(pr.mu)
    return BoundReport(
        "thm1",
        pr.w1_equilibrium,
        factor * (pr.gini - pr.gini_equilibrium),
        branch=pr.branch,
    )


def _thm2(pr: DistProfile) -> BoundReport:
    pr.require_positive_mean()
    l1 = metrics.lp_distance(pr.dist, dirac(0, pr.dist.trunc), 1.0)
    return BoundReport("thm2", l1, 2.0 * math.sqrt(pr.mu) * math.sqrt(max(1.0 - pr.gini, 0.0)))


def _weak_bound(pr: DistProfile) -> BoundReport:
    pr.require_positive_mean()
    pr.require_integer()
    rhs = 2.0 * math.sqrt(2.0) * pr.mu * math.sqrt(pr.gini)
    return BoundReport("weak_bound", pr.w1_dirac_mu, rhs, branch=pr.branch)


def _weak_variance(pr: DistProfile) -> BoundReport:
    pr.require_positive_mean()
    pr.require_integer()
    rhs = 2.0 * math.sqrt(2.0) * math.sqrt(pr.mu) * math.sqrt(pr.var_sqrt)
    return BoundReport("weak_variance", pr.w1_dirac_mu, rhs, branch=pr.branch)


def _variance_gini(pr: DistProfile) -> BoundReport:
    pr.require_positive_mean()
    return BoundReport("variance_gini", 2.0 * pr.var_sqrt, 2.0 * pr.mu * pr.gini)


def _reverse_bound(pr: DistProfile) -> BoundReport:
    pr.require_positive_mean()
    if pr.is_integer:
        distance = pr.w1_dirac_mu
    else:
        # delta_mu is off the lattice, E|X - mu| is summed directly
        distance = metrics.abs_deviation(pr.dist, pr.mu)
    return BoundReport("reverse_bound", 2.0 * pr.mu * pr.gini, 2.0 * distance, branch=pr.branch)


def _key_inequality(pr: DistProfile) -> BoundReport:
    pr.require_positive_mean()
    upper, lower = metrics.key_tail_functionals(pr.dist, pr.mu)
    return BoundReport("key_inequality", max(upper, lower), pr.mu * pr.gini)


def _prop2_w1_upper(pr: DistProfile) -> BoundReport:
    pr.require_positive_mean()
    pr.require_non_integer()
    a, b = pr.lower_sums
    rhs = 2.0 * max(a - (pr.floor + 1 - pr.mu), b)
    return BoundReport("prop2_w1_upper", pr.w1_equilibrium, rhs, branch=pr.branch)


def _prop2_gini_lower(pr: DistProfile) -> BoundReport:
    pr.require_positive_mean()
    pr.require_non_integer()
    a, b = pr.lower_sums
    lhs = c_mu(pr.mu) * (a - (pr.floor + 1 - pr.mu) + b)
    return BoundReport(
        "prop2_gini_lower", lhs, pr.mu * (pr.gini - pr.gini_equilibrium), branch=pr.branch
    )


def _lemma_mu01(pr: DistProfile) -> BoundReport:
    pr.require_positive_mean()
    if not 0.0 < pr.mu < 1.0 or pr.is_integer:
        raise VerifierException.NotApplicableError(
            "Check only applies to means in (0, 1)", dbg_info={"mu": repr(pr.mu)}
        )
    rhs = 2.0 * (pr.gini - pr.gini_equilibrium)
    return BoundReport("lemma_mu01", pr.w1_equilibrium, rhs, branch=pr.branch)


def _gini_minimizer(pr: DistProfile) -> BoundReport:
    pr.require_positive_mean()
    return BoundReport("gini_minimizer", pr.gini_equilibrium, pr.gini, branch=pr.branch)


def _w1_dirac0(pr: DistProfile) -> BoundReport:
    w1 = metrics.wasserstein1(pr.dist, dirac(0, pr.dist.trunc))
    return BoundReport("w1_dirac0", w1, pr.mu, two_sided=True)


def _gini_identity(pr: DistProfile) -> BoundReport:
    pr.require_positive_mean()
    return BoundReport("gini_identity", pr.gini, pr.gini_cdf, two_sided=True)


CHECKS: dict[str, Callable[[DistProfile], BoundReport]] = {
    "thm1": _thm1,
    "thm2": _thm2,
    "weak_bound": _weak_bound,
    "weak_variance": _weak_variance,
    "variance_gini": _variance_gini,
    "reverse_bound": _reverse_bound,
    "key_inequality": _key_inequality,
    "prop2_w1_upper": _prop2_w1_upper,
    "prop2_gini_lower": _prop2_gini_lower,
    "lemma_mu01": _lemma_mu01,
    "gini_minimizer": _gini_minimizer,
    "w1_dirac0": _w1_dirac0,
    "gini_identity": _gini_identity,
}


def check_names(names: list[str] | None = None) -> list[str]:
    """
    Validate a selection of checks, every registered check when empty.

    :param names: requested checks
    :raises VerifierException.UnknownCheckError: a name is not registered
    :return: the selection, in request order

    # noqa: DAR401
    # noqa: DAR402
    """
    if not names:
        return list(CHECKS.keys())
    for name in names:
        if name not in CHECKS:
            raise VerifierException.UnknownCheckError(name, list(CHECKS.keys()))
    return list(names)


def evaluate(name: str, target: Dist | DistProfile, corrupt: bool = False) -> BoundReport:
    """
    Run one registered check.

    :param name: check identifier
    :param target: a distribution or its shared profile
    :param corrupt: swap both sides (self-test of the harness)
    :raises VerifierException.UnknownCheckError: name is not registered
    :raises MetricException.ZeroMeanError: zero mean on a check needing mu > 0
    :return: the report, SKIPPED when the check does not apply to this mean

    # noqa: DAR401
    # noqa: DAR402
    """
    if name not in CHECKS:
        raise VerifierException.UnknownCheckError(name, list(CHECKS.keys()))
    profile = target if isinstance(target, DistProfile) else DistProfile(target)
    try:
        report = CHECKS[name](profile)
    except VerifierException.NotApplicableError:
        return BoundReport.skipped(name, branch=profile.branch)
    if corrupt and report.state != CheckState.SKIPPED:
        report = BoundReport(name, report.rhs, report.lhs, report.two_sided, report.branch)
    return report


def check_thm1(d: Dist) -> BoundReport:
    """W1(p, p*) <= 2mu/C (G[p] - G[p*]), with 2mu (C = 1) for integer means."""
    return evaluate("thm1", d)


def check_thm2(d: Dist) -> BoundReport:
    """||p - delta_0||_1 <= 2 sqrt(mu) sqrt(1 - G[p])."""
    return evaluate("thm2", d)


def check_weak_bound(d: Dist) -> BoundReport:
    """W1(p, delta_mu) <= 2 sqrt(2) mu sqrt(G[p]), integer means."""
    return evaluate("weak_bound", d)


def check_weak_variance(d: Dist) -> BoundReport:
    """W1(p, delta_mu) <= 2 sqrt(2) sqrt(mu) sqrt(Var[sqrt X]), integer means."""
    return evaluate("weak_variance", d)


def check_variance_gini(d: Dist) -> BoundReport:
    """2 Var[sqrt X] <= 2 mu G[p]."""
    return evaluate("variance_gini", d)


def check_reverse_bound(d: Dist) -> BoundReport:
    """2 mu G[p] <= 2 E|X - mu|."""
    return evaluate("reverse_bound", d)


def check_key_inequality(d: Dist) -> BoundReport:
    """max(upper tail, lower tail) <= mu G[p]."""
    return evaluate("key_inequality", d)


def check_prop2_intermediates(d: Dist) -> tuple[BoundReport, BoundReport]:
    """The W1 upper bound and the Gini lower bound behind the non-integer case."""
    profile = DistProfile(d)
    return evaluate("prop2_w1_upper", profile), evaluate("prop2_gini_lower", profile)


def check_lemma_mu01(d: Dist) -> BoundReport:
    """W1(p, p*) <= 2 (G[p] - G[p*]) for mu in (0, 1)."""
    return evaluate("lemma_mu01", d)


def check_gini_minimizer(d: Dist) -> BoundReport:
    """G[p*] <= G[p]."""
    return evaluate("gini_minimizer", d)


def check_w1_dirac0(d: Dist) -> BoundReport:
    """W1(p, delta_0) == mu."""
    return evaluate("w1_dirac0", d)


def check_gini_identity(d: Dist) -> BoundReport:
    """Double-sum and CDF forms of the Gini index agree."""
    return evaluate("gini_identity", d)
