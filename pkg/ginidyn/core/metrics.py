"""
Scalar functionals of one or two distributions.

Gini index (fast prefix-sum form, CDF form and the literal double sum kept as
an oracle), order-1 Wasserstein distance through the CDF difference, lp
distances and the intermediate quantities inequality checks are built from.
Every function is pure: sweeps can call them from any worker.
"""

import math

import numpy as np

from ginidyn.core.dist import Dist
from ginidyn.core.dist import FloatArray
from ginidyn.core.dist import integer_part
from ginidyn.core.dist import mean
from ginidyn.core.dist import survival
from ginidyn.helpers.exceptions import MetricException


def _states(trunc: int) -> FloatArray:
    return np.arange(trunc + 1, dtype=np.float64)


def _zero_mean_gini(d: Dist) -> float:
    """G[delta_0] is 0 by convention, any other zero-mean input is an error."""
    if np.any(d.probs[1:] > 0.0):
        raise MetricException.ZeroMeanError(
            "Gini index undefined for a zero mean", dbg_info={"dist": repr(d)}
        )
    return 0.0


def gini_double_sum(d: Dist) -> float:
    """
    Gini index (1/2mu) sum_i sum_j |i - j| p_i p_j in a single pass.

    States are sorted, so the double sum reduces to
    ``(1/mu) sum_j p_j (j F_{j-1} - M_{j-1})`` where F and M are the prefix
    sums of p_i and i p_i.

    :param d: the distribution
    :raises MetricException.ZeroMeanError: zero mean on a non-Dirac input
    :return: G[d]

    # noqa: DAR401
    # noqa: DAR402
    """
    mu = mean(d)
    if mu <= 0.0:
        return _zero_mean_gini(d)
    states = _states(d.trunc)
    p = d.probs
    prefix_mass = np.concatenate(([0.0], np.cumsum(p)[:-1]))
    prefix_moment = np.concatenate(([0.0], np.cumsum(states * p)[:-1]))
    return float(np.dot(p, states * prefix_mass - prefix_moment)) / mu


def gini(d: Dist) -> float:
    """Gini index, fast path."""
    return gini_double_sum(d)


def gini_iid_form(d: Dist) -> float:
    """
    Gini index as (1/2mu) E|X - X'| for independent copies X, X'.

    Literal O(N^2) double sum, kept as a reference for the fast forms.

    :param d: the distribution
    :raises MetricException.ZeroMeanError: zero mean on a non-Dirac input
    :return: G[d]

    # noqa: DAR401
    # noqa: DAR402
    """
    mu = mean(d)
    if mu <= 0.0:
        return _zero_mean_gini(d)
    states = _states(d.trunc)
    gaps = np.abs(np.subtract.outer(states, states))
    return float(d.probs @ gaps @ d.probs) / (2.0 * mu)


def gini_cdf(d: Dist) -> float:
    """
    Gini index as 1 - (1/mu) sum_{n < N} (1 - F_n)^2.

    The tails 1 - F_n are taken from :func:`survival`.

    :param d: the distribution
    :raises MetricException.ZeroMeanError: zero mean on a non-Dirac input
    :return: G[d]

    # noqa: DAR401
    # noqa: DAR402
    """
    mu = mean(d)
    if mu <= 0.0:
        return _zero_mean_gini(d)
    tails = survival(d)[:-1]
    return 1.0 - float(np.dot(tails, tails)) / mu


def wasserstein1(a: Dist, b: Dist) -> float:
    """
    Order-1 Wasserstein distance sum_{n < N} |F_a(n) - F_b(n)|.

    Inputs on different truncations are zero-padded to the larger one.

    :param a: first distribution
    :param b: second distribution
    :return: W1(a, b)
    """
    trunc = max(a.trunc, b.trunc)
    gap = np.cumsum(a.padded(trunc)) - np.cumsum(b.padded(trunc))
    return float(np.abs(gap[:-1]).sum())


def lp_distance(a: Dist, b: Dist, p: float = 1.0) -> float:
    """
    lp distance (sum |a_n - b_n|^p)^(1/p), p = inf giving the max norm.

    :param a: first distribution
    :param b: second distribution
    :param p: order, >= 1
    :raises MetricException.InvalidOrderError: p < 1
    :return: ||a - b||_p

    # noqa: DAR401
    # noqa: DAR402
    """
    if math.isnan(p) or p < 1.0:
        raise MetricException.InvalidOrderError(
            "lp distances need p >= 1", dbg_info={"p": repr(p)}
        )
    trunc = max(a.trunc, b.trunc)
    return float(np.linalg.norm(a.padded(trunc) - b.padded(trunc), ord=p))


def var_sqrt(d: Dist) -> float:
    """Var[sqrt X] = mu - (E sqrt X)^2, rounding noise below zero clipped."""
    states = _states(d.trunc)
    first = float(np.dot(np.sqrt(states), d.probs))
    return max(mean(d) - first * first, 0.0)


def key_tail_functionals(d: Dist, mu: float | None = None) -> tuple[float, float]:
    """
    Upper and lower tails around the mean.

    ``upper = sum_{j > floor(mu)} (j - mu) p_j`` and
    ``lower = sum_{i <= floor(mu)} (mu - i) p_i``. Both agree when ``mu`` is
    the mean of ``d``.

    :param d: the distribution
    :param mu: centre, the mean of d by default
    :return: (upper_tail, lower_tail)
    """
    if mu is None:
        mu = mean(d)
    states = _states(d.trunc)
    low = integer_part(mu)
    above = states > low
    weighted = (states - mu) * d.probs
    upper = float(weighted[above].sum())
    lower = float(-weighted[~above].sum())
    return upper, lower


def abs_deviation(d: Dist, center: float) -> float:
    """E|X - center|."""
    return float(np.dot(np.abs(_states(d.trunc) - center), d.probs))


def w1_to_dirac0(d: Dist) -> float:
    """W1(d, delta_0), through the tail sums."""
    return float(survival(d)[:-1].sum())

