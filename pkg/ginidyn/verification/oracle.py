"""
Test inputs and reference computations for the checks.

:func:`sample_Vmu` draws random distributions of a prescribed mean and
:func:`w1_bruteforce` computes transport costs along an independent code path
from :func:`ginidyn.core.metrics.wasserstein1`.
"""

import numpy as np

from ginidyn.core.dist import Dist
from ginidyn.helpers.exceptions import VerifierException

ORACLE_MAX_SUPPORT = 16


def sample_Vmu(mu: float, trunc: int, seed: int) -> Dist:  # pylint: disable=invalid-name
    """
    Draw a random distribution on {0..trunc} with mean exactly mu.

    Random weights (exponential noise under a random exponential envelope,
    raised to a random power, on a random sub-support) are normalized to a
    distribution q of mean m. The mean is then corrected by mixing with
    delta_0 when m > mu, with lambda = 1 - mu / m, or with delta_trunc when
    m < mu, with lambda = (mu - m) / (trunc - m). Mixing biases samples
    toward both endpoint atoms.

    :param mu: target mean, 0 < mu < trunc
    :param trunc: largest represented state
    :param seed: generator seed, equal seeds give equal samples
    :raises VerifierException.InfeasibleMeanError: mu outside (0, trunc)
    :return: a member of the constraint set

    # noqa: DAR401
    # noqa: DAR402
    """
    if not 0.0 < mu < trunc:
        raise VerifierException.InfeasibleMeanError(
            "No distribution on {0..trunc} has this mean",
            help_msg="Sampling needs 0 < mu < trunc.",
            dbg_info={"mu": repr(mu), "trunc": str(trunc)},
        )
    rng = np.random.default_rng(seed)
    states = np.arange(trunc + 1, dtype=np.float64)

    scale = rng.uniform(0.2, 3.0) * max(mu, 0.5)
    weights = rng.exponential(size=trunc + 1) * np.exp(-states / scale)
    weights = weights ** rng.uniform(0.25, 4.0)
    keep = rng.random(trunc + 1) < rng.uniform(0.2, 1.0)
    keep[rng.integers(trunc + 1)] = True
    weights = np.where(keep, weights, 0.0)
    if weights.sum() <= 0.0:
        weights = keep.astype(np.float64)

    q = weights / weights.sum()
    m = float(np.dot(states, q))
    if m > mu:
        lam = 1.0 - mu / m
        q = (1.0 - lam) * q
        q[0] += lam
    elif m < mu:
        lam = (mu - m) / (trunc - m)
        q = (1.0 - lam) * q
        q[trunc] += lam
    return Dist(q)


def w1_bruteforce(a: Dist, b: Dist) -> float:
    """
    Cost of the monotone (north-west corner) coupling between a and b.

    Supports are matched greedily in increasing order, which is optimal for
    the cost |i - j| on the line.

    :param a: first distribution
    :param b: second distribution
    :raises VerifierException.OracleLimitError: a support exceeds ORACLE_MAX_SUPPORT atoms
    :return: the transport cost

    # noqa: DAR401
    # noqa: DAR402
    """
    atoms_a = [(n, float(p)) for n, p in enumerate(a.probs) if p > 0.0]
    atoms_b = [(n, float(p)) for n, p in enumerate(b.probs) if p > 0.0]
    if max(len(atoms_a), len(atoms_b)) > ORACLE_MAX_SUPPORT:
        raise VerifierException.OracleLimitError(
            "Support too large for the brute-force oracle",
            dbg_info={
                "support(a)": str(len(atoms_a)),
                "support(b)": str(len(atoms_b)),
                "limit": str(ORACLE_MAX_SUPPORT),
            },
        )

    cost = 0.0
    i = j = 0
    left_a = atoms_a[0][1] if atoms_a else 0.0
    left_b = atoms_b[0][1] if atoms_b else 0.0
    while i < len(atoms_a) and j < len(atoms_b):
        gap = abs(atoms_a[i][0] - atoms_b[j][0])
        if left_a <= left_b:
            cost += left_a * gap
            left_b -= left_a
            i += 1
            left_a = atoms_a[i][1] if i < len(atoms_a) else 0.0
        else:
            cost += left_b * gap
            left_a -= left_b
            j += 1
            left_b = atoms_b[j][1] if j < len(atoms_b) else 0.0
    return cost
