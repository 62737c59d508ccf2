"""
Probability distributions on a truncated copy of the non-negative integers.

A :class:`Dist` holds the masses ``p_0..p_N`` of a distribution supported on
``{0..N}``; mass beyond ``N`` is structurally zero. Distributions are
validated on construction and never renormalized: a mass defect is an error,
not something to repair silently.

The module also builds the canonical distributions used across ginidyn:
Dirac masses, the shifted Bernoulli equilibrium ``p*`` of mean ``mu`` and a
few initial data (uniform, geometric).
"""

import math
from typing import Any
from typing import Sequence

import numpy as np
import numpy.typing as npt

from ginidyn import DEFAULT_TOL_MASS
from ginidyn import DEFAULT_TOL_NEG
from ginidyn import INTEGER_TOL
from ginidyn.helpers import utils
from ginidyn.helpers.exceptions import DistException
from ginidyn.helpers.validation import ValidationScheme

FloatArray = npt.NDArray[np.float64]


class Dist:
    """
    Validated, immutable probability mass function on ``{0..trunc}``.

    :ivar _probs: masses p_0..p_N (read-only array)
    :ivar _tol_mass: accepted deviation of the total mass from 1
    :ivar _tol_neg: entries in [-tol_neg, 0) are stored as exact zeros
    """

    def __init__(
        self,
        probs: Sequence[float] | FloatArray,
        tol_mass: float = DEFAULT_TOL_MASS,
        tol_neg: float = DEFAULT_TOL_NEG,
    ):
        """
        Validate and freeze a mass vector.

        :param probs: masses at states 0..N
        :param tol_mass: accepted deviation of the total mass from 1
        :param tol_neg: magnitude under which negative entries are zeros
        :raises DistException.FormatError: empty, non 1-D or non-finite input
        :raises DistException.NegativeMassError: an entry is below -tol_neg
        :raises DistException.MassDefectError: mass is not 1 within tol_mass

        # noqa: DAR401
        # noqa: DAR402
        """
        arr = np.array(probs, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise DistException.FormatError(
                "A distribution needs at least one entry", dbg_info={"shape": str(arr.shape)}
            )
        if not np.all(np.isfinite(arr)):
            raise DistException.FormatError("Non-finite probability")

        lowest = int(np.argmin(arr))
        if arr[lowest] < -tol_neg:
            raise DistException.NegativeMassError(
                "Negative probability",
                dbg_info={
                    "state": str(lowest),
                    "value": repr(float(arr[lowest])),
                    "tolerance": repr(tol_neg),
                },
            )
        arr[arr < 0.0] = 0.0

        mass = float(arr.sum())
        if abs(mass - 1.0) > tol_mass:
            raise DistException.MassDefectError(mass, tol_mass)

        arr.setflags(write=False)
        self._probs: FloatArray = arr
        self._mass: float = mass
        self._tol_mass: float = tol_mass
        self._tol_neg: float = tol_neg

    @property
    def probs(self) -> FloatArray:
        """Masses p_0..p_N (read-only)."""
        return self._probs

    @property
    def trunc(self) -> int:
        """Largest represented state N."""
        return int(self._probs.size - 1)

    @property
    def mass(self) -> float:
        """Total mass (within tol_mass of 1)."""
        return self._mass

    @property
    def tol_mass(self) -> float:
        """Mass tolerance this distribution was validated with."""
        return self._tol_mass

    @property
    def tol_neg(self) -> float:
        """Negative-entry tolerance this distribution was validated with."""
        return self._tol_neg

    def padded(self, trunc: int) -> FloatArray:
        """
        Return the masses zero-padded up to ``trunc``.

        :param trunc: target truncation, at least the current one
        :raises DistException.TruncationTooSmallError: trunc < self.trunc
        :return: a new writable array of length trunc + 1

        # noqa: DAR401
        # noqa: DAR402
        """
        if trunc < self.trunc:
            raise DistException.TruncationTooSmallError(
                "Cannot pad to a smaller truncation",
                dbg_info={"current": str(self.trunc), "requested": str(trunc)},
            )
        out = np.zeros(trunc + 1, dtype=np.float64)
        out[: self.trunc + 1] = self._probs
        return out

    def with_trunc(self, trunc: int) -> "Dist":
        """Same distribution, represented on ``{0..trunc}``."""
        if trunc == self.trunc:
            return self
        return Dist(self.padded(trunc), tol_mass=self._tol_mass, tol_neg=self._tol_neg)

    def to_json(self) -> dict[str, Any]:
        """Distribution file representation."""
        return {"trunc": self.trunc, "probs": [float(x) for x in self._probs]}

    @classmethod
    def from_json(
        cls,
        content: Any,
        filepath: str = "<inline>",
        tol_mass: float = DEFAULT_TOL_MASS,
        tol_neg: float = DEFAULT_TOL_NEG,
    ) -> "Dist":
        """
        Build a distribution from its file representation.

        :param content: decoded JSON document
        :param filepath: origin, for error reports
        :param tol_mass: mass tolerance
        :param tol_neg: negative-entry tolerance
        :raises DistException.FormatError: len(probs) != trunc + 1
        :return: the validated distribution

        # noqa: DAR401
        # noqa: DAR402
        """
        ValidationScheme("dist").validate(content, filepath)
        if len(content["probs"]) != content["trunc"] + 1:
            raise DistException.FormatError(
                "'probs' must hold trunc + 1 entries",
                dbg_info={
                    "file": filepath,
                    "trunc": str(content["trunc"]),
                    "len(probs)": str(len(content["probs"])),
                },
            )
        return cls(content["probs"], tol_mass=tol_mass, tol_neg=tol_neg)

    def __repr__(self) -> str:
        """Short representation."""
        return f"Dist(trunc={self.trunc}, probs={np.array2string(self._probs, precision=6)})"


class Cdf:
    """Cumulative distribution values F_0..F_N."""

    def __init__(self, values: FloatArray, tol_mass: float = DEFAULT_TOL_MASS, tol_neg: float = DEFAULT_TOL_NEG):
        """
        Validate and freeze CDF values.

        :param values: F_0..F_N
        :param tol_mass: tolerance on F_N = 1 and on the upper bound
        :param tol_neg: tolerance on monotonicity
        :raises DistException.FormatError: values are not a CDF

        # noqa: DAR401
        # noqa: DAR402
        """
        arr = np.array(values, dtype=np.float64)
        if (
            arr.ndim != 1
            or arr.size == 0
            or np.any(arr < -tol_neg)
            or np.any(arr > 1.0 + tol_mass)
            or np.any(np.diff(arr) < -tol_neg)
            or abs(arr[-1] - 1.0) > tol_mass
        ):
            raise DistException.FormatError("Values are not a cumulative distribution function")
        arr.setflags(write=False)
        self._values: FloatArray = arr

    @property
    def values(self) -> FloatArray:
        """F_0..F_N (read-only)."""
        return self._values


def make_dist(
    weights: Sequence[float] | FloatArray,
    tol_mass: float = DEFAULT_TOL_MASS,
    tol_neg: float = DEFAULT_TOL_NEG,
) -> Dist:
    """
    Validate weights as a distribution. No renormalization happens.

    :param weights: masses at states 0..N
    :param tol_mass: accepted deviation of the total mass from 1
    :param tol_neg: magnitude under which negative entries are zeros
    :return: the validated distribution
    """
    return Dist(weights, tol_mass=tol_mass, tol_neg=tol_neg)


def mean(d: Dist) -> float:
    """Mean value sum(n p_n)."""
    return float(np.dot(np.arange(d.trunc + 1, dtype=np.float64), d.probs))


def cdf(d: Dist) -> Cdf:
    """Partial sums F_n = sum_{m <= n} p_m."""
    return Cdf(np.cumsum(d.probs), tol_mass=d.tol_mass, tol_neg=d.tol_neg)


def survival(d: Dist) -> FloatArray:
    """
    Tail sums S_n = sum_{m > n} p_m, for n = 0..N.

    Summed from the tail rather than as 1 - F_n so that small tails near an
    oligarchy state keep their relative precision.

    :param d: the distribution
    :return: S_0..S_N (S_N = 0)
    """
    out = np.zeros(d.trunc + 1, dtype=np.float64)
    out[:-1] = np.cumsum(d.probs[::-1])[::-1][1:]
    return out


def integer_part(mu: float) -> int:
    """floor(mu), with means within INTEGER_TOL of an integer snapped to it."""
    nearest = round(mu)
    if abs(mu - nearest) < INTEGER_TOL:
        return int(nearest)
    return int(math.floor(mu))


def is_integer_mean(mu: float) -> bool:
    """Whether mu is handled as an integer (|mu - round(mu)| < INTEGER_TOL)."""
    return abs(mu - round(mu)) < INTEGER_TOL


def dirac(n: int, trunc: int) -> Dist:
    """
    Unit mass at n, on {0..trunc}.

    :param n: the atom
    :param trunc: largest represented state
    :raises DistException.OutOfRangeError: n outside {0..trunc}
    :return: the Dirac distribution

    # noqa: DAR401
    # noqa: DAR402
    """
    if not 0 <= n <= trunc:
        raise DistException.OutOfRangeError(
            "Dirac atom outside the truncation", dbg_info={"n": str(n), "trunc": str(trunc)}
        )
    probs = np.zeros(trunc + 1, dtype=np.float64)
    probs[n] = 1.0
    return Dist(probs)


def shifted_bernoulli(mu: float, trunc: int) -> Dist:
    """
    Two-point equilibrium p* on {floor(mu), floor(mu)+1} with mean mu.

    :param mu: the mean, >= 0
    :param trunc: largest represented state, >= floor(mu) + 1
    :raises DistException.OutOfRangeError: mu < 0
    :raises DistException.TruncationTooSmallError: trunc < floor(mu) + 1
    :return: p*, a Dirac mass when mu is an integer

    # noqa: DAR401
    # noqa: DAR402
    """
    if mu < 0:
        raise DistException.OutOfRangeError("Negative mean", dbg_info={"mu": repr(mu)})
    low = integer_part(mu)
    if trunc < low + 1:
        raise DistException.TruncationTooSmallError(
            "Truncation too small for the equilibrium",
            help_msg="The equilibrium needs trunc >= floor(mu) + 1",
            dbg_info={"mu": repr(mu), "trunc": str(trunc)},
        )
    frac = min(max(mu - low, 0.0), 1.0)
    probs = np.zeros(trunc + 1, dtype=np.float64)
    probs[low] = 1.0 - frac
    probs[low + 1] = frac
    return Dist(probs)


def gini_equilibrium_value(mu: float) -> float:
    """
    Gini index of the shifted Bernoulli equilibrium of mean mu.

    (1/mu) (1 - mu + floor(mu)) (mu - floor(mu)) for non-integer mu, 0 for
    integer mu and for mu = 0 (the 1/mu prefactor is never evaluated there).

    :param mu: the mean, >= 0
    :raises DistException.OutOfRangeError: mu < 0
    :return: G[p*]

    # noqa: DAR401
    # noqa: DAR402
    """
    if mu < 0:
        raise DistException.OutOfRangeError("Negative mean", dbg_info={"mu": repr(mu)})
    if mu == 0 or is_integer_mean(mu):
        return 0.0
    frac = mu - math.floor(mu)
    return (1.0 - frac) * frac / mu


def uniform(trunc: int) -> Dist:
    """Uniform distribution on {0..trunc}."""
    return Dist(np.full(trunc + 1, 1.0 / (trunc + 1)))


def geometric(mean_value: float, trunc: int) -> Dist:
    """
    Geometric-like datum p_n proportional to r^n, r = m / (1 + m), on {0..trunc}.

    Normalized on the truncation at construction time; its mean equals
    ``mean_value`` up to the (exponentially small) truncated tail.

    :param mean_value: target mean m >= 0
    :param trunc: largest represented state
    :raises DistException.OutOfRangeError: negative mean
    :return: the datum

    # noqa: DAR401
    # noqa: DAR402
    """
    if mean_value < 0:
        raise DistException.OutOfRangeError("Negative mean", dbg_info={"mean": repr(mean_value)})
    if mean_value == 0:
        return dirac(0, trunc)
    ratio = mean_value / (1.0 + mean_value)
    weights = ratio ** np.arange(trunc + 1, dtype=np.float64)
    return Dist(weights / weights.sum())


def load_dist(
    path: str, tol_mass: float = DEFAULT_TOL_MASS, tol_neg: float = DEFAULT_TOL_NEG
) -> Dist:
    """Read and validate a distribution file."""
    return Dist.from_json(utils.read_json(path), path, tol_mass=tol_mass, tol_neg=tol_neg)


def save_dist(d: Dist, path: str) -> None:
    """Write a distribution file (atomically)."""
    utils.write_json(path, d.to_json())
