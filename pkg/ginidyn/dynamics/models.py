"""
Right-hand sides of the three mean-field systems ``p' = Q[p]``.

Each operator works on the masses ``p_0..p_N`` as a numpy array and is
written in flux form: ``p'_n = (inflow into n) - (outflow from n)`` with one
downward and one upward jump per state. The truncated state space removes
the upward jump out of ``N``, so the derivative always sums to zero and the
only conservation defect is the mean, bounded by ``rate * p_N``.
"""

import enum
from typing import Any
from typing import Callable

import numpy as np
from typing_extensions import Self

from ginidyn.core.dist import Dist
from ginidyn.core.dist import FloatArray
from ginidyn.helpers.exceptions import DynamicsException

Rhs = Callable[[FloatArray], FloatArray]


class ModelKind(enum.Enum):
    """
    Supported mean-field systems.

    :var RICH_BIASED: money exchange where poorer agents give to richer ones
    :var PERSUASION_POLARIZATION: opinion dynamics on {0..2k}
    :var STICKY_DISPERSION: dispersion on a complete graph, parameter mu
    """

    RICH_BIASED = "rich_biased"
    PERSUASION_POLARIZATION = "persuasion_polarization"
    STICKY_DISPERSION = "sticky_dispersion"

    def __str__(self) -> str:
        """Label used in configuration files."""
        return self.value

    @classmethod
    def fromstr(cls, label: str) -> Self:
        """
        Convert a configuration label (case insensitive) to a ModelKind.

        :param label: e.g. "sticky_dispersion"
        :raises DynamicsException.InvalidModelError: unknown label
        :return: the model kind

        # noqa: DAR401
        # noqa: DAR402
        """
        for kind in cls:
            if kind.value == label.lower():
                return kind
        raise DynamicsException.InvalidModelError(
            "Unknown model",
            help_msg="Choose among: " + ", ".join(cls.all_kinds()),
            dbg_info={"model": label},
        )

    @classmethod
    def all_kinds(cls) -> list[str]:
        """All configuration labels."""
        return [k.value for k in cls]


def _flux_balance(p: FloatArray, down: FloatArray, up: FloatArray) -> FloatArray:
    """
    Assemble p' from per-state jump fluxes.

    :param p: masses, only its shape is used
    :param down: flux n -> n-1 leaving each state (down[0] must be 0)
    :param up: flux n -> n+1 leaving each state (up[N] must be 0)
    :return: the derivative
    """
    out = -(down + up)
    out[:-1] += down[1:]
    out[1:] += up[:-1]
    return out


def rich_biased_flow(p: FloatArray) -> FloatArray:
    """
    Rich-biased exchange: a dollar leaves state n at rate 1/n and is received
    at rate w = sum_{n >= 1} p_n / n.
    """
    states = np.arange(p.size, dtype=np.float64)
    down = np.zeros_like(p)
    down[1:] = p[1:] / states[1:]
    w_bar = float(down.sum())
    up = w_bar * p
    up[-1] = 0.0
    return _flux_balance(p, down, up)


def rich_biased_receive_rate(p: FloatArray) -> float:
    """w = sum_{n >= 1} p_n / n, the rate of upward jumps."""
    states = np.arange(1, p.size, dtype=np.float64)
    return float((p[1:] / states).sum())


def persuasion_polarization_flow(p: FloatArray) -> FloatArray:
    """
    Persuasion-polarization on {0..2k}: an agent at n moves one step towards
    whoever it meets, up at rate ``sum_{j > n} p_j`` and down at rate
    ``sum_{j < n} p_j``.

    On the simplex this is
    ``p'_n = p_{n-1} sum_{j >= n} p_j + p_{n+1} sum_{j <= n} p_j - p_n (1 - p_n)``;
    the flux form keeps ``sum p'`` at exactly zero off the simplex too.
    """
    zero = np.zeros(1)
    below = np.concatenate((zero, np.cumsum(p)[:-1]))
    above = np.concatenate((np.cumsum(p[::-1])[::-1][1:], zero))
    return _flux_balance(p, down=p * below, up=p * above)


def sticky_drift(p: FloatArray, mu: float) -> float:
    """a = mu - 1 + p_0, the upward jump rate of the sticky dispersion."""
    return mu - 1.0 + float(p[0])


def sticky_dispersion_flow(p: FloatArray, mu: float) -> FloatArray:
    """
    Sticky dispersion: upward jumps at rate a = mu - 1 + p_0 and downward
    jumps out of n at rate n - 1.
    """
    a = sticky_drift(p, mu)
    states = np.arange(p.size, dtype=np.float64)
    down = np.zeros_like(p)
    down[1:] = (states[1:] - 1.0) * p[1:]
    up = a * p
    up[-1] = 0.0
    return _flux_balance(p, down, up)


def rhs_rich_biased(d: Dist) -> FloatArray:
    """Derivative of the rich-biased system at d."""
    return rich_biased_flow(d.probs)


def rhs_ipp(d: Dist, k: int) -> FloatArray:
    """
    Derivative of the persuasion-polarization system at d.

    :param d: a distribution on {0..2k}
    :param k: half-width of the opinion space
    :raises DynamicsException.TruncationMismatchError: d.trunc != 2k
    :return: p'

    # noqa: DAR401
    # noqa: DAR402
    """
    if d.trunc != 2 * k:
        raise DynamicsException.TruncationMismatchError(
            "Persuasion-polarization lives on {0..2k}",
            dbg_info={"k": str(k), "trunc": str(d.trunc)},
        )
    return persuasion_polarization_flow(d.probs)


def rhs_sticky(d: Dist, mu: float) -> FloatArray:
    """Derivative of the sticky dispersion system of parameter mu at d."""
    return sticky_dispersion_flow(d.probs, mu)


class ModelSpec:
    """
    A mean-field system and its parameters.

    :ivar kind: which system
    :ivar k: half-width, persuasion-polarization only
    :ivar mu: mean parameter, sticky dispersion only
    """

    def __init__(self, kind: ModelKind, k: int | None = None, mu: float | None = None):
        """
        Check parameters against the model.

        :param kind: the system
        :param k: positive integer, required by persuasion-polarization
        :param mu: positive real, required by sticky dispersion
        :raises DynamicsException.InvalidModelError: missing or invalid parameter

        # noqa: DAR401
        # noqa: DAR402
        """
        self.kind = kind
        self.k = k
        self.mu = mu
        if kind == ModelKind.PERSUASION_POLARIZATION and (k is None or k < 1):
            raise DynamicsException.InvalidModelError(
                "Persuasion-polarization needs a positive integer 'k'", dbg_info={"k": str(k)}
            )
        if kind == ModelKind.STICKY_DISPERSION and (mu is None or not mu > 0):
            raise DynamicsException.InvalidModelError(
                "Sticky dispersion needs a positive 'mu'", dbg_info={"mu": str(mu)}
            )

    @classmethod
    def from_dict(cls, content: dict[str, Any]) -> Self:
        """Build from the 'model' section of a configuration."""
        return cls(ModelKind.fromstr(content["kind"]), k=content.get("k"), mu=content.get("mu"))

    def to_dict(self) -> dict[str, Any]:
        """Configuration section describing this model."""
        out: dict[str, Any] = {"kind": str(self.kind)}
        if self.k is not None:
            out["k"] = self.k
        if self.mu is not None:
            out["mu"] = self.mu
        return out

    def check_trunc(self, trunc: int) -> None:
        """
        Validate a truncation for this model.

        :param trunc: largest represented state
        :raises DynamicsException.TruncationMismatchError: trunc != 2k for
            persuasion-polarization

        # noqa: DAR401
        # noqa: DAR402
        """
        if self.kind == ModelKind.PERSUASION_POLARIZATION and trunc != 2 * (self.k or 0):
            raise DynamicsException.TruncationMismatchError(
                "Persuasion-polarization lives on {0..2k}",
                help_msg="Set 'sim.trunc' to twice 'model.k'.",
                dbg_info={"k": str(self.k), "trunc": str(trunc)},
            )

    def rhs(self) -> Rhs:
        """Array-level right-hand side of this model."""
        if self.kind == ModelKind.RICH_BIASED:
            return rich_biased_flow
        if self.kind == ModelKind.PERSUASION_POLARIZATION:
            return persuasion_polarization_flow
        mu = float(self.mu)  # type: ignore[arg-type]
        return lambda p: sticky_dispersion_flow(p, mu)

    def flux_defect_rate(self, p: FloatArray) -> float:
        """
        Rate multiplying p_N in the mean defect of the truncated system.

        :param p: current masses
        :return: w for rich-biased, |a| for sticky dispersion, 0 otherwise
        """
        if self.kind == ModelKind.RICH_BIASED:
            return rich_biased_receive_rate(p)
        if self.kind == ModelKind.STICKY_DISPERSION:
            return abs(sticky_drift(p, float(self.mu)))  # type: ignore[arg-type]
        return 0.0

    def __repr__(self) -> str:
        """Short representation."""
        return f"ModelSpec({self.to_dict()})"
