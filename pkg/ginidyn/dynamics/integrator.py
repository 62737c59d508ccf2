"""Fixed-step explicit integrators on distributions."""

import numpy as np

from ginidyn.core.dist import Dist
from ginidyn.core.dist import FloatArray
from ginidyn.dynamics.models import Rhs
from ginidyn.helpers.exceptions import DynamicsException


def _accept(x: FloatArray, d: Dist) -> Dist:
    """
    Validate an updated mass vector against the tolerances of d.

    Entries in [-tol_neg, 0) become zeros, anything lower aborts.

    :param x: the updated masses
    :param d: the state before the step
    :raises DynamicsException.PositivityViolationError: entry below -tol_neg
    :raises DynamicsException.MassDriftError: total mass left 1 +/- tol_mass
    :return: the new state

    # noqa: DAR401
    # noqa: DAR402
    """
    if not np.all(np.isfinite(x)):
        raise DynamicsException.PositivityViolationError(float("nan"), int(np.argmax(~np.isfinite(x))))
    lowest = int(np.argmin(x))
    if x[lowest] < -d.tol_neg:
        raise DynamicsException.PositivityViolationError(float(x[lowest]), lowest)
    x[x < 0.0] = 0.0

    mass = float(x.sum())
    if abs(mass - 1.0) > d.tol_mass:
        raise DynamicsException.MassDriftError(
            "Total mass drifted",
            dbg_info={"mass": repr(mass), "before": repr(d.mass), "tolerance": repr(d.tol_mass)},
        )
    return Dist(x, tol_mass=d.tol_mass, tol_neg=d.tol_neg)


def step_rk4(rhs: Rhs, d: Dist, dt: float) -> Dist:
    """
    One classical four-stage Runge-Kutta step.

    :param rhs: array-level derivative p -> p'
    :param d: current state
    :param dt: time step
    :return: the state at t + dt
    """
    p = d.probs
    k1 = rhs(p)
    k2 = rhs(p + 0.5 * dt * k1)
    k3 = rhs(p + 0.5 * dt * k2)
    k4 = rhs(p + dt * k3)
    return _accept(p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), d)


def step_euler(rhs: Rhs, d: Dist, dt: float) -> Dist:
    """
    One explicit Euler step, used to cross-check the order of step_rk4.

    :param rhs: array-level derivative p -> p'
    :param d: current state
    :param dt: time step
    :return: the state at t + dt
    """
    return _accept(d.probs + dt * rhs(d.probs), d)


STEPPERS = {"rk4": step_rk4, "euler": step_euler}
