from __future__ import annotations

import logging
from typing import Callable, List, Optional

import numpy as np

from staged_reduction.common.errors import ChartBoundaryError, IntegrationAborted, SingularSystemError

STEP_COUNT_TOLERANCE = 10**(-9)


class Trajectory:
    def __init__(self, times: List[float], states: List[np.ndarray]) -> None:
        """
        Sampled solution of an ODE
        :param times: sample times, increasing
        :param states: state at every sample time
        """
        self.times = np.array(times, dtype=float)
        self.states = np.array(states, dtype=float)
        if self.states.ndim == 1:
            self.states = self.states.reshape(len(self.times), -1)
        self._validate()

    def _validate(self) -> None:
        if len(self.times) != len(self.states):
            raise ValueError(f"{len(self.times)} times given for {len(self.states)} states")
        if len(self.times) > 1 and np.any(np.diff(self.times) <= 0):
            raise ValueError("sample times must be increasing")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1].copy()

    @property
    def final_time(self) -> float:
        return float(self.times[-1])

    def __repr__(self):
        return f"Trajectory(samples={len(self)}, t=[{self.times[0]}, {self.times[-1]}])"


def rk4_step(rhs: Callable[[float, np.ndarray], np.ndarray], t: float, y: np.ndarray, h: float) -> np.ndarray:
    """ one step of the classical 4th-order Runge-Kutta method """
    k1 = rhs(t, y)
    k2 = rhs(t + h / 2, y + h / 2 * k1)
    k3 = rhs(t + h / 2, y + h / 2 * k2)
    k4 = rhs(t + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def integrate_rk4(rhs: Callable[[float, np.ndarray], np.ndarray], y0: np.ndarray, t_end: float, h: float,
                  t0: float = 0.0, inside_domain: Optional[Callable[[np.ndarray], bool]] = None) -> Trajectory:
    """
    Integrate y' = rhs(t, y) with fixed steps of size h from t0 to t_end; when h does not divide the interval the
    last step is shortened so that the trajectory ends exactly at t_end.
    :param rhs: right-hand side rhs(t, y)
    :param y0: initial state
    :param t_end: final time, larger than t0
    :param h: step size, positive
    :param t0: initial time
    :param inside_domain: optional predicate on the state; integration stops with ChartBoundaryError as soon as it
    returns False
    :return: trajectory sampled at every step (including t0)
    :raises IntegrationAborted: when a non-finite state is encountered or the right-hand side cannot be evaluated
    (SingularSystemError, FloatingPointError, LinAlgError)
    """
    h = float(h)
    t0 = float(t0)
    t_end = float(t_end)
    if not h > 0:
        raise ValueError(f"step size should be positive, got {h}")
    if not t_end > t0:
        raise ValueError(f"t_end ({t_end}) should be larger than the initial time ({t0})")

    num_steps = max(1, int(np.ceil((t_end - t0) / h - STEP_COUNT_TOLERANCE)))
    y = np.array(y0, dtype=float)
    times = [t0]
    states = [y.copy()]
    logging.debug(f"integrating from t={t0} to t={t_end} in {num_steps} steps of {h}")
    for step in range(num_steps):
        t = times[-1]
        t_next = t_end if step == num_steps - 1 else t0 + (step + 1) * h
        try:
            with np.errstate(over="ignore", invalid="ignore"):
                y = rk4_step(rhs, t, y, t_next - t)
        except (SingularSystemError, FloatingPointError, np.linalg.LinAlgError) as e:
            logging.error(f"right-hand side failed after t={t}: {e}")
            raise IntegrationAborted(f"right-hand side could not be evaluated ({e})", last_valid_time=t,
                                     trajectory=Trajectory(times, states)) from e
        if not np.all(np.isfinite(y)):
            logging.error(f"non-finite state after t={t}")
            raise IntegrationAborted("non-finite state encountered", last_valid_time=t,
                                     trajectory=Trajectory(times, states))
        if inside_domain is not None and not inside_domain(y):
            logging.error(f"state {y} left the domain after t={t}")
            raise ChartBoundaryError("state left the domain of the chart", last_valid_time=t,
                                     trajectory=Trajectory(times, states))
        times.append(t_next)
        states.append(y.copy())
    return Trajectory(times, states)
