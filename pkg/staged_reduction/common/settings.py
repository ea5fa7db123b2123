import os

import numpy as np

from staged_reduction.common.errors import ConfigError

FD_STEP_ENV_VAR = "STAGED_REDUCTION_FD_STEP"
DEFAULT_FD_STEP = 10**(-6)


class Settings:
    """
    settings retrieved from environment variables
    """
    def __init__(self):
        # read at construction so that tests (and users) can change the environment between runs
        self._fd_step = os.environ.get(FD_STEP_ENV_VAR)

    @property
    def fd_step(self) -> float:
        """base step of the central finite differences used for x-derivatives"""
        if self._fd_step is None or self._fd_step.strip() == "":
            return DEFAULT_FD_STEP
        try:
            step = float(self._fd_step)
        except ValueError:
            raise ConfigError(f"environment variable {FD_STEP_ENV_VAR}='{self._fd_step}' is not a number")
        if not step > 0 or not np.isfinite(step):
            raise ConfigError(f"environment variable {FD_STEP_ENV_VAR} must be a positive number, got {step}")
        return step


def finite_difference_steps(x: np.ndarray, base_step: float = None) -> np.ndarray:
    """
    Componentwise central-difference steps h_i = base_step * max(1, |x_i|).
    :param x: point at which derivatives are taken
    :param base_step: explicit base step; if None the environment setting (or the default 1e-6) is used
    :return: array of steps with the shape of x
    """
    if base_step is None:
        base_step = Settings().fd_step
    return float(base_step) * np.maximum(1.0, np.abs(np.asarray(x, dtype=float)))
