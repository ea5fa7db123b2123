from __future__ import annotations

from typing import Dict

import numpy as np


class LocalState:
    def __init__(self, x: np.ndarray, xdot: np.ndarray, c: np.ndarray, t: float = 0.0) -> None:
        """
        State of the reduced dynamics on a trivial bundle
        :param x: shape coordinates
        :param xdot: shape velocity
        :param c: coordinates of xi in the columns of the constraint basis S(x)
        :param t: time in seconds
        """
        self.x = np.array(x, dtype=float)
        self.xdot = np.array(xdot, dtype=float)
        self.c = np.array(c, dtype=float)
        self.t = float(t)
        self._validate()

    def _validate(self) -> None:
        if self.x.ndim != 1 or self.xdot.shape != self.x.shape:
            raise ValueError(f"x and xdot should be vectors of the same length, got shapes {self.x.shape} "
                             f"and {self.xdot.shape}")
        if self.c.ndim != 1:
            raise ValueError(f"c should be a vector, got shape {self.c.shape}")
        for name, value in [("x", self.x), ("xdot", self.xdot), ("c", self.c)]:
            if not np.all(np.isfinite(value)):
                raise ValueError(f"{name} must be finite")
        if not np.isfinite(self.t):
            raise ValueError("t must be finite")

    def to_vector(self) -> np.ndarray:
        """ (x, xdot, c) as the state vector of the integrator """
        return np.concatenate([self.x, self.xdot, self.c])

    @staticmethod
    def from_vector(y: np.ndarray, shape_dim: int, t: float = 0.0) -> LocalState:
        y = np.asarray(y, dtype=float)
        return LocalState(x=y[:shape_dim], xdot=y[shape_dim:2 * shape_dim], c=y[2 * shape_dim:], t=t)

    def to_json(self) -> Dict:
        return {"t": self.t, "x": self.x.tolist(), "xdot": self.xdot.tolist(), "c": self.c.tolist()}

    @staticmethod
    def from_json(state_dict: Dict) -> LocalState:
        return LocalState(x=state_dict["x"], xdot=state_dict["xdot"], c=state_dict["c"], t=state_dict.get("t", 0.0))

    def __repr__(self):
        return f"LocalState(t={self.t}, x={self.x.tolist()}, xdot={self.xdot.tolist()}, c={self.c.tolist()})"
