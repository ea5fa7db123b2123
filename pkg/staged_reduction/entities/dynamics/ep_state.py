from __future__ import annotations

from typing import Dict

import numpy as np


class EPState:
    def __init__(self, v: np.ndarray, t: float = 0.0) -> None:
        """
        State of the reduced (Lie algebra) dynamics
        :param v: body velocity
        :param t: time in seconds
        """
        self.v = np.array(v, dtype=float)
        self.t = float(t)
        self._validate()

    def _validate(self) -> None:
        if self.v.ndim != 1:
            raise ValueError(f"velocity should be a vector, got shape {self.v.shape}")
        if not np.all(np.isfinite(self.v)) or not np.isfinite(self.t):
            raise ValueError("state must be finite")

    def to_json(self) -> Dict:
        return {"t": self.t, "v": self.v.tolist()}

    @staticmethod
    def from_json(state_dict: Dict) -> EPState:
        return EPState(v=state_dict["v"], t=state_dict.get("t", 0.0))

    def __repr__(self):
        return f"EPState(t={self.t}, v={self.v.tolist()})"
