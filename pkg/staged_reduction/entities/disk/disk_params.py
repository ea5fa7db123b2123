from __future__ import annotations

from typing import Dict, Optional

import numpy as np


class DiskParams:
    def __init__(self, M: float = 1.0, r: float = 1.0, e: float = 0.0, I1: Optional[float] = None,
                 I3: Optional[float] = None, g: float = 9.8) -> None:
        """
        Physical parameters of Euler's disk
        :param M: mass in kg
        :param r: radius in m
        :param e: thickness ratio (thickness = r * e)
        :param I1: moment of inertia about a diameter in kg m^2 (default: 1/4 M r^2)
        :param I3: moment of inertia about the symmetry axis in kg m^2 (default: 1/2 M r^2)
        :param g: gravitational acceleration in m/s^2
        """
        self.M = float(M)
        self.r = float(r)
        self.e = float(e)
        self.I1 = 0.25 * self.M * self.r ** 2 if I1 is None else float(I1)
        self.I3 = 0.5 * self.M * self.r ** 2 if I3 is None else float(I3)
        self.g = float(g)
        self._validate()

    def _validate(self) -> None:
        values = {"M": self.M, "r": self.r, "e": self.e, "I1": self.I1, "I3": self.I3, "g": self.g}
        for name, value in values.items():
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        for name in ["M", "r", "g", "I1", "I3"]:
            if not values[name] > 0:
                raise ValueError(f"{name} must be positive, got {values[name]}")
        if self.e < 0:
            raise ValueError(f"thickness ratio e must be non-negative, got {self.e}")

    def to_json(self) -> Dict[str, float]:
        return {"M": self.M, "r": self.r, "e": self.e, "I1": self.I1, "I3": self.I3, "g": self.g}

    @staticmethod
    def from_json(params_dict: Dict) -> DiskParams:
        unknown = set(key for key in params_dict if not key.startswith("_")) - {"M", "r", "e", "I1", "I3", "g"}
        if unknown:
            raise ValueError(f"unknown disk parameters {sorted(unknown)}")
        return DiskParams(**{key: value for key, value in params_dict.items() if not key.startswith("_")})

    def __repr__(self):
        return f"DiskParams({', '.join(f'{key}={value}' for key, value in self.to_json().items())})"
