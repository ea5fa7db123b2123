from __future__ import annotations

from typing import Dict, Optional

DEFAULT_TOLERANCES = {"max_dev": 10**(-6), "max_constraint_residual": 10**(-8), "max_energy_drift": 10**(-6)}


class ComparisonSummary:
    def __init__(self, scenario: str, max_dev: float, max_constraint_residual: float, max_energy_drift: float,
                 tolerances: Optional[Dict[str, float]] = None) -> None:
        """
        Deviation between a reduced simulation and the constrained full-space simulation of the same motion
        :param scenario: name of the compared system
        :param max_dev: largest deviation of a reduced state component over all samples
        :param max_constraint_residual: largest violation of the constraint along the full-space trajectory
        :param max_energy_drift: largest relative energy change along either trajectory
        :param tolerances: thresholds per quantity (missing entries take the defaults)
        """
        self.scenario = str(scenario)
        self.max_dev = float(max_dev)
        self.max_constraint_residual = float(max_constraint_residual)
        self.max_energy_drift = float(max_energy_drift)
        self.tolerances = dict(DEFAULT_TOLERANCES)
        if tolerances is not None:
            self.tolerances.update({key: float(value) for key, value in tolerances.items()})
        self._validate()

    def _validate(self) -> None:
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ValueError(f"unknown tolerances {sorted(unknown)}")
        if any(not tolerance > 0 for tolerance in self.tolerances.values()):
            raise ValueError(f"tolerances must be positive, got {self.tolerances}")

    def values(self) -> Dict[str, float]:
        return {"max_dev": self.max_dev, "max_constraint_residual": self.max_constraint_residual,
                "max_energy_drift": self.max_energy_drift}

    @property
    def passed(self) -> bool:
        return all(value <= self.tolerances[key] for key, value in self.values().items())

    def to_json(self) -> Dict:
        return {"scenario": self.scenario, **self.values(), "tolerances": dict(self.tolerances),
                "passed": self.passed}

    @staticmethod
    def from_json(json_dict: Dict) -> ComparisonSummary:
        return ComparisonSummary(scenario=json_dict["scenario"], max_dev=json_dict["max_dev"],
                                 max_constraint_residual=json_dict["max_constraint_residual"],
                                 max_energy_drift=json_dict["max_energy_drift"],
                                 tolerances=json_dict.get("tolerances"))

    def __repr__(self):
        return f"ComparisonSummary({self.to_json()})"
