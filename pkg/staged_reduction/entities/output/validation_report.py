from __future__ import annotations

from typing import Dict, Optional, Type


class ValidationReport:
    def __init__(self, name: str, residual: float, tolerance: float, details: Optional[Dict[str, float]] = None):
        """
        Outcome of one structural check (antisymmetry, Jacobi identity, ideal condition, bracket equivalence, ...)
        :param name: name of the check
        :param residual: largest residual found by the check
        :param tolerance: the check passes iff residual <= tolerance
        :param details: optional sub-residuals (for example one entry per stage)
        """
        self.name = str(name)
        self.residual = float(residual)
        self.tolerance = float(tolerance)
        self.details = dict(details) if details is not None else {}

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def raise_if_failed(self, exception_type: Type[Exception]) -> None:
        """ raise exception_type with a readable message if the check did not pass """
        if not self.passed:
            raise exception_type(f"{self.name} failed: residual {self.residual:.3e} exceeds {self.tolerance:.1e}")

    def to_json(self) -> Dict:
        return {"name": self.name, "residual": self.residual, "tolerance": self.tolerance, "passed": self.passed,
                "details": dict(self.details)}

    @classmethod
    def from_json(cls, json_dict: Dict) -> ValidationReport:
        return cls(name=json_dict["name"], residual=json_dict["residual"], tolerance=json_dict["tolerance"],
                   details=json_dict.get("details"))

    def __repr__(self):
        status = "pass" if self.passed else "FAIL"
        return f"{self.name}: {status} (residual={self.residual:.3e}, tolerance={self.tolerance:.1e})"
