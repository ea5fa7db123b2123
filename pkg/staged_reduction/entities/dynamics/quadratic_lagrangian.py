from __future__ import annotations

from typing import Dict, List, Union

import numpy as np
from scipy.linalg import cho_factor, cho_solve, LinAlgError

from staged_reduction.common.errors import StructuralError

SYMMETRY_TOLERANCE = 10**(-14)


class QuadraticLagrangian:
    def __init__(self, mass: np.ndarray) -> None:
        """
        Reduced Lagrangian l(v) = 1/2 v^T mass v on the Lie algebra
        :param mass: symmetric positive definite inertia matrix of shape (dim, dim)
        """
        self.mass = np.array(mass, dtype=float)
        self._validate()
        self.mass.setflags(write=False)
        self._factor = cho_factor(self.mass)

    def _validate(self) -> None:
        if self.mass.ndim != 2 or self.mass.shape[0] != self.mass.shape[1]:
            raise StructuralError(f"mass should be a square matrix, got shape {self.mass.shape}")
        if not np.all(np.isfinite(self.mass)):
            raise ValueError("mass matrix must be finite")
        scale = max(1.0, float(np.max(np.abs(self.mass))))
        if np.max(np.abs(self.mass - self.mass.T)) > SYMMETRY_TOLERANCE * scale:
            raise ValueError("mass matrix must be symmetric")
        try:
            cho_factor(self.mass)
        except LinAlgError:
            raise ValueError("mass matrix must be positive definite")

    @property
    def dim(self) -> int:
        return self.mass.shape[0]

    def check_velocity(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,):
            raise StructuralError(f"velocity should have shape ({self.dim},), got {v.shape}")
        return v

    def value(self, v: np.ndarray) -> float:
        """ l(v); for a quadratic Lagrangian this is also the energy """
        v = self.check_velocity(v)
        return 0.5 * float(v @ self.mass @ v)

    def momentum(self, v: np.ndarray) -> np.ndarray:
        """ beta = mass v """
        return self.mass @ self.check_velocity(v)

    def velocity(self, beta: np.ndarray) -> np.ndarray:
        """ inverse of momentum(): solves mass v = beta """
        return cho_solve(self._factor, self.check_velocity(beta))

    @staticmethod
    def identity(dim: int) -> QuadraticLagrangian:
        return QuadraticLagrangian(mass=np.eye(dim))

    def to_json(self) -> List[List[float]]:
        return self.mass.tolist()

    @staticmethod
    def from_json(mass_spec: Union[str, Dict, List[List[float]]], dim: int) -> QuadraticLagrangian:
        """
        Loading the mass from json: the keyword "identity", an object {"diag": [...]} or a dense row-major matrix
        """
        if isinstance(mass_spec, str):
            if mass_spec != "identity":
                raise StructuralError(f"unknown mass keyword '{mass_spec}' (only 'identity' is supported)")
            return QuadraticLagrangian.identity(dim)
        if isinstance(mass_spec, dict):
            if "diag" not in mass_spec:
                raise StructuralError("mass object should have the field 'diag'")
            diagonal = np.array(mass_spec["diag"], dtype=float)
            if diagonal.shape != (dim,):
                raise StructuralError(f"mass diagonal should have {dim} entries, got shape {diagonal.shape}")
            return QuadraticLagrangian(mass=np.diag(diagonal))
        mass = np.array(mass_spec, dtype=float)
        if mass.shape != (dim, dim):
            raise StructuralError(f"mass should be a {dim}x{dim} matrix, got shape {mass.shape}")
        return QuadraticLagrangian(mass=mass)

    def __repr__(self):
        return f"QuadraticLagrangian(dim={self.dim})"
