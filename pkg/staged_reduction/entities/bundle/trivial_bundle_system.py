from __future__ import annotations

from typing import Optional

import numpy as np

from staged_reduction.common.errors import StructuralError
from staged_reduction.entities.bundle.connection_field import ConnectionField
from staged_reduction.entities.bundle.constraint_field import ConstraintField
from staged_reduction.entities.bundle.local_state import LocalState
from staged_reduction.entities.bundle.reduced_lagrangian_local import ReducedLagrangianLocal
from staged_reduction.entities.stages.staged_structure import StagedStructure


class TrivialBundleSystem:
    def __init__(self, name: str, staged: StagedStructure, connection: ConnectionField,
                 lagrangian: ReducedLagrangianLocal, constraint_field: ConstraintField, shape_lower: np.ndarray,
                 shape_upper: np.ndarray, initial_state: Optional[LocalState] = None, description: str = "") -> None:
        """
        Mechanical system on Q = X x G, described in the chart given by an open box of shape coordinates
        :param name: name under which the system is registered
        :param staged: Lie algebra of G with its chain of ideals and invariant metric
        :param connection: principal connection A(x)
        :param lagrangian: reduced Lagrangian l(x, xdot, xi) in the variables of the connection
        :param constraint_field: constraint xi in S(x)
        :param shape_lower: lower corner of the chart (may contain -inf)
        :param shape_upper: upper corner of the chart (may contain inf)
        :param initial_state: default initial data
        :param description: human readable description
        """
        self.name = name
        self.staged = staged
        self.connection = connection
        self.lagrangian = lagrangian
        self.constraint_field = constraint_field
        self.shape_lower = np.array(shape_lower, dtype=float)
        self.shape_upper = np.array(shape_upper, dtype=float)
        self.initial_state = initial_state
        self.description = description
        self._validate()

    def _validate(self) -> None:
        shape_dim = self.connection.shape_dim
        alg_dim = self.staged.dim
        if self.connection.alg_dim != alg_dim or self.lagrangian.alg_dim != alg_dim or \
                self.constraint_field.alg_dim != alg_dim:
            raise StructuralError(f"system '{self.name}': algebra dimensions of connection, Lagrangian and "
                                  f"constraint do not all equal {alg_dim}")
        if self.lagrangian.shape_dim != shape_dim or self.constraint_field.shape_dim != shape_dim:
            raise StructuralError(f"system '{self.name}': shape dimensions do not all equal {shape_dim}")
        if self.shape_lower.shape != (shape_dim,) or self.shape_upper.shape != (shape_dim,):
            raise StructuralError(f"system '{self.name}': chart corners should have {shape_dim} components")
        if np.any(self.shape_lower >= self.shape_upper):
            raise ValueError(f"system '{self.name}': empty chart {self.shape_lower}, {self.shape_upper}")
        if self.initial_state is not None:
            self.check_state(self.initial_state)

    @property
    def shape_dim(self) -> int:
        return self.connection.shape_dim

    @property
    def rank(self) -> int:
        return self.constraint_field.rank

    def check_state(self, state: LocalState) -> None:
        """
        Check the dimensions of a state and the Lagrangian and constraint at its shape point
        :raises StructuralError: on a dimension mismatch or when S(x) does not have full column rank
        :raises InvariantViolation: when K(x) is not symmetric positive definite
        """
        if state.x.shape != (self.shape_dim,) or state.c.shape != (self.rank,):
            raise StructuralError(f"system '{self.name}' expects {self.shape_dim} shape coordinates and "
                                  f"{self.rank} constraint coordinates")
        self.lagrangian.check_kinetic_matrix(state.x)
        self.constraint_field.check_rank(state.x)

    def inside_chart(self, x: np.ndarray) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x > self.shape_lower) and np.all(x < self.shape_upper))

    def xi(self, state: LocalState) -> np.ndarray:
        return self.constraint_field.velocity(state.x, state.c)

    def energy(self, state: LocalState) -> float:
        return self.lagrangian.energy(state.x, state.xdot, self.xi(state))

    def __repr__(self):
        return f"TrivialBundleSystem(name='{self.name}', shape_dim={self.shape_dim}, alg_dim={self.staged.dim})"
