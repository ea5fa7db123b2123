from __future__ import annotations

from typing import Callable, List, Optional

import numpy as np

from staged_reduction.common.errors import StructuralError
from staged_reduction.common.finite_differences import partial_derivatives
from staged_reduction.entities.algebra.lie_algebra import LieAlgebraSpec


class ConnectionField:
    def __init__(self, alg: LieAlgebraSpec, shape_dim: int, matrix: Callable[[np.ndarray], np.ndarray],
                 matrix_partials: Optional[Callable[[np.ndarray], List[np.ndarray]]] = None,
                 fd_step: Optional[float] = None) -> None:
        """
        Principal connection on the trivial bundle X x G in the local form A(x) xdot (linear in xdot).
        :param alg: Lie algebra of G
        :param shape_dim: dimension of the shape space X
        :param matrix: x -> matrix of shape (alg.dim, shape_dim) representing xdot -> A(x) xdot
        :param matrix_partials: optional analytic x-derivatives, x -> [dA/dx_0, ..., dA/dx_{shape_dim-1}]; central
        finite differences are used otherwise
        :param fd_step: base finite-difference step (None: environment setting or default)
        """
        self.alg = alg
        self.shape_dim = int(shape_dim)
        self._matrix = matrix
        self._matrix_partials = matrix_partials
        self.fd_step = fd_step
        if self.shape_dim < 1:
            raise ValueError(f"shape_dim must be positive, got {self.shape_dim}")

    @property
    def alg_dim(self) -> int:
        return self.alg.dim

    def check_shape_vector(self, x: np.ndarray, name: str = "x") -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.shape_dim,):
            raise StructuralError(f"{name} should have shape ({self.shape_dim},), got {x.shape}")
        return x

    def matrix(self, x: np.ndarray) -> np.ndarray:
        x = self.check_shape_vector(x)
        matrix = np.asarray(self._matrix(x), dtype=float).reshape(self.alg_dim, self.shape_dim)
        if not np.all(np.isfinite(matrix)):
            raise FloatingPointError(f"connection is not finite at x={x}")
        return matrix

    def evaluate(self, x: np.ndarray, xdot: np.ndarray) -> np.ndarray:
        """ A(x) xdot """
        return self.matrix(x) @ self.check_shape_vector(xdot, "xdot")

    def matrix_partials(self, x: np.ndarray) -> List[np.ndarray]:
        x = self.check_shape_vector(x)
        if self._matrix_partials is not None:
            return [np.asarray(partial, dtype=float).reshape(self.alg_dim, self.shape_dim)
                    for partial in self._matrix_partials(x)]
        return partial_derivatives(self.matrix, x, base_step=self.fd_step)

    @property
    def has_analytic_partials(self) -> bool:
        return self._matrix_partials is not None

    @staticmethod
    def zero(alg: LieAlgebraSpec, shape_dim: int) -> ConnectionField:
        """ the trivial connection A = 0 """
        return ConnectionField(alg=alg, shape_dim=shape_dim, matrix=lambda x: np.zeros((alg.dim, shape_dim)),
                               matrix_partials=lambda x: [np.zeros((alg.dim, shape_dim))] * shape_dim)

    def __repr__(self):
        return f"ConnectionField(alg={self.alg}, shape_dim={self.shape_dim})"
