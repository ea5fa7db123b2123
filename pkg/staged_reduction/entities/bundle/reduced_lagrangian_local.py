from __future__ import annotations

from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.linalg import cho_factor, LinAlgError

from staged_reduction.common.errors import InvariantViolation, StructuralError
from staged_reduction.common.finite_differences import partial_derivatives
from staged_reduction.entities.bundle.connection_field import ConnectionField

SYMMETRY_TOLERANCE = 10**(-12)


class ReducedLagrangianLocal:
    """
    Reduced Lagrangian on the trivial bundle in the variables (x, xdot, xi) of a connection:
        l(x, xdot, xi) = 1/2 (xdot, xi)^T K(x) (xdot, xi) - V(x)
    """
    def __init__(self, shape_dim: int, alg_dim: int, kinetic_matrix: Callable[[np.ndarray], np.ndarray],
                 potential: Callable[[np.ndarray], float],
                 kinetic_partials: Optional[Callable[[np.ndarray], List[np.ndarray]]] = None,
                 potential_gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None,
                 fd_step: Optional[float] = None) -> None:
        """
        :param shape_dim: dimension of the shape space
        :param alg_dim: dimension of the Lie algebra
        :param kinetic_matrix: x -> symmetric positive definite K(x) of size shape_dim + alg_dim
        :param potential: x -> V(x)
        :param kinetic_partials: optional analytic derivatives x -> [dK/dx_0, ...]
        :param potential_gradient: optional analytic gradient x -> dV/dx
        :param fd_step: base finite-difference step for the derivatives that are not given
        """
        self.shape_dim = int(shape_dim)
        self.alg_dim = int(alg_dim)
        self._kinetic_matrix = kinetic_matrix
        self._potential = potential
        self._kinetic_partials = kinetic_partials
        self._potential_gradient = potential_gradient
        self.fd_step = fd_step
        if self.shape_dim < 1 or self.alg_dim < 1:
            raise ValueError(f"dimensions must be positive, got shape_dim={self.shape_dim}, alg_dim={self.alg_dim}")

    @property
    def size(self) -> int:
        return self.shape_dim + self.alg_dim

    def _check_shape_vector(self, x: np.ndarray, name: str = "x") -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.shape_dim,):
            raise StructuralError(f"{name} should have shape ({self.shape_dim},), got {x.shape}")
        return x

    def _velocity(self, xdot: np.ndarray, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        if xi.shape != (self.alg_dim,):
            raise StructuralError(f"xi should have shape ({self.alg_dim},), got {xi.shape}")
        return np.concatenate([self._check_shape_vector(xdot, "xdot"), xi])

    def kinetic_matrix(self, x: np.ndarray) -> np.ndarray:
        x = self._check_shape_vector(x)
        matrix = np.asarray(self._kinetic_matrix(x), dtype=float)
        if matrix.shape != (self.size, self.size):
            raise StructuralError(f"K(x) should have shape {(self.size, self.size)}, got {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise FloatingPointError(f"K is not finite at x={x}")
        return matrix

    def check_kinetic_matrix(self, x: np.ndarray) -> None:
        """ raise InvariantViolation when K(x) is not symmetric positive definite """
        matrix = self.kinetic_matrix(x)
        scale = max(1.0, float(np.max(np.abs(matrix))))
        if np.max(np.abs(matrix - matrix.T)) > SYMMETRY_TOLERANCE * scale:
            raise InvariantViolation(f"K is not symmetric at x={x}")
        try:
            cho_factor(matrix)
        except LinAlgError:
            raise InvariantViolation(f"K is not positive definite at x={x}")

    def potential(self, x: np.ndarray) -> float:
        return float(self._potential(self._check_shape_vector(x)))

    def kinetic_partials(self, x: np.ndarray) -> List[np.ndarray]:
        x = self._check_shape_vector(x)
        if self._kinetic_partials is not None:
            return [np.asarray(partial, dtype=float) for partial in self._kinetic_partials(x)]
        return partial_derivatives(self.kinetic_matrix, x, base_step=self.fd_step)

    def potential_gradient(self, x: np.ndarray) -> np.ndarray:
        x = self._check_shape_vector(x)
        if self._potential_gradient is not None:
            return np.asarray(self._potential_gradient(x), dtype=float)
        return np.array(partial_derivatives(self.potential, x, base_step=self.fd_step), dtype=float)

    def value(self, x: np.ndarray, xdot: np.ndarray, xi: np.ndarray) -> float:
        z = self._velocity(xdot, xi)
        return 0.5 * float(z @ self.kinetic_matrix(x) @ z) - self.potential(x)

    def energy(self, x: np.ndarray, xdot: np.ndarray, xi: np.ndarray) -> float:
        """ 1/2 (xdot, xi)^T K(x) (xdot, xi) + V(x) """
        z = self._velocity(xdot, xi)
        return 0.5 * float(z @ self.kinetic_matrix(x) @ z) + self.potential(x)

    def fiber_derivatives(self, x: np.ndarray, xdot: np.ndarray, xi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """ (dl/dxdot, dl/dxi) """
        momentum = self.kinetic_matrix(x) @ self._velocity(xdot, xi)
        return momentum[:self.shape_dim], momentum[self.shape_dim:]

    def shape_gradient(self, x: np.ndarray, xdot: np.ndarray, xi: np.ndarray) -> np.ndarray:
        """ dl/dx at fixed (xdot, xi) """
        z = self._velocity(xdot, xi)
        kinetic = np.array([0.5 * z @ partial @ z for partial in self.kinetic_partials(x)])
        return kinetic - self.potential_gradient(x)

    def with_connection(self, new_connection: ConnectionField,
                        current_connection: Optional[ConnectionField] = None) -> ReducedLagrangianLocal:
        """
        The same Lagrangian written in the variables of another connection. The body velocity w = g^{-1} gdot is
        xi - A(x) xdot in both descriptions, so xi_current = xi_new + (A_current(x) - A_new(x)) xdot.
        :param new_connection: connection of the returned Lagrangian
        :param current_connection: connection of this Lagrangian (None: the trivial connection, xi = w)
        :return: Lagrangian with K_new(x) = T(x)^T K(x) T(x); its x-derivatives use finite differences
        """
        if new_connection.shape_dim != self.shape_dim or new_connection.alg_dim != self.alg_dim:
            raise StructuralError("connection dimensions do not match the Lagrangian")

        def transformation(x: np.ndarray) -> np.ndarray:
            difference = -new_connection.matrix(x)
            if current_connection is not None:
                difference = difference + current_connection.matrix(x)
            matrix = np.eye(self.size)
            matrix[self.shape_dim:, :self.shape_dim] = difference
            return matrix

        def kinetic_matrix(x: np.ndarray) -> np.ndarray:
            matrix = transformation(x)
            return matrix.T @ self.kinetic_matrix(x) @ matrix

        return ReducedLagrangianLocal(shape_dim=self.shape_dim, alg_dim=self.alg_dim, kinetic_matrix=kinetic_matrix,
                                      potential=self._potential, potential_gradient=self._potential_gradient,
                                      fd_step=self.fd_step)

    def __repr__(self):
        return f"ReducedLagrangianLocal(shape_dim={self.shape_dim}, alg_dim={self.alg_dim})"
