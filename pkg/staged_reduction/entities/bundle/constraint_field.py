from __future__ import annotations

from typing import Callable, List, Optional

import numpy as np

from staged_reduction.common.errors import StructuralError
from staged_reduction.common.finite_differences import directional_derivative, partial_derivatives

RANK_TOLERANCE = 10**(-12)


class ConstraintField:
    def __init__(self, alg_dim: int, rank: int, shape_dim: int, basis: Callable[[np.ndarray], np.ndarray],
                 basis_partials: Optional[Callable[[np.ndarray], List[np.ndarray]]] = None,
                 fd_step: Optional[float] = None) -> None:
        """
        Fiberwise constraint xi in S(x) on the algebra part of the velocity.
        :param alg_dim: dimension of the Lie algebra
        :param rank: dimension s of S(x)
        :param shape_dim: dimension of the shape space
        :param basis: x -> matrix of shape (alg_dim, rank) whose columns span S(x)
        :param basis_partials: optional analytic derivatives x -> [dS/dx_0, ...]
        :param fd_step: base finite-difference step used when basis_partials is not given
        """
        self.alg_dim = int(alg_dim)
        self.rank = int(rank)
        self.shape_dim = int(shape_dim)
        self._basis = basis
        self._basis_partials = basis_partials
        self.fd_step = fd_step
        self._validate()

    def _validate(self) -> None:
        if not 1 <= self.rank <= self.alg_dim:
            raise ValueError(f"rank must lie between 1 and {self.alg_dim}, got {self.rank}")
        if self.shape_dim < 1:
            raise ValueError(f"shape_dim must be positive, got {self.shape_dim}")

    def basis(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.shape_dim,):
            raise StructuralError(f"x should have shape ({self.shape_dim},), got {x.shape}")
        basis = np.asarray(self._basis(x), dtype=float).reshape(self.alg_dim, self.rank)
        if not np.all(np.isfinite(basis)):
            raise FloatingPointError(f"constraint basis is not finite at x={x}")
        return basis

    def check_rank(self, x: np.ndarray) -> None:
        """ raise StructuralError when the columns of S(x) are dependent """
        singular_values = np.linalg.svd(self.basis(x), compute_uv=False)
        if singular_values[-1] <= RANK_TOLERANCE * max(1.0, singular_values[0]):
            raise StructuralError(f"constraint basis does not have full column rank {self.rank} at x={x}")

    def basis_partials(self, x: np.ndarray) -> List[np.ndarray]:
        if self._basis_partials is not None:
            return [np.asarray(partial, dtype=float).reshape(self.alg_dim, self.rank)
                    for partial in self._basis_partials(np.asarray(x, dtype=float))]
        return partial_derivatives(self.basis, x, base_step=self.fd_step)

    def directional_derivative(self, x: np.ndarray, xdot: np.ndarray) -> np.ndarray:
        """ (D_xdot S)(x) = sum_i xdot_i dS/dx_i """
        return directional_derivative(self.basis_partials(x), xdot)

    def velocity(self, x: np.ndarray, c: np.ndarray) -> np.ndarray:
        """ xi = S(x) c """
        return self.basis(x) @ np.asarray(c, dtype=float)

    def coefficients(self, x: np.ndarray, xi: np.ndarray) -> np.ndarray:
        """ least-squares coordinates of xi in the columns of S(x) """
        return np.linalg.lstsq(self.basis(x), np.asarray(xi, dtype=float), rcond=None)[0]

    def membership_residual(self, x: np.ndarray, xi: np.ndarray) -> float:
        """ norm of the part of xi orthogonal (Euclidean) to S(x) """
        xi = np.asarray(xi, dtype=float)
        orthonormal, _ = np.linalg.qr(self.basis(x))
        return float(np.linalg.norm(xi - orthonormal @ (orthonormal.T @ xi)))

    @staticmethod
    def full(alg_dim: int, shape_dim: int) -> ConstraintField:
        """ S(x) = the whole algebra (no constraint) """
        identity = np.eye(alg_dim)
        return ConstraintField(alg_dim=alg_dim, rank=alg_dim, shape_dim=shape_dim, basis=lambda x: identity,
                               basis_partials=lambda x: [np.zeros((alg_dim, alg_dim))] * shape_dim)

    @staticmethod
    def constant(basis: np.ndarray, shape_dim: int) -> ConstraintField:
        """ the same subspace at every shape point """
        basis = np.asarray(basis, dtype=float)
        if basis.ndim != 2:
            raise StructuralError(f"constraint basis should be a matrix, got shape {basis.shape}")
        return ConstraintField(alg_dim=basis.shape[0], rank=basis.shape[1], shape_dim=shape_dim,
                               basis=lambda x: basis, basis_partials=lambda x: [np.zeros_like(basis)] * shape_dim)

    def __repr__(self):
        return f"ConstraintField(alg_dim={self.alg_dim}, rank={self.rank}, shape_dim={self.shape_dim})"
