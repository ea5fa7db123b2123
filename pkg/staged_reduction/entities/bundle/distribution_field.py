from __future__ import annotations

from typing import Callable

import numpy as np

from staged_reduction.common.errors import StructuralError


class DistributionField:
    def __init__(self, shape_dim: int, alg_dim: int, rank: int, basis: Callable[[np.ndarray], np.ndarray]) -> None:
        """
        Constraint distribution D(x) on the velocities (xdot, w) of the trivial bundle, w = g^{-1} gdot.
        :param shape_dim: dimension of the shape space
        :param alg_dim: dimension of the Lie algebra
        :param rank: dimension of D(x)
        :param basis: x -> matrix of shape (shape_dim + alg_dim, rank) whose columns span D(x)
        """
        self.shape_dim = int(shape_dim)
        self.alg_dim = int(alg_dim)
        self.rank = int(rank)
        self._basis = basis
        self._validate()

    def _validate(self) -> None:
        if self.shape_dim < 1 or self.alg_dim < 1:
            raise ValueError(f"dimensions must be positive, got shape_dim={self.shape_dim}, alg_dim={self.alg_dim}")
        if not self.shape_dim < self.rank <= self.shape_dim + self.alg_dim:
            raise StructuralError(f"a distribution with D + V = TQ has rank between {self.shape_dim + 1} and "
                                  f"{self.shape_dim + self.alg_dim}, got {self.rank}")

    def basis(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.shape_dim,):
            raise StructuralError(f"x should have shape ({self.shape_dim},), got {x.shape}")
        basis = np.asarray(self._basis(x), dtype=float).reshape(self.shape_dim + self.alg_dim, self.rank)
        if not np.all(np.isfinite(basis)):
            raise FloatingPointError(f"distribution basis is not finite at x={x}")
        return basis

    def shape_part(self, x: np.ndarray) -> np.ndarray:
        return self.basis(x)[:self.shape_dim]

    def algebra_part(self, x: np.ndarray) -> np.ndarray:
        return self.basis(x)[self.shape_dim:]

    def __repr__(self):
        return f"DistributionField(shape_dim={self.shape_dim}, alg_dim={self.alg_dim}, rank={self.rank})"
