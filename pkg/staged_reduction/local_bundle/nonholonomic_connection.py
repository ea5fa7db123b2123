"""
Nonholonomic connection of a constraint distribution D(x) on the velocities (xdot, w) of a trivial bundle. Under the
dimension assumption D(x) + V = R^shape (+) g (the shape part of D spans all shape velocities) the constrained
vertical velocities S(x) = D(x) cap V are nonzero, and the horizontal space of the connection is the K(x)-orthogonal
complement of (0, S(x)) in D(x). In the variables of this connection the constraint reads xi in S(x).
"""
from typing import List, Tuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve, qr

from staged_reduction.common.errors import StructuralError
from staged_reduction.entities.algebra.lie_algebra import LieAlgebraSpec
from staged_reduction.entities.bundle.connection_field import ConnectionField
from staged_reduction.entities.bundle.constraint_field import ConstraintField
from staged_reduction.entities.bundle.distribution_field import DistributionField
from staged_reduction.entities.bundle.reduced_lagrangian_local import ReducedLagrangianLocal

RANK_TOLERANCE = 10**(-10)


def check_dimension_assumption(distribution: DistributionField, x: np.ndarray) -> None:
    """ raise StructuralError when the shape part of D(x) does not span the shape velocities """
    shape_part = distribution.shape_part(x)
    singular_values = np.linalg.svd(shape_part, compute_uv=False)
    if len(singular_values) < distribution.shape_dim or \
            singular_values[distribution.shape_dim - 1] <= RANK_TOLERANCE * max(1.0, singular_values[0]):
        raise StructuralError(f"D(x) + V does not span the tangent space at x={np.asarray(x).tolist()}")


def _pivot_columns(distribution: DistributionField, x_reference: np.ndarray) -> Tuple[List[int], List[int]]:
    """ columns of D whose shape parts form a well-conditioned basis at the reference point, and the others """
    _, _, permutation = qr(distribution.shape_part(x_reference), pivoting=True)
    pivots = sorted(int(index) for index in permutation[:distribution.shape_dim])
    free = [index for index in range(distribution.rank) if index not in pivots]
    return pivots, free


class NonholonomicConnection:
    def __init__(self, alg: LieAlgebraSpec, distribution: DistributionField, lag: ReducedLagrangianLocal,
                 x_reference: np.ndarray) -> None:
        """
        :param alg: Lie algebra of the group
        :param distribution: constraint distribution in the variables (xdot, w)
        :param lag: Lagrangian in the variables (xdot, w), i.e. written with the trivial connection
        :param x_reference: shape point at which the basis of S(x) is fixed; the basis is smooth in x as long as the
        same columns of D keep spanning the shape velocities
        """
        if distribution.alg_dim != alg.dim or lag.alg_dim != alg.dim or lag.shape_dim != distribution.shape_dim:
            raise StructuralError("distribution, Lagrangian and algebra dimensions do not agree")
        self.alg = alg
        self.distribution = distribution
        self.lag = lag
        x_reference = np.asarray(x_reference, dtype=float)
        check_dimension_assumption(distribution, x_reference)
        self._pivots, self._free = _pivot_columns(distribution, x_reference)

    @property
    def shape_dim(self) -> int:
        return self.distribution.shape_dim

    @property
    def rank(self) -> int:
        """ dimension of S(x) """
        return self.distribution.rank - self.distribution.shape_dim

    def _null_space(self, shape_part: np.ndarray) -> np.ndarray:
        """ coefficients y with shape_part @ y = 0, one column per free column of D """
        pivot_block = shape_part[:, self._pivots]
        null_space = np.zeros((self.distribution.rank, len(self._free)))
        null_space[self._pivots] = -lu_solve(lu_factor(pivot_block), shape_part[:, self._free])
        null_space[self._free] = np.eye(len(self._free))
        return null_space

    def constraint_basis(self, x: np.ndarray) -> np.ndarray:
        """ basis of S(x) = D(x) cap V as a matrix of shape (alg.dim, rank) """
        basis = self.distribution.basis(x)
        shape_part = basis[:self.shape_dim]
        return basis[self.shape_dim:] @ self._null_space(shape_part)

    def connection_matrix(self, x: np.ndarray) -> np.ndarray:
        """ A(x) such that (xdot, -A(x) xdot) is the horizontal lift of xdot """
        basis = self.distribution.basis(x)
        shape_dim = self.shape_dim
        vertical = np.zeros((shape_dim + self.alg.dim, self.rank))
        vertical[shape_dim:] = self.constraint_basis(x)
        system = np.vstack([basis[:shape_dim], vertical.T @ self.lag.kinetic_matrix(x) @ basis])
        right_hand_side = np.vstack([np.eye(shape_dim), np.zeros((self.rank, shape_dim))])
        coefficients = np.linalg.solve(system, right_hand_side)
        return -basis[shape_dim:] @ coefficients

    def connection_field(self) -> ConnectionField:
        return ConnectionField(alg=self.alg, shape_dim=self.shape_dim, matrix=self.connection_matrix,
                               fd_step=self.lag.fd_step)

    def constraint_field(self) -> ConstraintField:
        return ConstraintField(alg_dim=self.alg.dim, rank=self.rank, shape_dim=self.shape_dim,
                               basis=self.constraint_basis, fd_step=self.lag.fd_step)

    def transformed_lagrangian(self) -> ReducedLagrangianLocal:
        """ the Lagrangian in the variables (xdot, xi) of the nonholonomic connection """
        return self.lag.with_connection(self.connection_field())
