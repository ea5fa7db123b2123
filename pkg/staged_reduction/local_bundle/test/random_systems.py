from typing import Tuple

import numpy as np

from staged_reduction.entities.algebra.lie_algebra import LieAlgebraSpec
from staged_reduction.entities.bundle.connection_field import ConnectionField
from staged_reduction.entities.bundle.constraint_field import ConstraintField
from staged_reduction.entities.bundle.reduced_lagrangian_local import ReducedLagrangianLocal

SHAPE_DIM = 2


def _random_symmetric(rng: np.random.Generator, size: int, scale: float) -> np.ndarray:
    matrix = rng.uniform(-scale, scale, (size, size))
    return 0.5 * (matrix + matrix.T)


def random_lagrangian(alg_dim: int, seed: int, analytic: bool = True) -> ReducedLagrangianLocal:
    """
    l = 1/2 z^T K(x) z - V(x) with K(x) = K0 + sin(x_0) K1 + x_1^2 K2 (positive definite for |x_1| < 1)
    and V(x) = cos(x_0) + 1/2 x_1^2
    """
    rng = np.random.default_rng(seed)
    size = SHAPE_DIM + alg_dim
    factor = rng.uniform(-1, 1, (size, size))
    k0 = factor @ factor.T + size * np.eye(size)
    k1 = _random_symmetric(rng, size, 0.3)
    k2 = _random_symmetric(rng, size, 0.3)

    def kinetic_matrix(x):
        return k0 + np.sin(x[0]) * k1 + x[1] ** 2 * k2

    def kinetic_partials(x):
        return [np.cos(x[0]) * k1, 2 * x[1] * k2]

    def potential(x):
        return np.cos(x[0]) + 0.5 * x[1] ** 2

    def potential_gradient(x):
        return np.array([-np.sin(x[0]), x[1]])

    return ReducedLagrangianLocal(shape_dim=SHAPE_DIM, alg_dim=alg_dim, kinetic_matrix=kinetic_matrix,
                                  potential=potential,
                                  kinetic_partials=kinetic_partials if analytic else None,
                                  potential_gradient=potential_gradient if analytic else None)


def random_connection(alg: LieAlgebraSpec, seed: int, analytic: bool = True) -> ConnectionField:
    """ A(x) = A0 + x_0 A1 + sin(x_1) A2 """
    rng = np.random.default_rng(seed)
    a0, a1, a2 = (rng.uniform(-1, 1, (alg.dim, SHAPE_DIM)) for _ in range(3))

    def matrix(x):
        return a0 + x[0] * a1 + np.sin(x[1]) * a2

    def matrix_partials(x):
        return [a1, np.cos(x[1]) * a2]

    return ConnectionField(alg=alg, shape_dim=SHAPE_DIM, matrix=matrix,
                           matrix_partials=matrix_partials if analytic else None)


def random_constraint_field(alg_dim: int, rank: int, seed: int) -> ConstraintField:
    """ S(x) = S0 + x_0 S1 + cos(x_1) S2 """
    rng = np.random.default_rng(seed)
    s0 = np.eye(alg_dim)[:, :rank] * 2.0
    s1, s2 = (rng.uniform(-0.3, 0.3, (alg_dim, rank)) for _ in range(2))
    return ConstraintField(alg_dim=alg_dim, rank=rank, shape_dim=SHAPE_DIM,
                           basis=lambda x: s0 + x[0] * s1 + np.cos(x[1]) * s2,
                           basis_partials=lambda x: [s1, -np.sin(x[1]) * s2])


def random_state(alg_dim: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """ (x, xdot, xi) with |x_1| < 0.5 """
    return rng.uniform(-0.5, 0.5, SHAPE_DIM), rng.uniform(-1, 1, SHAPE_DIM), rng.uniform(-1, 1, alg_dim)
