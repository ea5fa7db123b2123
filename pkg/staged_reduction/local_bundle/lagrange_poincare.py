"""
Lagrange-Poincare and Lagrange-d'Alembert-Poincare equations by stages on a trivial bundle X x G, in the variables
(x, xdot, xi) of a principal connection A:

    vertical, for every test vector nu:
        <d/dt dl/dxi, nu> - <dl/dxi, bracket_by_stages(xi - A(x) xdot, nu)> = 0
    horizontal, for every shape direction dx:
        dl/dx . dx - d/dt(dl/dxdot) . dx - <dl/dxi, B(x)(xdot, dx) - bracket_by_stages(A(x) dx, xi)> = 0

with B the reduced curvature. The vertical test vectors are the columns of S(x) at the current shape point; the
residuals are affine in the accelerations (xddot, xidot).
"""
import logging
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from staged_reduction.common.errors import SingularSystemError, StructuralError
from staged_reduction.common.finite_differences import directional_derivative
from staged_reduction.entities.bundle.connection_field import ConnectionField
from staged_reduction.entities.bundle.constraint_field import ConstraintField
from staged_reduction.entities.bundle.local_state import LocalState
from staged_reduction.entities.bundle.reduced_lagrangian_local import ReducedLagrangianLocal
from staged_reduction.entities.bundle.trivial_bundle_system import TrivialBundleSystem
from staged_reduction.entities.output.trajectory_table import TrajectoryTable
from staged_reduction.entities.stages.staged_structure import StagedStructure
from staged_reduction.reduced_dynamics.integrator import integrate_rk4, Trajectory

MAX_CONDITION_NUMBER = 10**12


class LocalTerms:
    def __init__(self, staged: StagedStructure, conn: ConnectionField, lag: ReducedLagrangianLocal, x: np.ndarray,
                 xdot: np.ndarray, xi: np.ndarray) -> None:
        """
        Parts of the Lagrange-Poincare equations that do not depend on the accelerations, evaluated once at
        (x, xdot, xi) so that residuals for many accelerations are cheap.
        """
        if conn.alg_dim != staged.dim or lag.alg_dim != staged.dim:
            raise StructuralError(f"connection and Lagrangian should act on an algebra of dimension {staged.dim}")
        if conn.shape_dim != lag.shape_dim:
            raise StructuralError(f"connection has shape dimension {conn.shape_dim} while the Lagrangian has "
                                  f"{lag.shape_dim}")
        self.shape_dim = lag.shape_dim
        self.alg_dim = staged.dim
        x = conn.check_shape_vector(x)
        xdot = conn.check_shape_vector(xdot, "xdot")
        xi = staged.alg.check_vector(xi, "xi")

        kinetic_matrix = lag.kinetic_matrix(x)
        velocity = np.concatenate([xdot, xi])
        momentum = kinetic_matrix @ velocity
        beta = momentum[self.shape_dim:]
        kinetic_rate = directional_derivative(lag.kinetic_partials(x), xdot)

        connection_matrix = conn.matrix(x)
        connection_partials = conn.matrix_partials(x)
        connection_velocity = connection_matrix @ xdot
        tensor = staged.staged_bracket_tensor

        # <beta, bracket_by_stages(xi - A xdot, e_k)>
        self.vertical_force = np.einsum("i,ikm,m->k", xi - connection_velocity, tensor, beta)

        # dA(xdot, e_i) - [A xdot, A e_i] as columns
        exterior = directional_derivative(connection_partials, xdot) - \
            np.column_stack([partial @ xdot for partial in connection_partials])
        curvature = exterior - staged.alg.ad_matrix(connection_velocity) @ connection_matrix
        # <beta, bracket_by_stages(A e_i, xi)>
        transport = np.einsum("ai,b,abm,m->i", connection_matrix, xi, tensor, beta)
        self.horizontal_force = lag.shape_gradient(x, xdot, xi) - beta @ curvature + transport

        self.kinetic_matrix = kinetic_matrix
        self.momentum_rate_offset = kinetic_rate @ velocity

    def residual(self, xddot: np.ndarray, xidot: np.ndarray,
                 test_vectors: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
        """
        :param xddot: shape acceleration
        :param xidot: time derivative of xi
        :param test_vectors: columns are the vertical test vectors (None: the basis of the algebra)
        :return: (vertical residuals, horizontal residuals)
        """
        acceleration = np.concatenate([np.asarray(xddot, dtype=float), np.asarray(xidot, dtype=float)])
        momentum_rate = self.momentum_rate_offset + self.kinetic_matrix @ acceleration
        vertical = momentum_rate[self.shape_dim:] - self.vertical_force
        horizontal = self.horizontal_force - momentum_rate[:self.shape_dim]
        if test_vectors is not None:
            vertical = vertical @ np.asarray(test_vectors, dtype=float).reshape(self.alg_dim, -1)
        return vertical, horizontal


def lp_residual(staged: StagedStructure, conn: ConnectionField, lag: ReducedLagrangianLocal, x: np.ndarray,
                xdot: np.ndarray, xi: np.ndarray, xddot: np.ndarray, xidot: np.ndarray,
                test_vectors: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Residuals of the vertical and horizontal Lagrange-Poincare equations by stages at the given state and
    accelerations.
    :param test_vectors: columns are the vertical test vectors nu (None: every basis vector of the algebra)
    :return: (vertical residuals, one per test vector; horizontal residuals, one per shape coordinate)
    """
    terms = LocalTerms(staged, conn, lag, x, xdot, xi)
    return terms.residual(xddot, xidot, test_vectors=test_vectors)


def ldp_rhs(staged: StagedStructure, conn: ConnectionField, lag: ReducedLagrangianLocal,
            constraint_field: ConstraintField, x: np.ndarray, xdot: np.ndarray,
            c: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Lagrange-d'Alembert-Poincare equations by stages solved for the accelerations. With xi = S(x) c the unknowns are
    (xddot, cdot) and xidot = S(x) cdot + (D_xdot S)(x) c; the linear system is extracted by probing the residuals at
    zero and at unit accelerations.
    :return: (xddot, cdot)
    :raises SingularSystemError: when the effective mass at the state is (numerically) singular
    """
    shape_dim = lag.shape_dim
    basis = constraint_field.basis(x)
    c = np.asarray(c, dtype=float)
    if c.shape != (constraint_field.rank,):
        raise StructuralError(f"c should have shape ({constraint_field.rank},), got {c.shape}")
    xi = basis @ c
    xidot_offset = constraint_field.directional_derivative(x, xdot) @ c
    terms = LocalTerms(staged, conn, lag, x, xdot, xi)

    def residual(acceleration: np.ndarray) -> np.ndarray:
        xidot = basis @ acceleration[shape_dim:] + xidot_offset
        vertical, horizontal = terms.residual(acceleration[:shape_dim], xidot, test_vectors=basis)
        return np.concatenate([horizontal, vertical])

    num_unknowns = shape_dim + constraint_field.rank
    offset = residual(np.zeros(num_unknowns))
    system = np.column_stack([residual(unit) - offset for unit in np.eye(num_unknowns)])
    condition_number = np.linalg.cond(system)
    if not np.isfinite(condition_number) or condition_number > MAX_CONDITION_NUMBER:
        logging.error(f"effective mass is singular at x={x}, xdot={xdot}, c={c}")
        raise SingularSystemError(f"effective mass is singular at x={np.asarray(x).tolist()}",
                                  condition_number=float(condition_number))
    acceleration = lu_solve(lu_factor(system), -offset)
    return acceleration[:shape_dim], acceleration[shape_dim:]


def lp_rhs(staged: StagedStructure, conn: ConnectionField, lag: ReducedLagrangianLocal, x: np.ndarray,
           xdot: np.ndarray, xi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """ unconstrained Lagrange-Poincare equations solved for (xddot, xidot) """
    constraint_field = ConstraintField.full(alg_dim=staged.dim, shape_dim=lag.shape_dim)
    return ldp_rhs(staged, conn, lag, constraint_field, x, xdot, xi)


def system_rhs(system: TrivialBundleSystem) -> Callable[[float, np.ndarray], np.ndarray]:
    """ right-hand side for the integrator; the state vector is (x, xdot, c) """
    shape_dim = system.shape_dim

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        x, xdot, c = y[:shape_dim], y[shape_dim:2 * shape_dim], y[2 * shape_dim:]
        xddot, cdot = ldp_rhs(system.staged, system.connection, system.lagrangian, system.constraint_field, x,
                              xdot, c)
        return np.concatenate([xdot, xddot, cdot])

    return rhs


def simulate_system(system: TrivialBundleSystem, t_end: float, h: float,
                    initial_state: Optional[LocalState] = None) -> Trajectory:
    """
    Integrate the reduced equations of a system with RK4 from its (or the given) initial state.
    :raises ChartBoundaryError: when the shape coordinates leave the chart of the system
    """
    state = initial_state if initial_state is not None else system.initial_state
    if state is None:
        raise ValueError(f"system '{system.name}' has no initial state")
    system.check_state(state)
    logging.info(f"simulating '{system.name}' up to t={t_end} with h={h}")
    shape_dim = system.shape_dim
    return integrate_rk4(system_rhs(system), state.to_vector(), t_end=t_end, h=h, t0=state.t,
                         inside_domain=lambda y: system.inside_chart(y[:shape_dim]))


def local_trajectory_table(system: TrivialBundleSystem, trajectory: Trajectory) -> TrajectoryTable:
    """ table with columns t, x_*, xdot_*, xi_*, energy, constraint_residual """
    shape_dim = system.shape_dim
    header = ["t"] + TrajectoryTable.named_columns("x", shape_dim) + \
        TrajectoryTable.named_columns("xdot", shape_dim) + TrajectoryTable.named_columns("xi", system.staged.dim) + \
        ["energy", "constraint_residual"]
    rows = []
    for t, y in zip(trajectory.times, trajectory.states):
        state = LocalState.from_vector(y, shape_dim, t=t)
        xi = system.xi(state)
        rows.append([t] + state.x.tolist() + state.xdot.tolist() + xi.tolist() +
                    [system.energy(state), system.constraint_field.membership_residual(state.x, xi)])
    return TrajectoryTable(header=header, rows=np.array(rows).reshape(-1, len(header)))
