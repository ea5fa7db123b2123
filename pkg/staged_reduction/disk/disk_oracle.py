"""
Euler's disk on the full configuration space q = (theta, phi, psi, x) with Lagrange multipliers. The Lagrangian
L(q, qdot) is the reduced Lagrangian with eta01 = psidot and eta12 = xdot (it does not depend on psi and x); the
rolling constraint xdot - psidot r u(phi) = 0 reads a(q) qdot = 0 with rows (0, 0, -r u_k, e_k). The equations

    K qddot - a^T lam = dL/dq - Kdot qdot
    a qddot           = -adot qdot = psidot r phidot u_phi

are solved together as a 7x7 linear system (index reduction without projection: drift is monitored, not corrected).
"""
import logging
from typing import Callable, Tuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from staged_reduction.common.errors import SingularSystemError
from staged_reduction.disk.disk_lagrangian import disk_kinetic_matrix, disk_kinetic_partials, disk_potential, \
    disk_potential_gradient
from staged_reduction.entities.disk.disk_params import DiskParams
from staged_reduction.entities.disk.disk_state import FullDiskState, rolling_direction
from staged_reduction.entities.output.trajectory_table import TrajectoryTable
from staged_reduction.reduced_dynamics.integrator import integrate_rk4, Trajectory

MAX_CONDITION_NUMBER = 10**12


def _constraint_matrix(params: DiskParams, phi: float) -> np.ndarray:
    matrix = np.zeros((2, 5))
    matrix[:, 2] = -params.r * rolling_direction(phi)
    matrix[:, 3:5] = np.eye(2)
    return matrix


def _velocity(full_state: FullDiskState) -> np.ndarray:
    return np.concatenate([[full_state.thetadot, full_state.phidot, full_state.psidot], full_state.xdot])


def disk_oracle_solve(params: DiskParams, full_state: FullDiskState) -> Tuple[np.ndarray, np.ndarray]:
    """ (qddot, lam) of the constrained Euler-Lagrange equations """
    theta, phi = full_state.theta, full_state.phi
    qdot = _velocity(full_state)
    kinetic_matrix = disk_kinetic_matrix(params, theta, phi)
    theta_partial, phi_partial = disk_kinetic_partials(params, theta, phi)
    kinetic_rate = full_state.thetadot * theta_partial + full_state.phidot * phi_partial

    gradient = np.zeros(5)
    gradient[0] = 0.5 * qdot @ theta_partial @ qdot
    gradient[1] = 0.5 * qdot @ phi_partial @ qdot
    gradient[:2] -= disk_potential_gradient(params, theta)

    constraint = _constraint_matrix(params, phi)
    u_phi = np.array([np.sin(phi), -np.cos(phi)])

    system = np.zeros((7, 7))
    system[:5, :5] = kinetic_matrix
    system[:5, 5:] = -constraint.T
    system[5:, :5] = constraint
    rhs = np.concatenate([gradient - kinetic_rate @ qdot, full_state.psidot * params.r * full_state.phidot * u_phi])

    condition_number = np.linalg.cond(system)
    if not np.isfinite(condition_number) or condition_number > MAX_CONDITION_NUMBER:
        logging.error(f"constrained disk equations are singular at theta={theta}")
        raise SingularSystemError(f"constrained disk equations are singular at theta={theta}",
                                  condition_number=float(condition_number))
    solution = lu_solve(lu_factor(system), rhs)
    return solution[:5], solution[5:]


def disk_full_oracle_rhs(params: DiskParams, full_state: FullDiskState) -> np.ndarray:
    """ time derivative of FullDiskState.to_vector() """
    qddot, _ = disk_oracle_solve(params, full_state)
    return np.concatenate([_velocity(full_state), qddot])


def disk_oracle_multipliers(params: DiskParams, full_state: FullDiskState) -> np.ndarray:
    """ constraint forces lam (N) """
    return disk_oracle_solve(params, full_state)[1]


def disk_oracle_energy(params: DiskParams, full_state: FullDiskState) -> float:
    """ 1/2 qdot^T K qdot + V """
    qdot = _velocity(full_state)
    return 0.5 * float(qdot @ disk_kinetic_matrix(params, full_state.theta, full_state.phi) @ qdot) + \
        disk_potential(params, full_state.theta)


def disk_oracle_vector_rhs(params: DiskParams) -> Callable[[float, np.ndarray], np.ndarray]:
    """ right-hand side for the integrator on FullDiskState.to_vector() """
    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return disk_full_oracle_rhs(params, FullDiskState.from_vector(y))
    return rhs


def simulate_oracle(params: DiskParams, full_state: FullDiskState, t_end: float, h: float,
                    theta_margin: float = 0.0, t0: float = 0.0) -> Trajectory:
    """
    Integrate the constrained full equations with RK4
    :param theta_margin: integration stops with ChartBoundaryError when theta leaves (margin, pi/2 - margin)
    """
    logging.info(f"simulating the constrained disk up to t={t_end} with h={h}")
    return integrate_rk4(disk_oracle_vector_rhs(params), full_state.to_vector(), t_end=t_end, h=h, t0=t0,
                         inside_domain=lambda y: theta_margin < y[0] < np.pi / 2 - theta_margin)


def oracle_trajectory_table(params: DiskParams, trajectory: Trajectory) -> TrajectoryTable:
    header = ["t", "theta", "phi", "psi", "x_0", "x_1", "thetadot", "phidot", "psidot", "xdot_0", "xdot_1",
              "lam_0", "lam_1", "energy", "constraint_residual"]
    rows = []
    for t, y in zip(trajectory.times, trajectory.states):
        full_state = FullDiskState.from_vector(y)
        rows.append([t] + y.tolist() + disk_oracle_multipliers(params, full_state).tolist() +
                    [disk_oracle_energy(params, full_state), full_state.constraint_residual(params.r)])
    return TrajectoryTable(header=header, rows=np.array(rows).reshape(-1, len(header)))
