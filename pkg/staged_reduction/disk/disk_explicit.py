"""
Hand-written Lagrange-d'Alembert-Poincare equations by stages of Euler's disk. With the rolling constraint
eta12 = eta01 r u(phi) the vertical equation (tested with the constrained direction (1, r u)) and the two horizontal
equations give, for the unknowns (thetaddot, phiddot, eta01dot):

    (I3 + M r^2) eta01dot + (I3 c + M r^2 c - 1/2 M e r^2 s) phiddot
        = I3 thetadot phidot s + 2 M r^2 thetadot phidot s + M e r^2 thetadot phidot c

    [-(I1 s^2 + (I3 + M r^2) c^2) - 1/4 M r^2 e^2 s^2 + M r^2 e s c] phiddot + (-M r^2 c - I3 c + 1/2 M r^2 e s) eta01dot
        + 2 (M r^2 + I3 - I1) thetadot phidot s c + I3 thetadot eta01 s
        - 1/2 M r e (r e thetadot phidot s c + 2 r thetadot phidot (s^2 - c^2)) = 0

    -(I1 + M r^2 + 1/4 M r^2 e^2) thetaddot + (I1 - I3 - M r^2) phidot^2 s c - I3 eta01 phidot s
        - M r^2 s eta01 phidot - M g r c
        + 1/2 M r e (1/2 r e phidot^2 s c + r phidot^2 (s^2 - c^2) - r c eta01 phidot + g s) = 0
"""
import logging
from typing import Callable

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from staged_reduction.common.errors import SingularSystemError
from staged_reduction.entities.disk.disk_params import DiskParams
from staged_reduction.entities.disk.disk_state import DiskState, rolling_direction

MAX_CONDITION_NUMBER = 10**12


def disk_accelerations(params: DiskParams, state: DiskState) -> np.ndarray:
    """ (thetaddot, phiddot, eta01dot) """
    s, c = np.sin(state.theta), np.cos(state.theta)
    M, r, e, g, I1, I3 = params.M, params.r, params.e, params.g, params.I1, params.I3
    thetadot, phidot, eta01 = state.thetadot, state.phidot, state.eta01
    mr2 = M * r ** 2

    matrix = np.zeros((3, 3))
    rhs = np.zeros(3)

    matrix[0, 1] = I3 * c + mr2 * c - 0.5 * mr2 * e * s
    matrix[0, 2] = I3 + mr2
    rhs[0] = I3 * thetadot * phidot * s + 2 * mr2 * thetadot * phidot * s + mr2 * e * thetadot * phidot * c

    matrix[1, 1] = -(I1 * s ** 2 + (I3 + mr2) * c ** 2) - 0.25 * mr2 * e ** 2 * s ** 2 + mr2 * e * s * c
    matrix[1, 2] = -mr2 * c - I3 * c + 0.5 * mr2 * e * s
    rhs[1] = -(2 * (mr2 + I3 - I1) * thetadot * phidot * s * c + I3 * thetadot * eta01 * s
               - 0.5 * M * r * e * (r * e * thetadot * phidot * s * c + 2 * r * thetadot * phidot * (s ** 2 - c ** 2)))

    matrix[2, 0] = -(I1 + mr2 + 0.25 * mr2 * e ** 2)
    rhs[2] = -((I1 - I3 - mr2) * phidot ** 2 * s * c - I3 * eta01 * phidot * s - mr2 * s * eta01 * phidot
               - M * g * r * c
               + 0.5 * M * r * e * (0.5 * r * e * phidot ** 2 * s * c + r * phidot ** 2 * (s ** 2 - c ** 2)
                                    - r * c * eta01 * phidot + g * s))

    condition_number = np.linalg.cond(matrix)
    if not np.isfinite(condition_number) or condition_number > MAX_CONDITION_NUMBER:
        logging.error(f"disk equations are singular at theta={state.theta}")
        raise SingularSystemError(f"disk equations are singular at theta={state.theta}",
                                  condition_number=float(condition_number))
    return lu_solve(lu_factor(matrix), rhs)


def disk_rhs_explicit(params: DiskParams, state: DiskState) -> np.ndarray:
    """
    Time derivative of the disk state vector (theta, phi, thetadot, phidot, eta01, eta12); eta12 follows the
    derivative of the constraint: d/dt (eta01 r u) = eta01dot r u + eta01 r phidot u_phi.
    """
    thetaddot, phiddot, eta01dot = disk_accelerations(params, state)
    u = rolling_direction(state.phi)
    u_phi = np.array([np.sin(state.phi), -np.cos(state.phi)])
    eta12dot = eta01dot * params.r * u + state.eta01 * params.r * state.phidot * u_phi
    return np.concatenate([[state.thetadot, state.phidot, thetaddot, phiddot, eta01dot], eta12dot])


def disk_explicit_vector_rhs(params: DiskParams) -> Callable[[float, np.ndarray], np.ndarray]:
    """ right-hand side for the integrator on DiskState.to_vector() """
    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return disk_rhs_explicit(params, DiskState.from_vector(y))
    return rhs
