"""
Reduced Lagrangian of Euler's disk. Shape coordinates (theta, phi): tilt and heading of the disk; algebra
coordinates (eta01, eta12): spin velocity and velocity of the contact point. With s = sin theta, c = cos theta,
u = (-cos phi, -sin phi) and u_phi = du/dphi = (sin phi, -cos phi):

    l = 1/2 J_theta thetadot^2 + 1/2 J_phi phidot^2 + 1/2 M |eta12|^2 + m_theta thetadot (eta12 . u_phi)
        + m_phi phidot (eta12 . u) + 1/2 I3 (phidot c + eta01)^2 - M g r s - 1/2 M g r e c

    A1      = I1 + 1/4 M r^2 e^2
    J_theta = A1 + M r^2
    J_phi   = A1 s^2 + M r^2 c^2 - M r^2 e c s
    m_theta = M r s + 1/2 M r e c
    m_phi   = M r c - 1/2 M r e s
"""
from typing import List, Tuple

import numpy as np

from staged_reduction.entities.disk.disk_params import DiskParams
from staged_reduction.entities.disk.disk_state import DiskState, rolling_direction

THETA_INDEX, PHI_INDEX, ETA01_INDEX = 0, 1, 2
ETA12_SLICE = slice(3, 5)


def _unit_vectors(phi: float) -> Tuple[np.ndarray, np.ndarray]:
    """ (u, u_phi) """
    return rolling_direction(phi), np.array([np.sin(phi), -np.cos(phi)])


def _inertia_terms(params: DiskParams, theta: float) -> Tuple[float, float, float, float, float]:
    """ (A1, J_theta, J_phi, m_theta, m_phi) """
    s, c = np.sin(theta), np.cos(theta)
    M, r, e = params.M, params.r, params.e
    a1 = params.I1 + 0.25 * M * r ** 2 * e ** 2
    j_theta = a1 + M * r ** 2
    j_phi = a1 * s ** 2 + M * r ** 2 * c ** 2 - M * r ** 2 * e * c * s
    m_theta = M * r * s + 0.5 * M * r * e * c
    m_phi = M * r * c - 0.5 * M * r * e * s
    return a1, j_theta, j_phi, m_theta, m_phi


def disk_potential(params: DiskParams, theta: float) -> float:
    """ V = M g r sin(theta) + 1/2 M g r e cos(theta) """
    return params.M * params.g * params.r * (np.sin(theta) + 0.5 * params.e * np.cos(theta))


def disk_potential_gradient(params: DiskParams, theta: float) -> np.ndarray:
    """ (dV/dtheta, dV/dphi) """
    return np.array([params.M * params.g * params.r * (np.cos(theta) - 0.5 * params.e * np.sin(theta)), 0.0])


def disk_lagrangian(params: DiskParams, theta: float, phi: float, thetadot: float, phidot: float, eta01: float,
                    eta12: np.ndarray) -> float:
    s, c = np.sin(theta), np.cos(theta)
    u, u_phi = _unit_vectors(phi)
    eta12 = np.asarray(eta12, dtype=float)
    M, r, e, g = params.M, params.r, params.e, params.g
    _, j_theta, j_phi, m_theta, m_phi = _inertia_terms(params, theta)
    return (-M * g * r * s - 0.5 * M * g * r * e * c
            + 0.5 * j_theta * thetadot ** 2
            + 0.5 * j_phi * phidot ** 2
            + 0.5 * M * float(eta12 @ eta12)
            + m_theta * thetadot * float(eta12 @ u_phi)
            + m_phi * phidot * float(eta12 @ u)
            + 0.5 * params.I3 * (phidot * c + eta01) ** 2)


def disk_kinetic_matrix(params: DiskParams, theta: float, phi: float) -> np.ndarray:
    """ K(theta, phi) on the velocities (thetadot, phidot, eta01, eta12_0, eta12_1) """
    c = np.cos(theta)
    u, u_phi = _unit_vectors(phi)
    _, j_theta, j_phi, m_theta, m_phi = _inertia_terms(params, theta)
    matrix = np.zeros((5, 5))
    matrix[THETA_INDEX, THETA_INDEX] = j_theta
    matrix[PHI_INDEX, PHI_INDEX] = j_phi + params.I3 * c ** 2
    matrix[PHI_INDEX, ETA01_INDEX] = matrix[ETA01_INDEX, PHI_INDEX] = params.I3 * c
    matrix[ETA01_INDEX, ETA01_INDEX] = params.I3
    matrix[ETA12_SLICE, ETA12_SLICE] = params.M * np.eye(2)
    matrix[THETA_INDEX, ETA12_SLICE] = matrix[ETA12_SLICE, THETA_INDEX] = m_theta * u_phi
    matrix[PHI_INDEX, ETA12_SLICE] = matrix[ETA12_SLICE, PHI_INDEX] = m_phi * u
    return matrix


def disk_kinetic_partials(params: DiskParams, theta: float, phi: float) -> List[np.ndarray]:
    """ [dK/dtheta, dK/dphi] """
    s, c = np.sin(theta), np.cos(theta)
    u, u_phi = _unit_vectors(phi)
    M, r, e = params.M, params.r, params.e
    a1, _, _, m_theta, m_phi = _inertia_terms(params, theta)
    j_phi_derivative = 2 * (a1 - M * r ** 2) * s * c - M * r ** 2 * e * (c ** 2 - s ** 2)

    # dm_theta/dtheta = m_phi and dm_phi/dtheta = -m_theta
    theta_partial = np.zeros((5, 5))
    theta_partial[PHI_INDEX, PHI_INDEX] = j_phi_derivative - 2 * params.I3 * s * c
    theta_partial[PHI_INDEX, ETA01_INDEX] = theta_partial[ETA01_INDEX, PHI_INDEX] = -params.I3 * s
    theta_partial[THETA_INDEX, ETA12_SLICE] = theta_partial[ETA12_SLICE, THETA_INDEX] = m_phi * u_phi
    theta_partial[PHI_INDEX, ETA12_SLICE] = theta_partial[ETA12_SLICE, PHI_INDEX] = -m_theta * u

    # du/dphi = u_phi and du_phi/dphi = -u
    phi_partial = np.zeros((5, 5))
    phi_partial[THETA_INDEX, ETA12_SLICE] = phi_partial[ETA12_SLICE, THETA_INDEX] = -m_theta * u
    phi_partial[PHI_INDEX, ETA12_SLICE] = phi_partial[ETA12_SLICE, PHI_INDEX] = m_phi * u_phi
    return [theta_partial, phi_partial]


def disk_velocity(state: DiskState) -> np.ndarray:
    """ (thetadot, phidot, eta01, eta12_0, eta12_1) """
    return np.concatenate([[state.thetadot, state.phidot, state.eta01], state.eta12])


def disk_energy(params: DiskParams, state: DiskState) -> float:
    """ 1/2 (xdot, xi)^T K (xdot, xi) + V """
    velocity = disk_velocity(state)
    return 0.5 * float(velocity @ disk_kinetic_matrix(params, state.theta, state.phi) @ velocity) + \
        disk_potential(params, state.theta)


def disk_steady_precession_rate(params: DiskParams, theta: float, phidot: float) -> float:
    """
    Spin velocity eta01 for which the disk rolls on a circle at constant tilt theta and heading rate phidot
    (thetadot = 0 is then an equilibrium of the tilt equation).
    """
    s, c = np.sin(theta), np.cos(theta)
    M, r, e, g, I1, I3 = params.M, params.r, params.e, params.g, params.I1, params.I3
    if phidot == 0:
        raise ValueError("steady rolling needs a nonzero heading rate")
    numerator = (I1 - I3 - M * r ** 2) * phidot ** 2 * s * c - M * g * r * c + \
        0.5 * M * r * e * (0.5 * r * e * phidot ** 2 * s * c + r * phidot ** 2 * (s ** 2 - c ** 2) + g * s)
    denominator = phidot * (I3 * s + M * r ** 2 * s + 0.5 * M * r ** 2 * e * c)
    return numerator / denominator
