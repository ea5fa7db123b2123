"""
Cross-check of the reduced equations by stages of Euler's disk against the constrained full-space equations: both
start from the same state, use the same RK4 step and are compared sample by sample.
"""
import logging
from typing import Dict, Optional

import numpy as np

from staged_reduction.disk.disk_lagrangian import disk_energy
from staged_reduction.disk.disk_oracle import disk_oracle_energy, simulate_oracle
from staged_reduction.disk.disk_system import build_disk_system, THETA_MARGIN
from staged_reduction.entities.disk.disk_params import DiskParams
from staged_reduction.entities.disk.disk_state import DiskState, FullDiskState
from staged_reduction.entities.output.comparison_summary import ComparisonSummary
from staged_reduction.local_bundle.lagrange_poincare import simulate_system

# (theta, phi, thetadot, phidot, psidot) in the full state vector, matching (x, xdot, c) of the reduced system
FULL_REDUCED_INDICES = [0, 1, 5, 6, 7]


def _relative_drift(energies: np.ndarray) -> float:
    scale = abs(energies[0]) if energies[0] != 0 else 1.0
    return float(np.max(np.abs(energies - energies[0])) / scale)


def compare_with_oracle(params: DiskParams, state: DiskState, t_end: float, h: float, one_stage: bool = False,
                        tolerances: Optional[Dict[str, float]] = None) -> ComparisonSummary:
    """
    :param state: common initial state (eta12 is taken from the rolling constraint)
    :param one_stage: reduce in a single stage instead of two
    :raises IntegrationAborted: when either trajectory cannot be completed
    """
    state = DiskState(theta=state.theta, phi=state.phi, thetadot=state.thetadot, phidot=state.phidot,
                      eta01=state.eta01, r=params.r)
    _, system, constraint_field = build_disk_system(params, one_stage=one_stage, initial_state=state)
    reduced = simulate_system(system, t_end=t_end, h=h)
    full = simulate_oracle(params, FullDiskState.from_reduced(state), t_end=t_end, h=h, theta_margin=THETA_MARGIN)

    max_dev = float(np.max(np.abs(reduced.states - full.states[:, FULL_REDUCED_INDICES])))
    max_constraint_residual = max(FullDiskState.from_vector(y).constraint_residual(params.r) for y in full.states)
    reduced_energies = np.array([system.lagrangian.energy(y[:2], y[2:4], constraint_field.velocity(y[:2], y[4:]))
                                 for y in reduced.states])
    full_energies = np.array([disk_oracle_energy(params, FullDiskState.from_vector(y)) for y in full.states])
    max_energy_drift = max(_relative_drift(reduced_energies), _relative_drift(full_energies))

    summary = ComparisonSummary(scenario=system.name, max_dev=max_dev,
                                max_constraint_residual=max_constraint_residual, max_energy_drift=max_energy_drift,
                                tolerances=tolerances)
    logging.info(f"initial energy {disk_energy(params, state)}: {summary}")
    return summary
