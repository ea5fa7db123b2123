import logging
from typing import Optional

import numpy as np

from staged_reduction.common.errors import IntegrationAborted
from staged_reduction.entities.dynamics.constraint_subspace import ConstraintSubspace
from staged_reduction.entities.dynamics.ep_state import EPState
from staged_reduction.entities.dynamics.quadratic_lagrangian import QuadraticLagrangian
from staged_reduction.entities.output.trajectory_table import TrajectoryTable
from staged_reduction.entities.stages.staged_structure import StagedStructure
from staged_reduction.reduced_dynamics.euler_poincare import edp_rhs, ep_rhs
from staged_reduction.reduced_dynamics.integrator import integrate_rk4, Trajectory


def simulate_ep(staged: StagedStructure, lag: QuadraticLagrangian, state: EPState, t_end: float, h: float,
                constraint: Optional[ConstraintSubspace] = None) -> Trajectory:
    """
    Integrate the Euler-Poincare (or, with a constraint, the Euler-d'Alembert-Poincare) equations by stages with RK4.
    Constrained runs integrate the coordinates c of v = basis c and are mapped back to v.
    :param state: initial velocity; with a constraint it has to lie in the constraint subspace
    :return: trajectory of the velocity v
    :raises ConstraintViolation: when the initial velocity violates the constraint
    """
    logging.info(f"simulating on {staged.alg} up to t={t_end} with h={h}")
    if constraint is None:
        return integrate_rk4(lambda t, v: ep_rhs(staged, lag, v), state.v, t_end=t_end, h=h, t0=state.t)

    constraint.check_member(state.v)
    c0 = constraint.coefficients(state.v)
    try:
        coefficients = integrate_rk4(lambda t, c: edp_rhs(staged, lag, constraint, c), c0, t_end=t_end, h=h,
                                     t0=state.t)
    except IntegrationAborted as e:
        if e.trajectory is not None:
            e.trajectory = Trajectory(e.trajectory.times, e.trajectory.states @ constraint.basis.T)
        raise
    return Trajectory(coefficients.times, coefficients.states @ constraint.basis.T)


def ep_trajectory_table(lag: QuadraticLagrangian, trajectory: Trajectory) -> TrajectoryTable:
    """ table with columns t, v_*, beta_*, energy """
    header = ["t"] + TrajectoryTable.named_columns("v", lag.dim) + TrajectoryTable.named_columns("beta", lag.dim) + \
        ["energy"]
    momenta = trajectory.states @ lag.mass.T
    energies = [lag.value(v) for v in trajectory.states]
    rows = np.column_stack([trajectory.times, trajectory.states, momenta, energies])
    return TrajectoryTable(header=header, rows=rows.reshape(-1, len(header)))
