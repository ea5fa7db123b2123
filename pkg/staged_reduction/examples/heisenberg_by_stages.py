import logging
import os

import numpy as np

from staged_reduction.entities.algebra.standard_algebras import heisenberg
from staged_reduction.entities.dynamics.ep_state import EPState
from staged_reduction.entities.dynamics.quadratic_lagrangian import QuadraticLagrangian
from staged_reduction.entities.stages.stage_chain import InvariantMetric, StageChain
from staged_reduction.entities.stages.staged_structure import StagedStructure
from staged_reduction.reduced_dynamics.ep_simulation import ep_trajectory_table, simulate_ep


def heisenberg_by_stages():
    """
    Example showing how to:
    - reduce the Heisenberg algebra in three stages along its central series
    - compare the bracket by stages with the ordinary bracket
    - integrate the Euler-Poincare equations by stages and check energy conservation
    """
    logging.info(f"Running example '{os.path.basename(__file__)}'")
    alg = heisenberg()
    staged = StagedStructure(alg=alg, chain=StageChain([1, 1, 1]), metric=InvariantMetric.identity(alg.dim))
    logging.info(staged)

    u = np.array([1.0, 0.0, 0.5])
    v = np.array([0.0, 1.0, -0.2])
    logging.info(f"[u, v] = {alg.bracket(u, v)}, by stages: {staged.bracket_by_stages(u, v)}")

    lag = QuadraticLagrangian(mass=np.diag([1.0, 2.0, 3.0]))
    trajectory = simulate_ep(staged, lag, EPState(v=[0.5, 0.3, 0.1]), t_end=10.0, h=10**(-3))
    energy = ep_trajectory_table(lag, trajectory).column("energy")
    logging.info(f"final velocity: {trajectory.final_state}")
    logging.info(f"largest energy deviation: {np.max(np.abs(energy - energy[0])):.2e}")


if __name__ == "__main__":
    logging.getLogger().setLevel(logging.INFO)
    heisenberg_by_stages()
