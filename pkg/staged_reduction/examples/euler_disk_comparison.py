import logging
import os

from staged_reduction.disk.disk_comparison import compare_with_oracle
from staged_reduction.disk.disk_system import disk_initial_state
from staged_reduction.entities.disk.disk_params import DiskParams


def euler_disk_comparison():
    """
    In this example we simulate Euler's disk rolling without slipping, once with the reduced equations (in two stages
    and in one stage) and once in the full configuration space with Lagrange multipliers, and compare both.

    Use case: checking that nothing is lost by reducing in stages.
    """
    logging.info(f"Running example '{os.path.basename(__file__)}'")
    for params in [DiskParams(), DiskParams(e=0.1)]:
        state = disk_initial_state(params)
        for one_stage in [False, True]:
            summary = compare_with_oracle(params, state, t_end=1.0, h=10**(-3), one_stage=one_stage)
            logging.info(f"{params}, {'one stage' if one_stage else 'two stages'}: {summary}")


if __name__ == "__main__":
    logging.getLogger().setLevel(logging.INFO)
    euler_disk_comparison()
