import logging

import numpy as np

from staged_reduction.entities.output.validation_report import ValidationReport
from staged_reduction.entities.stages.staged_structure import StagedStructure

EQUIVALENCE_TOLERANCE = 10**(-12)


def validate_bracket_equivalence(staged: StagedStructure,
                                 tolerance: float = EQUIVALENCE_TOLERANCE) -> ValidationReport:
    """
    Sweep over all basis pairs and compare the bracket assembled by stages with the plain bracket.
    :param staged: staged structure (algebra, chain, metric)
    :param tolerance: largest admissible |bracket_by_stages(e_i, e_j) - bracket(e_i, e_j)| (max norm)
    :return: report with the largest deviation; details hold the worst pair
    """
    alg = staged.alg
    worst = (0.0, -1, -1)
    for i in range(alg.dim):
        for j in range(alg.dim):
            e_i = alg.basis_vector(i)
            e_j = alg.basis_vector(j)
            deviation = float(np.max(np.abs(staged.bracket_by_stages(e_i, e_j) - alg.bracket(e_i, e_j))))
            if deviation > worst[0]:
                worst = (deviation, i, j)
    logging.debug(f"bracket equivalence sweep over {alg.dim ** 2} pairs: max deviation {worst[0]:.3e}")
    return ValidationReport(name="bracket by stages equivalence", residual=worst[0], tolerance=tolerance,
                            details={"worst i": worst[1], "worst j": worst[2]})
