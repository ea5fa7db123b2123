import numpy as np

from staged_reduction.entities.algebra.lie_algebra import LieAlgebraSpec
from staged_reduction.entities.output.validation_report import ValidationReport
from staged_reduction.entities.stages.stage_chain import StageChain

CHAIN_TOLERANCE = 10**(-12)


def validate_chain(alg: LieAlgebraSpec, chain: StageChain, tolerance: float = CHAIN_TOLERANCE) -> ValidationReport:
    """
    Check the ideal condition [n_{j-1}, n_j] contained in n_j for every stage j = 1, ..., n.
    :param alg: the algebra
    :param chain: block layout; must sum to alg.dim (raises StructuralError otherwise)
    :param tolerance: largest admissible component of a bracket outside n_j
    :return: report with the largest escaping component; details hold the residual per stage
    """
    chain.check_dim(alg.dim)
    constants = alg.structure_constants
    details = {}
    for j in range(1, chain.num_stages + 1):
        start_previous = chain.offset(j - 1)
        start = chain.offset(j)
        # components k < start of [e_p, e_q] with e_p in n_{j-1}, e_q in n_j
        escaping = constants[start_previous:, start:, :start]
        details[f"stage {j}"] = float(np.max(np.abs(escaping), initial=0.0))
    residual = max(details.values(), default=0.0)
    return ValidationReport(name="ideal condition", residual=residual, tolerance=tolerance, details=details)
