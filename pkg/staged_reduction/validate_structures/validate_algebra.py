from typing import List

import numpy as np

from staged_reduction.entities.algebra.lie_algebra import LieAlgebraSpec
from staged_reduction.entities.output.validation_report import ValidationReport

ALGEBRA_TOLERANCE = 10**(-12)


def antisymmetry_residual(alg: LieAlgebraSpec) -> float:
    """ max_ijk |c[i, j, k] + c[j, i, k]| """
    constants = alg.structure_constants
    return float(np.max(np.abs(constants + constants.transpose(1, 0, 2))))


def jacobi_residual(alg: LieAlgebraSpec) -> float:
    """ max over basis triples of the components of [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] """
    constants = alg.structure_constants
    # double[i, j, k, m] = components m of [e_i, [e_j, e_k]]
    double = np.einsum("jkl,ilm->ijkm", constants, constants)
    cyclic = double + double.transpose(1, 2, 0, 3) + double.transpose(2, 0, 1, 3)
    return float(np.max(np.abs(cyclic)))


def validate_algebra(alg: LieAlgebraSpec, tolerance: float = ALGEBRA_TOLERANCE) -> List[ValidationReport]:
    """
    Check the Lie-algebra axioms on the structure constants.
    :param alg: algebra to check
    :param tolerance: both residuals must be at most this value
    :return: one report for antisymmetry and one for the Jacobi identity
    """
    return [ValidationReport(name="antisymmetry", residual=antisymmetry_residual(alg), tolerance=tolerance),
            ValidationReport(name="jacobi", residual=jacobi_residual(alg), tolerance=tolerance)]
