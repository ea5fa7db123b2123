"""
Euler-Poincare and Euler-d'Alembert-Poincare equations by stages for quadratic Lagrangians on a Lie algebra.

Two routes lead to the momentum equation d/dt beta (xi) = <beta, [v, xi]>:
    - the pairing route (ep_rhs, edp_residual, edp_rhs) pairs beta with bracket_by_stages(v, xi);
    - the block route (coadjoint_by_stages, ep_rhs_by_blocks, edp_residual_by_blocks) writes the equation block by
      block in staged coordinates with the quotient coadjoint terms and the b- and a-forms of the stages.
Both give the same result. Restricting the block route to the terms that land in the block of the test vector
(include_cross_stage_terms=False) drops contributions of the form -a^(k)_{i+1}(eta^i, xi), b^(k)_{j+1}(eta^j, xi)
and -b^(k)_{i+1}(xi, tail_{i+1}(eta)) with k > i; that variant is kept for comparisons and agrees with the
full equations only when the forms vanish.
"""
import logging
from typing import List

import numpy as np
from scipy.linalg import cho_factor, cho_solve, LinAlgError

from staged_reduction.common.errors import SingularSystemError, StructuralError
from staged_reduction.entities.dynamics.constraint_subspace import ConstraintSubspace, MEMBERSHIP_TOLERANCE
from staged_reduction.entities.dynamics.quadratic_lagrangian import QuadraticLagrangian
from staged_reduction.entities.stages.staged_structure import StagedStructure

CROSS_STAGE_WARNING_TOLERANCE = 10**(-12)


def _check_dimensions(staged: StagedStructure, lag: QuadraticLagrangian) -> None:
    if staged.dim != lag.dim:
        raise StructuralError(f"Lagrangian has dimension {lag.dim} while the algebra has dimension {staged.dim}")


def fiber_derivative(lag: QuadraticLagrangian, v: np.ndarray) -> np.ndarray:
    """ beta = dl/dv = mass v """
    return lag.momentum(v)


def momentum_blocks(staged: StagedStructure, beta: np.ndarray) -> List[np.ndarray]:
    """ block components beta_(i,i+1) of a momentum, in staged coordinates """
    staged_beta = staged.staged_covector(beta)
    return [staged_beta[staged.chain.block_slice(i)] for i in range(len(staged.chain.blocks))]


def allowed_variation(staged: StagedStructure, v: np.ndarray, omega: np.ndarray, omega_dot: np.ndarray) -> np.ndarray:
    """
    Variation of the body velocity induced by a curve omega(t) in the algebra: delta v = omega_dot + [v, omega],
    with the bracket computed by stages.
    """
    omega_dot = staged.alg.check_vector(omega_dot, "omega_dot")
    return omega_dot + staged.bracket_by_stages(v, omega)


def _staged_brackets(staged: StagedStructure, v: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """ columns: bracket_by_stages(v, vectors[:, k]) """
    v = staged.alg.check_vector(v, "v")
    return np.einsum("i,jk,ijm->mk", v, vectors, staged.staged_bracket_tensor)


def ep_rhs(staged: StagedStructure, lag: QuadraticLagrangian, v: np.ndarray) -> np.ndarray:
    """
    Euler-Poincare equations: d/dt beta = ad_star(v, beta) with beta = mass v, the coadjoint term being evaluated
    as xi -> <beta, bracket_by_stages(v, xi)>.
    :return: v_dot = mass^{-1} d/dt beta
    """
    _check_dimensions(staged, lag)
    beta = lag.momentum(v)
    beta_dot = beta @ _staged_brackets(staged, v, np.eye(staged.dim))
    return lag.velocity(beta_dot)


def coadjoint_by_stages(staged: StagedStructure, beta: np.ndarray, v: np.ndarray,
                        include_cross_stage_terms: bool = True) -> np.ndarray:
    """
    Staged covector xi^(i) -> <beta, [v, xi^(i)]>, written block by block. For a test vector xi in block i
    (staged coordinates) with eta = staged_components(v):
        block i    : <beta_(i), [eta^i, xi]_(i)> + sum_{j<i} <beta_(i), b^(i)_{j+1}(eta^j, xi)>
        blocks k>i : sum_{j<i} <beta_(k), b^(k)_{j+1}(eta^j, xi)>
                     - <beta_(k), a^(k)_{i+1}(eta^i, xi) + b^(k)_{i+1}(xi, tail_{i+1}(eta))>
    :param staged: staged structure
    :param beta: momentum (algebra covector)
    :param v: body velocity
    :param include_cross_stage_terms: if False only the block-i line is kept
    :return: covector in staged coordinates (pair it with staged components)
    """
    eta = staged.staged_components(v)
    staged_beta = staged.staged_covector(beta)
    beta_blocks = [staged_beta[staged.chain.block_slice(k)] for k in range(len(staged.chain.blocks))]
    num_blocks = len(beta_blocks)

    result = np.zeros(staged.dim)
    for i, size in enumerate(staged.chain.blocks):
        for p in range(size):
            zeta = np.zeros(size)
            zeta[p] = 1.0
            xi = staged.element(i, zeta)
            value = beta_blocks[i] @ staged.quotient_bracket(i, eta[i], zeta)
            for j in range(i):
                components = staged.b_components(j + 1, eta[j], xi)
                value += beta_blocks[i] @ components[i]
                if include_cross_stage_terms:
                    value += sum(beta_blocks[k] @ components[k] for k in range(i + 1, num_blocks))
            if include_cross_stage_terms and i < staged.num_stages:
                correction = staged.a_form(i + 1, eta[i], zeta) + staged.b_form(i + 1, zeta, staged.tail(eta, i + 1))
                components = staged.staged_components(correction)
                value -= sum(beta_blocks[k] @ components[k] for k in range(i + 1, num_blocks))
            result[staged.chain.offset(i) + p] = value
    return result


def ep_rhs_by_blocks(staged: StagedStructure, lag: QuadraticLagrangian, v: np.ndarray,
                     include_cross_stage_terms: bool = True) -> np.ndarray:
    """
    Euler-Poincare equations assembled block by block from coadjoint_by_stages.
    :return: v_dot
    """
    _check_dimensions(staged, lag)
    beta = lag.momentum(v)
    staged_beta_dot = coadjoint_by_stages(staged, beta, v, include_cross_stage_terms=include_cross_stage_terms)
    v_dot = lag.velocity(staged.covector_from_staged(staged_beta_dot))
    if not include_cross_stage_terms:
        deviation = float(np.max(np.abs(v_dot - ep_rhs(staged, lag, v))))
        if deviation > CROSS_STAGE_WARNING_TOLERANCE:
            logging.warning(f"block-restricted Euler-Poincare equations deviate from the full equations by "
                            f"{deviation:.3e} at v={v}")
    return v_dot


def edp_residual(staged: StagedStructure, lag: QuadraticLagrangian, v: np.ndarray, v_dot: np.ndarray,
                 constraint: ConstraintSubspace, tolerance: float = MEMBERSHIP_TOLERANCE) -> np.ndarray:
    """
    Euler-d'Alembert-Poincare residuals, one per basis column s_k of the constraint subspace:
        <mass v_dot, s_k> - <mass v, bracket_by_stages(v, s_k)>
    :raises ConstraintViolation: if v is not in the constraint subspace (relative distance above tolerance)
    """
    _check_dimensions(staged, lag)
    constraint.check_member(v, tolerance=tolerance)
    basis = constraint.basis
    forcing = lag.momentum(v) @ _staged_brackets(staged, v, basis)
    return basis.T @ (lag.mass @ staged.alg.check_vector(v_dot, "v_dot")) - forcing


def edp_residual_by_blocks(staged: StagedStructure, lag: QuadraticLagrangian, v: np.ndarray, v_dot: np.ndarray,
                           constraint: ConstraintSubspace, include_cross_stage_terms: bool = True,
                           tolerance: float = MEMBERSHIP_TOLERANCE) -> np.ndarray:
    """
    Residuals of the block-diagonal case S = S_(0,1) + ... + S_(n,n+1), evaluated block by block in staged
    coordinates; ordered like the basis columns of ConstraintSubspace.from_blocks.
    """
    _check_dimensions(staged, lag)
    if constraint.block_bases is None:
        raise StructuralError("block-wise residuals need a block-diagonal constraint (ConstraintSubspace.from_blocks)")
    constraint.check_member(v, tolerance=tolerance)
    staged_beta_dot = staged.staged_covector(lag.mass @ staged.alg.check_vector(v_dot, "v_dot"))
    coadjoint = coadjoint_by_stages(staged, lag.momentum(v), v, include_cross_stage_terms=include_cross_stage_terms)
    residuals = []
    for i, block_basis in enumerate(constraint.block_bases):
        block = staged.chain.block_slice(i)
        residuals.append(block_basis.T @ (staged_beta_dot[block] - coadjoint[block]))
    return np.concatenate(residuals)


def edp_rhs(staged: StagedStructure, lag: QuadraticLagrangian, constraint: ConstraintSubspace,
            c: np.ndarray) -> np.ndarray:
    """
    Constrained equations in the coordinates c of the constraint basis (v = basis c):
        (basis^T mass basis) c_dot = [<mass v, bracket_by_stages(v, s_k)>]_k
    :return: c_dot
    """
    _check_dimensions(staged, lag)
    c = np.asarray(c, dtype=float)
    if c.shape != (constraint.rank,):
        raise StructuralError(f"c should have shape ({constraint.rank},), got {c.shape}")
    basis = constraint.basis
    v = basis @ c
    reduced_mass = basis.T @ lag.mass @ basis
    forcing = lag.momentum(v) @ _staged_brackets(staged, v, basis)
    try:
        factor = cho_factor(reduced_mass)
    except LinAlgError:
        raise SingularSystemError("reduced mass matrix is not positive definite",
                                  condition_number=float(np.linalg.cond(reduced_mass)))
    return cho_solve(factor, forcing)
