from typing import Dict, List, Optional

import numpy as np
from scipy.linalg import cho_factor, cho_solve, solve_triangular, LinAlgError

from staged_reduction.common.errors import InvariantViolation, SingularSystemError, StructuralError
from staged_reduction.entities.algebra.lie_algebra import LieAlgebraSpec
from staged_reduction.entities.stages.stage_chain import InvariantMetric, StageChain
from staged_reduction.validate_structures.validate_chain import validate_chain

FORM_TOLERANCE = 10**(-12)


class StagedStructure:
    """
    A Lie algebra together with a chain of nested ideals and an inner product, and everything the reduction by
    stages derives from them: the horizontal lifts of every stage, the staged identification
    g = n_(0,1) + n_(1,2) + ... + n_(n,n+1) and the bilinear forms a and b.

    Staged components: the component of u in block 0 is its block-0 coordinate vector kappa; the remainder
    u - horizontal_lift(1, kappa) lies in n_1 and is split in the same way with the connection of the next stage.
    For a block-orthogonal metric this is the plain coordinate split.
    """
    def __init__(self, alg: LieAlgebraSpec, chain: StageChain, metric: InvariantMetric,
                 tolerance: float = FORM_TOLERANCE) -> None:
        """
        :param alg: the Lie algebra g
        :param chain: block layout of the nested ideals; the ideal condition must hold (InvariantViolation otherwise)
        :param metric: inner product on g defining the connection of every stage
        :param tolerance: tolerance for the ideal condition and for the form values leaving n_j
        """
        self.alg = alg
        self.chain = chain
        self.metric = metric
        self.tolerance = float(tolerance)
        self._validate()

        self._lift_matrices: Dict[int, np.ndarray] = {}
        for j in range(1, self.num_stages + 1):
            self._lift_matrices[j] = self._compute_lift_matrix(j)
        self._assemble_matrix = self._compute_assemble_matrix()

        self.b_tensors: Dict[int, np.ndarray] = {}
        self.a_tensors: Dict[int, np.ndarray] = {}
        self.build_forms()
        self._staged_bracket_tensor: Optional[np.ndarray] = None

    def _validate(self) -> None:
        self.chain.check_dim(self.alg.dim)
        if self.metric.dim != self.alg.dim:
            raise StructuralError(f"metric has dimension {self.metric.dim} while the algebra has dimension "
                                  f"{self.alg.dim}")
        validate_chain(alg=self.alg, chain=self.chain, tolerance=self.tolerance).raise_if_failed(InvariantViolation)

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def num_stages(self) -> int:
        return self.chain.num_stages

    def _check_stage(self, j: int) -> None:
        if not 1 <= j <= self.num_stages:
            raise StructuralError(f"stage index should be in [1, {self.num_stages}], got {j}")

    def _check_block_vector(self, i: int, kappa: np.ndarray, name: str = "kappa") -> np.ndarray:
        kappa = np.asarray(kappa, dtype=float)
        if kappa.shape != (self.chain.blocks[i],):
            raise StructuralError(f"{name} should have shape ({self.chain.blocks[i]},) (block {i}), "
                                  f"got {kappa.shape}")
        return kappa

    def _check_in_ideal(self, j: int, v: np.ndarray, name: str) -> np.ndarray:
        """ v must be an algebra vector of n_j: its components before offset(j) vanish """
        v = self.alg.check_vector(v, name)
        start = self.chain.offset(j)
        if np.max(np.abs(v[:start]), initial=0.0) > self.tolerance * max(1.0, float(np.max(np.abs(v)))):
            raise StructuralError(f"{name} should lie in n_{j}; it has components in the first {start} coordinates")
        return v

    def embed(self, i: int, kappa: np.ndarray) -> np.ndarray:
        """ iota: block-i coordinates -> algebra vector """
        kappa = self._check_block_vector(i, kappa)
        vector = np.zeros(self.dim)
        vector[self.chain.block_slice(i)] = kappa
        return vector

    def _compute_lift_matrix(self, j: int) -> np.ndarray:
        """ columns: horizontal lifts of the basis vectors of block j-1 """
        gram = self.metric.gram
        block = self.chain.block_slice(j - 1)
        start = self.chain.offset(j)
        lift = np.zeros((self.dim, self.chain.blocks[j - 1]))
        lift[block, :] = np.eye(self.chain.blocks[j - 1])
        try:
            factor = cho_factor(gram[start:, start:])
        except LinAlgError:
            raise SingularSystemError(f"the metric restricted to n_{j} is not positive definite",
                                      condition_number=float(np.linalg.cond(gram[start:, start:])))
        # correction in n_j such that <lift, eta> = 0 for every eta in n_j
        lift[start:, :] = -cho_solve(factor, gram[start:, block])
        return lift

    def horizontal_lift(self, j: int, kappa: np.ndarray) -> np.ndarray:
        """
        Horizontal lift of stage j: the unique w in n_{j-1} with w - iota(kappa) in n_j and w orthogonal to n_j.
        :param j: stage, 1 <= j <= n
        :param kappa: coordinates in block j-1
        :return: algebra vector
        """
        self._check_stage(j)
        kappa = self._check_block_vector(j - 1, kappa)
        return self._lift_matrices[j] @ kappa

    def connection_project(self, j: int, v: np.ndarray) -> np.ndarray:
        """
        Connection of stage j at the identity: the n_j-component of v in n_{j-1} = horizontal + n_j.
        :param j: stage, 1 <= j <= n
        :param v: algebra vector of n_{j-1}
        :return: algebra vector of n_j
        """
        self._check_stage(j)
        v = self._check_in_ideal(j - 1, v, "v")
        projection = v - self._lift_matrices[j] @ v[self.chain.block_slice(j - 1)]
        projection[:self.chain.offset(j)] = 0.0
        return projection

    def _compute_assemble_matrix(self) -> np.ndarray:
        """ unit lower-triangular matrix mapping staged components to algebra coordinates """
        columns = [self._lift_matrices[i + 1] for i in range(self.num_stages)]
        last = np.zeros((self.dim, self.chain.blocks[-1]))
        last[self.chain.block_slice(self.num_stages), :] = np.eye(self.chain.blocks[-1])
        columns.append(last)
        return np.hstack(columns)

    @property
    def assemble_matrix(self) -> np.ndarray:
        return self._assemble_matrix.copy()

    def staged_components(self, u: np.ndarray) -> List[np.ndarray]:
        """ split an algebra vector into its staged components eta^(0), ..., eta^(n) """
        u = self.alg.check_vector(u, "u")
        flat = solve_triangular(self._assemble_matrix, u, lower=True, unit_diagonal=True)
        return [flat[self.chain.block_slice(i)] for i in range(len(self.chain.blocks))]

    def assemble(self, components: List[np.ndarray]) -> np.ndarray:
        """ inverse of staged_components """
        if len(components) != len(self.chain.blocks):
            raise StructuralError(f"expected {len(self.chain.blocks)} staged components, got {len(components)}")
        flat = np.concatenate([self._check_block_vector(i, component, f"component {i}")
                               for i, component in enumerate(components)])
        return self._assemble_matrix @ flat

    def element(self, i: int, eta: np.ndarray) -> np.ndarray:
        """ algebra vector whose only nonzero staged component is eta in block i """
        components = [np.zeros(size) for size in self.chain.blocks]
        components[i] = self._check_block_vector(i, eta, "eta")
        return self.assemble(components)

    def tail(self, components: List[np.ndarray], j: int) -> np.ndarray:
        """ algebra vector of n_j assembled from the staged components of the blocks j, ..., n """
        kept = [component if i >= j else np.zeros_like(component) for i, component in enumerate(components)]
        return self.assemble(kept)

    def staged_covector(self, beta: np.ndarray) -> np.ndarray:
        """ covector in staged coordinates: <beta, assemble(s)> = <staged_covector(beta), s> """
        beta = self.alg.check_vector(beta, "beta")
        return self._assemble_matrix.T @ beta

    def covector_from_staged(self, staged_beta: np.ndarray) -> np.ndarray:
        """ inverse of staged_covector """
        staged_beta = self.alg.check_vector(staged_beta, "staged_beta")
        return solve_triangular(self._assemble_matrix.T, staged_beta, lower=False, unit_diagonal=True)

    def quotient_bracket(self, i: int, eta: np.ndarray, eta_bar: np.ndarray) -> np.ndarray:
        """ bracket of n_i / n_{i+1} in block-i coordinates """
        bracket = self.alg.bracket(self.embed(i, eta), self.embed(i, eta_bar))
        return bracket[self.chain.block_slice(i)]

    def build_forms(self) -> None:
        """
        Compute, for every stage j, the forms
            b_j(kappa, eta) = [horizontal_lift(j, kappa), eta]                                for eta in n_j
            a_j(kappa, kappa_bar) = -connection_project(j, [lift(kappa), lift(kappa_bar)])
        stored as tensors b_tensors[j][p, q, k] and a_tensors[j][p, r, k] (k: algebra coordinate of the value).
        Raises InvariantViolation when a value leaves n_j.
        """
        constants = self.alg.structure_constants
        for j in range(1, self.num_stages + 1):
            lift = self._lift_matrices[j]
            start = self.chain.offset(j)
            block = self.chain.block_slice(j - 1)

            b_tensor = np.einsum("ip,ijk->pjk", lift, constants)
            b_tensor[:, :start, :] = 0.0
            self._check_form_values(j, b_tensor, "b")

            lifted_brackets = np.einsum("ip,jr,ijk->prk", lift, lift, constants)
            a_tensor = -(lifted_brackets - np.einsum("kq,prq->prk", lift, lifted_brackets[:, :, block]))
            self._check_form_values(j, a_tensor, "a")

            b_tensor[:, :, :start] = 0.0
            a_tensor[:, :, :start] = 0.0
            b_tensor.setflags(write=False)
            a_tensor.setflags(write=False)
            self.b_tensors[j] = b_tensor
            self.a_tensors[j] = a_tensor

    def _check_form_values(self, j: int, tensor: np.ndarray, name: str) -> None:
        start = self.chain.offset(j)
        scale = max(1.0, float(np.max(np.abs(tensor), initial=0.0)))
        escaping = float(np.max(np.abs(tensor[..., :start]), initial=0.0))
        if escaping > self.tolerance * scale:
            raise InvariantViolation(f"values of the form {name} of stage {j} leave n_{j} "
                                     f"(component {escaping:.3e} outside)")

    def b_form(self, j: int, kappa: np.ndarray, eta: np.ndarray) -> np.ndarray:
        """ b_j(kappa, eta) for kappa in block j-1 and eta an algebra vector of n_j; value in n_j """
        self._check_stage(j)
        kappa = self._check_block_vector(j - 1, kappa)
        eta = self._check_in_ideal(j, eta, "eta")
        return np.einsum("p,q,pqk->k", kappa, eta, self.b_tensors[j])

    def a_form(self, j: int, kappa: np.ndarray, kappa_bar: np.ndarray) -> np.ndarray:
        """ a_j(kappa, kappa_bar) for kappa, kappa_bar in block j-1; value in n_j """
        self._check_stage(j)
        kappa = self._check_block_vector(j - 1, kappa)
        kappa_bar = self._check_block_vector(j - 1, kappa_bar, "kappa_bar")
        return np.einsum("p,r,prk->k", kappa, kappa_bar, self.a_tensors[j])

    def b_components(self, j: int, kappa: np.ndarray, eta: np.ndarray) -> List[np.ndarray]:
        """ per-block components b^(i, i+1) of b_j(kappa, eta); the blocks i < j are zero """
        return self.staged_components(self.b_form(j, kappa, eta))

    def a_components(self, j: int, kappa: np.ndarray, kappa_bar: np.ndarray) -> List[np.ndarray]:
        """ per-block components a^(i, i+1) of a_j(kappa, kappa_bar); the blocks i < j are zero """
        return self.staged_components(self.a_form(j, kappa, kappa_bar))

    def bracket_by_stages(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """
        Bracket assembled block by block from the staged components eta = staged(u), eta_bar = staged(v):
            block i:  [eta^(i), eta_bar^(i)]
                      + sum_{j<i} ( -a^(i)_{j+1}(eta^(j), eta_bar^(j))
                                    + b^(i)_{j+1}(eta^(j), sum_{k>j} eta_bar^(k))
                                    - b^(i)_{j+1}(eta_bar^(j), sum_{l>j} eta^(l)) )
        The result equals alg.bracket(u, v) for every chain and metric.
        """
        eta = self.staged_components(u)
        eta_bar = self.staged_components(v)
        result = [self.quotient_bracket(i, eta[i], eta_bar[i]) for i in range(len(eta))]
        for j in range(self.num_stages):
            stage = j + 1
            correction = -self.a_form(stage, eta[j], eta_bar[j]) \
                + self.b_form(stage, eta[j], self.tail(eta_bar, stage)) \
                - self.b_form(stage, eta_bar[j], self.tail(eta, stage))
            correction_components = self.staged_components(correction)
            for i in range(stage, len(result)):
                result[i] = result[i] + correction_components[i]
        return self.assemble(result)

    @property
    def staged_bracket_tensor(self) -> np.ndarray:
        """
        Tensor t[i, j, k] = component k of bracket_by_stages(e_i, e_j); computed once by a sweep over the basis
        pairs and reused by the equations of motion.
        """
        if self._staged_bracket_tensor is None:
            tensor = np.zeros((self.dim, self.dim, self.dim))
            for i in range(self.dim):
                for j in range(self.dim):
                    tensor[i, j, :] = self.bracket_by_stages(self.alg.basis_vector(i), self.alg.basis_vector(j))
            tensor.setflags(write=False)
            self._staged_bracket_tensor = tensor
        return self._staged_bracket_tensor

    def expand_two_stage(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """
        Two-stage bracket with u = lift(kappa) + eta, v = lift(kappa_bar) + eta_bar (eta, eta_bar in n_1):
            [u, v] = [kappa, kappa_bar] (+) ( b(kappa, eta_bar) - b(kappa_bar, eta) - a(kappa, kappa_bar)
                                             + [eta, eta_bar] )
        """
        if len(self.chain.blocks) != 2:
            raise StructuralError(f"expand_two_stage needs a chain with 2 blocks, got {self.chain.blocks}")
        eta = self.staged_components(u)
        eta_bar = self.staged_components(v)
        kappa, kappa_bar = eta[0], eta_bar[0]
        rest, rest_bar = self.tail(eta, 1), self.tail(eta_bar, 1)
        quotient_part = self.horizontal_lift(1, self.quotient_bracket(0, kappa, kappa_bar))
        ideal_part = self.b_form(1, kappa, rest_bar) - self.b_form(1, kappa_bar, rest) \
            - self.a_form(1, kappa, kappa_bar) + self.alg.bracket(rest, rest_bar)
        return quotient_part + ideal_part

    def expand_three_stage(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """
        Three-block bracket written out term by term (stage 1 forms b_1, a_1 act on block 0, stage 2 forms b_2,
        a_2 on block 1; superscripts select the block of the value):
            block 0: [eta0, eta0_bar]
            block 1: [eta1, eta1_bar] + b_1^(1)(eta0, eta1_bar) + b_1^(1)(eta0, eta2_bar)
                     - b_1^(1)(eta0_bar, eta1) - b_1^(1)(eta0_bar, eta2) - a_1^(1)(eta0, eta0_bar)
            block 2: [eta2, eta2_bar] + b_1^(2)(eta0, eta1_bar) + b_1^(2)(eta0, eta2_bar)
                     - b_1^(2)(eta0_bar, eta1) - b_1^(2)(eta0_bar, eta2) - a_1^(2)(eta0, eta0_bar)
                     + b_2^(2)(eta1, eta2_bar) - b_2^(2)(eta1_bar, eta2) - a_2^(2)(eta1, eta1_bar)
        """
        if len(self.chain.blocks) != 3:
            raise StructuralError(f"expand_three_stage needs a chain with 3 blocks, got {self.chain.blocks}")
        eta0, eta1, eta2 = self.staged_components(u)
        eta0_bar, eta1_bar, eta2_bar = self.staged_components(v)
        # eta1, eta2 as elements of n_1 and n_2
        e1, e2 = self.element(1, eta1), self.element(2, eta2)
        e1_bar, e2_bar = self.element(1, eta1_bar), self.element(2, eta2_bar)

        def b1(i, kappa, eta):
            return self.b_components(1, kappa, eta)[i]

        def a1(i, kappa, kappa_bar):
            return self.a_components(1, kappa, kappa_bar)[i]

        def b2(i, kappa, eta):
            return self.b_components(2, kappa, eta)[i]

        def a2(i, kappa, kappa_bar):
            return self.a_components(2, kappa, kappa_bar)[i]

        block0 = self.quotient_bracket(0, eta0, eta0_bar)
        block1 = self.quotient_bracket(1, eta1, eta1_bar) + b1(1, eta0, e1_bar) + b1(1, eta0, e2_bar) \
            - b1(1, eta0_bar, e1) - b1(1, eta0_bar, e2) - a1(1, eta0, eta0_bar)
        block2 = self.quotient_bracket(2, eta2, eta2_bar) + b1(2, eta0, e1_bar) + b1(2, eta0, e2_bar) \
            - b1(2, eta0_bar, e1) - b1(2, eta0_bar, e2) - a1(2, eta0, eta0_bar) \
            + b2(2, eta1, e2_bar) - b2(2, eta1_bar, e2) - a2(2, eta1, eta1_bar)
        return self.assemble([block0, block1, block2])

    def __repr__(self):
        return f"StagedStructure(alg={self.alg}, blocks={self.chain.blocks})"
