from __future__ import annotations

from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from staged_reduction.common.errors import ConstraintViolation, StructuralError

RANK_TOLERANCE = 10**(-12)
GRAPH_TOLERANCE = 10**(-12)
MEMBERSHIP_TOLERANCE = 10**(-8)


class ConstraintSubspace:
    """
    Subspace S of the Lie algebra to which the body velocity is constrained.

    S is given by a basis (columns) and can be written as the graph of a linear map: a set A of s independent
    coordinates eps, the remaining (dependent) coordinates being h = phi eps. Elements of S are then
    v = sum_{a in A} eps_a e_a + sum_{l not in A} h_l(eps) e_l.
    """
    def __init__(self, basis: np.ndarray, independent: Optional[List[int]] = None,
                 phi: Optional[np.ndarray] = None, block_bases: Optional[List[np.ndarray]] = None) -> None:
        """
        :param basis: matrix of shape (dim, s) whose columns span S
        :param independent: optional graph representation: the s independent coordinate indices
        :param phi: optional graph representation: matrix of shape (dim - s, s) mapping the independent
        coordinates to the dependent ones (dependent indices in increasing order)
        :param block_bases: for block-diagonal subspaces S = S_(0,1) + ... + S_(n,n+1), the basis of every
        S_(i,i+1) in block-i staged coordinates (only set by from_blocks)
        """
        self.basis = np.array(basis, dtype=float)
        if self.basis.ndim == 1:
            self.basis = self.basis.reshape(-1, 1)
        self._independent = None if independent is None else [int(index) for index in independent]
        self._phi = None if phi is None else np.array(phi, dtype=float)
        self.block_bases = None if block_bases is None else [np.array(block, dtype=float) for block in block_bases]
        self._validate()
        self.basis.setflags(write=False)
        self._orthonormal, _ = np.linalg.qr(self.basis)

        if self._independent is None:
            self._independent, self._phi = self._compute_graph()
        self._dependent = [index for index in range(self.dim) if index not in self._independent]

    def _validate(self) -> None:
        if self.basis.ndim != 2:
            raise StructuralError(f"constraint basis should be a matrix, got shape {self.basis.shape}")
        if not np.all(np.isfinite(self.basis)):
            raise StructuralError("constraint basis must be finite")
        dim, s = self.basis.shape
        if s == 0 or s > dim:
            raise StructuralError(f"constraint basis should have between 1 and {dim} columns, got {s}")
        singular_values = np.linalg.svd(self.basis, compute_uv=False)
        if singular_values[-1] <= RANK_TOLERANCE * singular_values[0]:
            raise StructuralError(f"constraint basis does not have full column rank {s}")
        if (self._independent is None) != (self._phi is None):
            raise StructuralError("a graph representation needs both the independent indices and phi")
        if self._independent is not None:
            self._validate_graph(dim, s)

    def _validate_graph(self, dim: int, s: int) -> None:
        if len(self._independent) != s or len(set(self._independent)) != s:
            raise StructuralError(f"graph should have {s} distinct independent indices, got {self._independent}")
        if any(not 0 <= index < dim for index in self._independent):
            raise StructuralError(f"independent indices should lie in [0, {dim}), got {self._independent}")
        if self._phi.shape != (dim - s, s):
            raise StructuralError(f"phi should have shape {(dim - s, s)}, got {self._phi.shape}")
        graph_basis = _graph_basis(dim, self._independent, self._phi)
        residual = max(_projection_residual(self.basis, graph_basis), _projection_residual(graph_basis, self.basis))
        if residual > GRAPH_TOLERANCE:
            raise StructuralError(f"graph representation does not span the subspace of the basis "
                                  f"(residual {residual:.3e})")

    def _compute_graph(self) -> Tuple[List[int], np.ndarray]:
        """
        Choose the independent coordinates by row-pivoted elimination on the basis (largest pivot, ties broken by
        the lowest index) and solve for phi.
        """
        dim, s = self.basis.shape
        work = self.basis.copy()
        chosen = []
        for column in range(s):
            candidates = [row for row in range(dim) if row not in chosen]
            pivot_row = candidates[int(np.argmax(np.abs(work[candidates, column])))]
            chosen.append(pivot_row)
            for other in range(column + 1, s):
                work[:, other] -= work[pivot_row, other] / work[pivot_row, column] * work[:, column]
        independent = sorted(chosen)
        dependent = [index for index in range(dim) if index not in independent]
        # phi = basis[dependent] basis[independent]^{-1}
        factor = lu_factor(self.basis[independent, :].T)
        phi = lu_solve(factor, self.basis[dependent, :].T).T
        return independent, phi

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def rank(self) -> int:
        return self.basis.shape[1]

    def graph(self) -> Tuple[List[int], np.ndarray]:
        """ graph representation (independent indices, phi) """
        return list(self._independent), self._phi.copy()

    def element(self, eps: np.ndarray) -> np.ndarray:
        """ element of S with independent coordinates eps """
        eps = np.asarray(eps, dtype=float)
        if eps.shape != (self.rank,):
            raise StructuralError(f"eps should have shape ({self.rank},), got {eps.shape}")
        v = np.zeros(self.dim)
        v[self._independent] = eps
        v[self._dependent] = self._phi @ eps
        return v

    def independent_coordinates(self, v: np.ndarray) -> np.ndarray:
        return np.asarray(v, dtype=float)[self._independent]

    def coefficients(self, v: np.ndarray) -> np.ndarray:
        """ coordinates c of v in the basis, v = basis c (least squares for v outside S) """
        coefficients, _, _, _ = np.linalg.lstsq(self.basis, np.asarray(v, dtype=float), rcond=None)
        return coefficients

    def membership_residual(self, v: np.ndarray) -> float:
        """ distance from v to S, relative to max(1, |v|) """
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,):
            raise StructuralError(f"velocity should have shape ({self.dim},), got {v.shape}")
        distance = np.linalg.norm(v - self._orthonormal @ (self._orthonormal.T @ v))
        return float(distance / max(1.0, np.linalg.norm(v)))

    def check_member(self, v: np.ndarray, tolerance: float = MEMBERSHIP_TOLERANCE) -> None:
        residual = self.membership_residual(v)
        if residual > tolerance:
            raise ConstraintViolation(f"velocity {v} is not in the constraint subspace (distance {residual:.3e})")

    @staticmethod
    def full(dim: int) -> ConstraintSubspace:
        """ S equal to the whole algebra """
        return ConstraintSubspace(basis=np.eye(dim))

    @staticmethod
    def from_graph(dim: int, independent: List[int], phi: np.ndarray) -> ConstraintSubspace:
        """ subspace given only by its graph; the basis columns are the elements with eps equal to unit vectors """
        phi = np.array(phi, dtype=float).reshape(dim - len(independent), len(independent))
        return ConstraintSubspace(basis=_graph_basis(dim, list(independent), phi), independent=independent, phi=phi)

    @staticmethod
    def from_blocks(staged, block_bases: List[np.ndarray]) -> ConstraintSubspace:
        """
        Block-diagonal subspace: S_(i,i+1) is spanned by the columns of block_bases[i] (block-i staged
        coordinates, possibly without columns) and embedded through the staged identification.
        :param staged: StagedStructure defining the staged identification
        :param block_bases: one matrix of shape (d_i, s_i) per block
        """
        if len(block_bases) != len(staged.chain.blocks):
            raise StructuralError(f"expected {len(staged.chain.blocks)} block bases, got {len(block_bases)}")
        assemble_matrix = staged.assemble_matrix
        columns = []
        checked = []
        for i, block_basis in enumerate(block_bases):
            block_basis = np.array(block_basis, dtype=float).reshape(staged.chain.blocks[i], -1)
            checked.append(block_basis)
            columns.append(assemble_matrix[:, staged.chain.block_slice(i)] @ block_basis)
        return ConstraintSubspace(basis=np.hstack(columns), block_bases=checked)

    def to_json(self) -> Dict:
        json_dict = {"basis": self.basis.T.tolist()}
        json_dict["graph"] = {"independent": list(self._independent), "phi": self._phi.tolist()}
        return json_dict

    @staticmethod
    def from_json(constraint_dict: Dict, staged) -> ConstraintSubspace:
        """
        Loading a constraint from json. Exactly one of the fields
            - "basis": list of the s basis columns (column-major), each a list of dim numbers
            - "graph": {"independent": [...], "phi": (dim - s) x s matrix}
            - "blocks": one list of columns per block, in block coordinates (the block-diagonal case)
        must be present.
        """
        present = [key for key in ["basis", "graph", "blocks"] if key in constraint_dict]
        if len(present) != 1:
            raise StructuralError(f"constraint should have exactly one of 'basis', 'graph', 'blocks'; got {present}")
        if "basis" in constraint_dict:
            columns = np.array(constraint_dict["basis"], dtype=float)
            if columns.ndim != 2 or columns.shape[1] != staged.dim:
                raise StructuralError(f"every constraint basis column should have {staged.dim} entries")
            return ConstraintSubspace(basis=columns.T)
        if "graph" in constraint_dict:
            graph = constraint_dict["graph"]
            if "independent" not in graph or "phi" not in graph:
                raise StructuralError("graph should have the fields 'independent' and 'phi'")
            return ConstraintSubspace.from_graph(dim=staged.dim, independent=graph["independent"], phi=graph["phi"])
        block_bases = []
        for i, block_columns in enumerate(constraint_dict["blocks"]):
            columns = np.array(block_columns, dtype=float).reshape(-1, staged.chain.blocks[i])
            block_bases.append(columns.T)
        return ConstraintSubspace.from_blocks(staged, block_bases)

    def __repr__(self):
        return f"ConstraintSubspace(dim={self.dim}, rank={self.rank}, independent={self._independent})"


def _graph_basis(dim: int, independent: List[int], phi: np.ndarray) -> np.ndarray:
    dependent = [index for index in range(dim) if index not in independent]
    basis = np.zeros((dim, len(independent)))
    basis[independent, :] = np.eye(len(independent))
    basis[dependent, :] = phi
    return basis


def _projection_residual(subspace_basis: np.ndarray, vectors: np.ndarray) -> float:
    """ largest relative distance of the columns of vectors to the span of subspace_basis """
    orthonormal, _ = np.linalg.qr(subspace_basis)
    distances = np.linalg.norm(vectors - orthonormal @ (orthonormal.T @ vectors), axis=0)
    return float(np.max(distances / np.maximum(1.0, np.linalg.norm(vectors, axis=0))))
