from __future__ import annotations

from typing import Dict, List, Union

import numpy as np
from scipy.linalg import cho_factor, LinAlgError

from staged_reduction.common.errors import StructuralError

SYMMETRY_TOLERANCE = 10**(-14)


class StageChain:
    def __init__(self, blocks: List[int]) -> None:
        """
        Layout of a chain of nested ideals g = n_0 > n_1 > ... > n_n > {0}
        :param blocks: sizes d_0, ..., d_n; block i occupies consecutive basis indices and models n_(i, i+1), while
        n_j is spanned by the blocks j, ..., n
        """
        if not isinstance(blocks, (list, tuple)) or len(blocks) == 0:
            raise StructuralError("blocks should be a non-empty list of positive integers")
        for size in blocks:
            if not isinstance(size, (int, np.integer)) or isinstance(size, bool):
                raise StructuralError(f"block sizes should be integers, got {size!r}")
        self.blocks = [int(size) for size in blocks]
        self._validate()

    def _validate(self) -> None:
        if any(size < 1 for size in self.blocks):
            raise StructuralError(f"every block must be nonempty, got blocks {self.blocks}")

    @property
    def dim(self) -> int:
        return sum(self.blocks)

    @property
    def num_stages(self) -> int:
        """ n: the number of reduction stages (one less than the number of blocks) """
        return len(self.blocks) - 1

    def offset(self, i: int) -> int:
        """ first basis index of block i (and of the ideal n_i); offset(n + 1) equals dim """
        return sum(self.blocks[:i])

    def block_slice(self, i: int) -> slice:
        return slice(self.offset(i), self.offset(i) + self.blocks[i])

    def check_dim(self, dim: int) -> None:
        if self.dim != dim:
            raise StructuralError(f"blocks {self.blocks} sum to {self.dim} while the algebra has dimension {dim}")

    def to_json(self) -> Dict:
        return {"blocks": list(self.blocks)}

    @staticmethod
    def from_json(chain_dict: Dict) -> StageChain:
        if not isinstance(chain_dict, dict) or "blocks" not in chain_dict:
            raise StructuralError("chain should be an object with the field 'blocks'")
        return StageChain(blocks=chain_dict["blocks"])

    def __repr__(self):
        return f"StageChain(blocks={self.blocks})"


class InvariantMetric:
    def __init__(self, gram: np.ndarray) -> None:
        """
        Inner product on the Lie algebra (restriction of an invariant metric to the identity fiber)
        :param gram: symmetric positive definite matrix of shape (dim, dim)
        """
        self.gram = np.array(gram, dtype=float)
        self._validate()
        self.gram.setflags(write=False)

    def _validate(self) -> None:
        if self.gram.ndim != 2 or self.gram.shape[0] != self.gram.shape[1]:
            raise StructuralError(f"gram matrix should be square, got shape {self.gram.shape}")
        if not np.all(np.isfinite(self.gram)):
            raise ValueError("gram matrix must be finite")
        scale = max(1.0, float(np.max(np.abs(self.gram))))
        if np.max(np.abs(self.gram - self.gram.T)) > SYMMETRY_TOLERANCE * scale:
            raise ValueError("gram matrix must be symmetric")
        try:
            cho_factor(self.gram)
        except LinAlgError:
            raise ValueError("gram matrix must be positive definite")

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    @staticmethod
    def identity(dim: int) -> InvariantMetric:
        return InvariantMetric(gram=np.eye(dim))

    def to_json(self) -> List[List[float]]:
        return self.gram.tolist()

    @staticmethod
    def from_json(metric_spec: Union[str, List[List[float]]], dim: int) -> InvariantMetric:
        """
        Loading a metric from json: either the keyword "identity" or a dense row-major matrix
        """
        if isinstance(metric_spec, str):
            if metric_spec != "identity":
                raise StructuralError(f"unknown metric keyword '{metric_spec}' (only 'identity' is supported)")
            return InvariantMetric.identity(dim)
        gram = np.array(metric_spec, dtype=float)
        if gram.shape != (dim, dim):
            raise StructuralError(f"metric should be a {dim}x{dim} matrix, got shape {gram.shape}")
        return InvariantMetric(gram=gram)
