from __future__ import annotations  # allows using LieAlgebraSpec-typing inside LieAlgebraSpec-class

import json
from typing import Dict, List, Optional, Tuple

import numpy as np

from staged_reduction.common.errors import StructuralError


class LieAlgebraSpec:
    """Finite-dimensional real Lie algebra given by its structure constants"""
    def __init__(self, dim: int, basis_names: List[str], structure_constants: np.ndarray) -> None:
        """
        :param dim: dimension of the algebra
        :param basis_names: names of the basis vectors e_0, ..., e_{dim-1}
        :param structure_constants: dense tensor c of shape (dim, dim, dim) with [e_i, e_j] = sum_k c[i, j, k] e_k

        Antisymmetry and the Jacobi identity are not enforced here; validate_algebra() reports on them. Files are
        read with from_json(), which only accepts records with i < j and fills in the antisymmetric part.
        """
        # by converting to the correct type we already check for incompatible types
        self.dim = int(dim)
        self.basis_names = [str(name) for name in basis_names]
        self.structure_constants = np.array(structure_constants, dtype=float)
        self._validate()
        self.structure_constants.setflags(write=False)

    def _validate(self) -> None:
        """ Validate shapes; raises StructuralError if validation does not pass"""
        if self.dim < 1:
            raise StructuralError(f"dim must be a positive integer, got {self.dim}")
        if len(self.basis_names) != self.dim:
            raise StructuralError(f"expected {self.dim} basis names, got {len(self.basis_names)}")
        if len(set(self.basis_names)) != self.dim:
            raise StructuralError("basis names must be unique")
        if self.structure_constants.shape != (self.dim, self.dim, self.dim):
            raise StructuralError(f"structure constants should have shape {(self.dim,) * 3}, "
                                  f"got {self.structure_constants.shape}")
        if not np.all(np.isfinite(self.structure_constants)):
            raise StructuralError("structure constants must be finite")

    def check_vector(self, u: np.ndarray, name: str = "vector") -> np.ndarray:
        """ convert u to a float array and check it belongs to this algebra (or its dual) """
        u = np.asarray(u, dtype=float)
        if u.shape != (self.dim,):
            raise StructuralError(f"{name} should have shape ({self.dim},), got {u.shape}")
        return u

    def basis_vector(self, index_or_name) -> np.ndarray:
        """ basis vector e_i, selected by index or by basis name """
        index = self.basis_names.index(index_or_name) if isinstance(index_or_name, str) else int(index_or_name)
        vector = np.zeros(self.dim)
        vector[index] = 1.0
        return vector

    def bracket(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """ Lie bracket [u, v] = sum_ijk u_i v_j c[i, j, k] e_k """
        u = self.check_vector(u, "u")
        v = self.check_vector(v, "v")
        return np.einsum("i,j,ijk->k", u, v, self.structure_constants)

    def ad_matrix(self, v: np.ndarray) -> np.ndarray:
        """ matrix of ad_v: w -> [v, w] """
        v = self.check_vector(v, "v")
        return np.einsum("i,ijk->kj", v, self.structure_constants)

    def ad_star(self, v: np.ndarray, mu: np.ndarray) -> np.ndarray:
        """
        Coadjoint action, defined by <ad_star(v, mu), w> = <mu, [v, w]> for all w.
        :param v: algebra vector
        :param mu: covector (coordinates in the dual basis)
        :return: covector
        """
        mu = self.check_vector(mu, "mu")
        return self.ad_matrix(v).T @ mu

    def direct_sum(self, other: LieAlgebraSpec) -> LieAlgebraSpec:
        """ direct product algebra self (+) other; the basis of self comes first and the two factors commute """
        dim = self.dim + other.dim
        constants = np.zeros((dim, dim, dim))
        constants[:self.dim, :self.dim, :self.dim] = self.structure_constants
        constants[self.dim:, self.dim:, self.dim:] = other.structure_constants
        names = list(self.basis_names)
        for name in other.basis_names:
            names.append(name if name not in names else f"{name}'")
        return LieAlgebraSpec(dim=dim, basis_names=names, structure_constants=constants)

    def to_json(self) -> Dict:
        """get dictionary structure that can be stored as json with json.dumps()"""
        brackets = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                terms = [{"k": k, "c": float(self.structure_constants[i, j, k])}
                         for k in range(self.dim) if self.structure_constants[i, j, k] != 0]
                if terms:
                    brackets.append({"i": i, "j": j, "terms": terms})
        return {"dim": self.dim, "basis": list(self.basis_names), "brackets": brackets}

    @staticmethod
    def from_json(algebra_dict: Dict) -> LieAlgebraSpec:
        """
        Loading an algebra from json (expected same json structure as generated with to_json):
        {"dim": 3, "basis": ["X", "Y", "Z"], "brackets": [{"i": 0, "j": 1, "terms": [{"k": 2, "c": 1.0}]}]}
        Indices are zero-based, every record must have i < j and each pair (i, j) may occur only once; the entries
        with i > j are filled in by antisymmetry.
        """
        if not isinstance(algebra_dict, dict):
            raise StructuralError("an algebra document should be a json object")
        for key in ["dim", "basis", "brackets"]:
            if key not in algebra_dict:
                raise StructuralError(f"algebra document misses the field '{key}'")
        dim = algebra_dict["dim"]
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise StructuralError(f"'dim' should be a positive integer, got {dim!r}")
        basis = algebra_dict["basis"]
        if not isinstance(basis, list):
            raise StructuralError("'basis' should be a list of names")

        constants = np.zeros((dim, dim, dim))
        seen_pairs = set()
        for position, record in enumerate(algebra_dict["brackets"]):
            i, j, terms = _parse_bracket_record(record=record, dim=dim, position=position)
            if (i, j) in seen_pairs:
                raise StructuralError(f"brackets[{position}]: duplicate record for the pair ({i}, {j})")
            seen_pairs.add((i, j))
            for k, value in terms:
                constants[i, j, k] += value
                constants[j, i, k] -= value
        return LieAlgebraSpec(dim=dim, basis_names=basis, structure_constants=constants)

    @staticmethod
    def from_json_file(json_path: str) -> LieAlgebraSpec:
        """
        Loading an algebra from a json file
        :param json_path: path to json file
        :return: LieAlgebraSpec object
        """
        with open(json_path, "r") as f:
            json_dict = json.load(f)

        return LieAlgebraSpec.from_json(algebra_dict=json_dict)

    def __repr__(self) -> str:
        return f"LieAlgebraSpec(dim={self.dim}, basis={self.basis_names})"


def _parse_bracket_record(record: Dict, dim: int, position: int) -> Tuple[int, int, List[Tuple[int, float]]]:
    """ parse one {i, j, terms} record of an algebra document; raises StructuralError on malformed input """
    location = f"brackets[{position}]"
    if not isinstance(record, dict) or "i" not in record or "j" not in record or "terms" not in record:
        raise StructuralError(f"{location}: expected an object with fields i, j and terms")
    i = _parse_index(record["i"], dim=dim, location=f"{location}.i")
    j = _parse_index(record["j"], dim=dim, location=f"{location}.j")
    if not i < j:
        raise StructuralError(f"{location}: records must satisfy i < j, got i={i}, j={j}")
    if not isinstance(record["terms"], list):
        raise StructuralError(f"{location}.terms should be a list")
    terms = []
    for term_position, term in enumerate(record["terms"]):
        term_location = f"{location}.terms[{term_position}]"
        if not isinstance(term, dict) or "k" not in term or "c" not in term:
            raise StructuralError(f"{term_location}: expected an object with fields k and c")
        k = _parse_index(term["k"], dim=dim, location=f"{term_location}.k")
        value = term["c"]
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise StructuralError(f"{term_location}.c should be a number, got {value!r}")
        terms.append((k, float(value)))
    return i, j, terms


def _parse_index(value, dim: int, location: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < dim:
        raise StructuralError(f"{location}: expected an index in [0, {dim - 1}], got {value!r}")
    return value


def structure_constants_from_table(dim: int, table: Dict[Tuple[int, int], Dict[int, float]],
                                   basis_names: Optional[List[str]] = None) -> LieAlgebraSpec:
    """
    Build an algebra from a table {(i, j): {k: c}} with i < j; the entries with i > j follow from antisymmetry.
    """
    constants = np.zeros((dim, dim, dim))
    for (i, j), terms in table.items():
        for k, value in terms.items():
            constants[i, j, k] += value
            constants[j, i, k] -= value
    if basis_names is None:
        basis_names = [f"e{index}" for index in range(dim)]
    return LieAlgebraSpec(dim=dim, basis_names=basis_names, structure_constants=constants)
