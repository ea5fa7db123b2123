from staged_reduction.entities.algebra.lie_algebra import LieAlgebraSpec, structure_constants_from_table


def so3() -> LieAlgebraSpec:
    """so(3) with [e_i, e_j] = eps_ijk e_k (angular velocities in body coordinates)"""
    return structure_constants_from_table(dim=3, table={(0, 1): {2: 1.0}, (1, 2): {0: 1.0}, (0, 2): {1: -1.0}},
                                          basis_names=["e1", "e2", "e3"])


def se2() -> LieAlgebraSpec:
    """se(2) with basis J, P1, P2 and [J, P1] = P2, [J, P2] = -P1"""
    return structure_constants_from_table(dim=3, table={(0, 1): {2: 1.0}, (0, 2): {1: -1.0}},
                                          basis_names=["J", "P1", "P2"])


def heisenberg() -> LieAlgebraSpec:
    """Heisenberg algebra h3 with [X, Y] = Z and Z central"""
    return structure_constants_from_table(dim=3, table={(0, 1): {2: 1.0}}, basis_names=["X", "Y", "Z"])


def upper_triangular_nilpotent() -> LieAlgebraSpec:
    """
    Strictly upper-triangular 4x4 matrices, basis ordered along the lower central series:
    E12, E23, E34 | E13, E24 | E14, with [Eij, Ejk] = Eik.
    """
    # indices: 0=E12, 1=E23, 2=E34, 3=E13, 4=E24, 5=E14
    table = {(0, 1): {3: 1.0},   # [E12, E23] = E13
             (1, 2): {4: 1.0},   # [E23, E34] = E24
             (0, 4): {5: 1.0},   # [E12, E24] = E14
             (2, 3): {5: -1.0}}  # [E34, E13] = -E14
    return structure_constants_from_table(dim=6, table=table,
                                          basis_names=["E12", "E23", "E34", "E13", "E24", "E14"])


def abelian(dim: int) -> LieAlgebraSpec:
    """abelian algebra R^dim"""
    return structure_constants_from_table(dim=dim, table={}, basis_names=[f"a{index}" for index in range(dim)])


STANDARD_ALGEBRAS = {"so3": so3, "se2": se2, "h3": heisenberg, "n4": upper_triangular_nilpotent}
