from typing import Dict, Optional, Tuple

import numpy as np

from staged_reduction.disk.disk_lagrangian import disk_kinetic_matrix, disk_kinetic_partials, disk_potential, \
    disk_potential_gradient, disk_steady_precession_rate
from staged_reduction.entities.algebra.lie_algebra import LieAlgebraSpec, structure_constants_from_table
from staged_reduction.entities.bundle.connection_field import ConnectionField
from staged_reduction.entities.bundle.constraint_field import ConstraintField
from staged_reduction.entities.bundle.distribution_field import DistributionField
from staged_reduction.entities.bundle.local_state import LocalState
from staged_reduction.entities.bundle.reduced_lagrangian_local import ReducedLagrangianLocal
from staged_reduction.entities.bundle.trivial_bundle_system import TrivialBundleSystem
from staged_reduction.entities.disk.disk_params import DiskParams
from staged_reduction.entities.disk.disk_state import DiskState, rolling_direction
from staged_reduction.entities.stages.stage_chain import InvariantMetric, StageChain
from staged_reduction.entities.stages.staged_structure import StagedStructure

THETA_MARGIN = 10**(-3)
DEFAULT_THETA = np.pi / 4
DEFAULT_PHIDOT = 2.0
DEFAULT_THETADOT = 0.3


def disk_algebra() -> LieAlgebraSpec:
    """ Lie algebra of S^1 x R^2 (abelian), basis eta01 | eta12_0, eta12_1 """
    return structure_constants_from_table(dim=3, table={}, basis_names=["eta01", "eta12_0", "eta12_1"])


def disk_constraint_field(params: DiskParams) -> ConstraintField:
    """ S(theta, phi) = span{(1, r u(phi))} """
    r = params.r

    def basis(x: np.ndarray) -> np.ndarray:
        return np.concatenate([[1.0], r * rolling_direction(x[1])]).reshape(3, 1)

    def basis_partials(x: np.ndarray):
        phi = x[1]
        return [np.zeros((3, 1)), np.array([[0.0], [r * np.sin(phi)], [-r * np.cos(phi)]])]

    return ConstraintField(alg_dim=3, rank=1, shape_dim=2, basis=basis, basis_partials=basis_partials)


def disk_distribution(params: DiskParams) -> DistributionField:
    """
    Rolling without slipping on the velocities (thetadot, phidot, eta01, eta12):
        D = span{d_theta, d_phi, (0, 0, 1, r u)}
    """
    r = params.r

    def basis(x: np.ndarray) -> np.ndarray:
        matrix = np.zeros((5, 3))
        matrix[0, 0] = matrix[1, 1] = matrix[2, 2] = 1.0
        matrix[3:5, 2] = r * rolling_direction(x[1])
        return matrix

    return DistributionField(shape_dim=2, alg_dim=3, rank=3, basis=basis)


def disk_initial_state(params: DiskParams, theta: float = DEFAULT_THETA, phi: float = 0.0,
                       thetadot: float = DEFAULT_THETADOT, phidot: float = DEFAULT_PHIDOT,
                       eta01: Optional[float] = None) -> DiskState:
    """ default initial data: a tilt oscillation around steady rolling """
    if eta01 is None:
        eta01 = disk_steady_precession_rate(params, theta, phidot)
    return DiskState(theta=theta, phi=phi, thetadot=thetadot, phidot=phidot, eta01=eta01, r=params.r)


def disk_local_state(state: DiskState, t: float = 0.0) -> LocalState:
    return LocalState(x=[state.theta, state.phi], xdot=[state.thetadot, state.phidot], c=[state.eta01], t=t)


def build_disk_system(params: DiskParams, one_stage: bool = False,
                      initial_state: Optional[DiskState] = None) -> Tuple[StagedStructure, TrivialBundleSystem,
                                                                          ConstraintField]:
    """
    Euler's disk on Q = (0, pi/2) x S^1 x S^1 x R^2 as a trivial bundle over the shape space of (theta, phi),
    reduced in two stages along {0} < R^2 < S^1 x R^2 (blocks [1, 2]) or, with one_stage, in a single stage.
    The connection vanishes on shape directions.
    """
    alg = disk_algebra()
    chain = StageChain([3] if one_stage else [1, 2])
    staged = StagedStructure(alg=alg, chain=chain, metric=InvariantMetric.identity(3))
    connection = ConnectionField.zero(alg, shape_dim=2)
    lagrangian = ReducedLagrangianLocal(
        shape_dim=2, alg_dim=3,
        kinetic_matrix=lambda x: disk_kinetic_matrix(params, x[0], x[1]),
        potential=lambda x: disk_potential(params, x[0]),
        kinetic_partials=lambda x: disk_kinetic_partials(params, x[0], x[1]),
        potential_gradient=lambda x: disk_potential_gradient(params, x[0]))
    constraint_field = disk_constraint_field(params)
    if initial_state is None:
        initial_state = disk_initial_state(params)
    system = TrivialBundleSystem(name="disk-one-stage" if one_stage else "disk", staged=staged,
                                 connection=connection, lagrangian=lagrangian, constraint_field=constraint_field,
                                 shape_lower=[THETA_MARGIN, -np.inf], shape_upper=[np.pi / 2 - THETA_MARGIN, np.inf],
                                 initial_state=disk_local_state(initial_state),
                                 description="Euler's disk rolling without slipping")
    return staged, system, constraint_field


def disk_state_from_json(params: DiskParams, state_dict: Dict) -> DiskState:
    """
    Initial disk state from a document with the fields theta, phi, thetadot, phidot and optionally eta01 (steady
    precession rate when missing); eta12 follows from the rolling constraint.
    """
    fields = {key: value for key, value in state_dict.items() if not key.startswith("_")}
    unknown = set(fields) - {"theta", "phi", "thetadot", "phidot", "eta01"}
    if unknown:
        raise ValueError(f"unknown disk state fields {sorted(unknown)}")
    return disk_initial_state(params, **{key: float(value) for key, value in fields.items()})
