from typing import Callable, Dict, List, Optional

import numpy as np

from staged_reduction.disk.disk_system import build_disk_system, disk_local_state, disk_state_from_json
from staged_reduction.entities.algebra.standard_algebras import abelian, se2
from staged_reduction.entities.bundle.connection_field import ConnectionField
from staged_reduction.entities.bundle.constraint_field import ConstraintField
from staged_reduction.entities.bundle.local_state import LocalState
from staged_reduction.entities.bundle.reduced_lagrangian_local import ReducedLagrangianLocal
from staged_reduction.entities.bundle.trivial_bundle_system import TrivialBundleSystem
from staged_reduction.entities.disk.disk_params import DiskParams
from staged_reduction.entities.stages.stage_chain import InvariantMetric, StageChain
from staged_reduction.entities.stages.staged_structure import StagedStructure
from staged_reduction.enums import SystemEnum

DECOUPLED_SHAPE_MASS = np.diag([1.0, 2.0])
DECOUPLED_ALGEBRA_MASS = np.array([[2.0, 0.3, 0.0],
                                   [0.3, 1.0, 0.2],
                                   [0.0, 0.2, 1.5]])


def decoupled_test_system() -> TrivialBundleSystem:
    """
    Free particle in the plane next to an se(2) Euler-Poincare system, without coupling: K constant and
    block-diagonal, A = 0 and V = 0.
    """
    alg = se2()
    staged = StagedStructure(alg=alg, chain=StageChain([1, 2]), metric=InvariantMetric.identity(3))
    kinetic_matrix = np.zeros((5, 5))
    kinetic_matrix[:2, :2] = DECOUPLED_SHAPE_MASS
    kinetic_matrix[2:, 2:] = DECOUPLED_ALGEBRA_MASS
    lagrangian = ReducedLagrangianLocal(shape_dim=2, alg_dim=3, kinetic_matrix=lambda x: kinetic_matrix,
                                        potential=lambda x: 0.0,
                                        kinetic_partials=lambda x: [np.zeros((5, 5))] * 2,
                                        potential_gradient=lambda x: np.zeros(2))
    return TrivialBundleSystem(name=SystemEnum.decoupled_test.value, staged=staged,
                               connection=ConnectionField.zero(alg, shape_dim=2), lagrangian=lagrangian,
                               constraint_field=ConstraintField.full(alg_dim=3, shape_dim=2),
                               shape_lower=[-np.inf, -np.inf], shape_upper=[np.inf, np.inf],
                               initial_state=LocalState(x=[0.0, 0.0], xdot=[0.5, -0.2], c=[0.7, 0.4, -0.3]),
                               description="free particle and uncoupled se(2) rigid body")


def charged_particle_system() -> TrivialBundleSystem:
    """
    Particle in the plane coupled to a U(1) fiber through A(x) xdot = x_0 xdot_1 with l = 1/2 |xdot|^2 + 1/2 xi^2:
    xi is conserved and acts as the charge in a uniform magnetic field, xddot_0 = xi xdot_1, xddot_1 = -xi xdot_0.
    """
    alg = abelian(1)
    staged = StagedStructure(alg=alg, chain=StageChain([1]), metric=InvariantMetric.identity(1))
    connection = ConnectionField(alg=alg, shape_dim=2, matrix=lambda x: np.array([[0.0, x[0]]]),
                                 matrix_partials=lambda x: [np.array([[0.0, 1.0]]), np.zeros((1, 2))])
    lagrangian = ReducedLagrangianLocal(shape_dim=2, alg_dim=1, kinetic_matrix=lambda x: np.eye(3),
                                        potential=lambda x: 0.0,
                                        kinetic_partials=lambda x: [np.zeros((3, 3))] * 2,
                                        potential_gradient=lambda x: np.zeros(2))
    return TrivialBundleSystem(name=SystemEnum.charged_particle.value, staged=staged, connection=connection,
                               lagrangian=lagrangian, constraint_field=ConstraintField.full(alg_dim=1, shape_dim=2),
                               shape_lower=[-np.inf, -np.inf], shape_upper=[np.inf, np.inf],
                               initial_state=LocalState(x=[1.0, 0.0], xdot=[0.0, 1.0], c=[1.0]),
                               description="charged particle in a uniform magnetic field")


SYSTEM_BUILDERS: Dict[SystemEnum, Callable[[DiskParams], TrivialBundleSystem]] = {
    SystemEnum.disk: lambda params: build_disk_system(params)[1],
    SystemEnum.disk_one_stage: lambda params: build_disk_system(params, one_stage=True)[1],
    SystemEnum.decoupled_test: lambda params: decoupled_test_system(),
    SystemEnum.charged_particle: lambda params: charged_particle_system(),
}


def system_names() -> List[str]:
    return [system.value for system in SystemEnum]


def build_system(name: str, disk_params: Optional[DiskParams] = None) -> TrivialBundleSystem:
    """
    Built-in system by name
    :param name: one of system_names()
    :param disk_params: parameters of the disk systems (default parameters when None)
    """
    try:
        system = SystemEnum(name)
    except ValueError:
        raise ValueError(f"unknown system '{name}', choose from {system_names()}")
    return SYSTEM_BUILDERS[system](disk_params if disk_params is not None else DiskParams())


def initial_state_from_json(system: TrivialBundleSystem, state_dict: Optional[Dict],
                            disk_params: Optional[DiskParams] = None) -> LocalState:
    """
    Initial state of a built-in system: its default when state_dict is None, the fields of a disk state for the
    disk systems and those of LocalState otherwise.
    """
    if state_dict is None:
        return system.initial_state
    if system.name in [SystemEnum.disk.value, SystemEnum.disk_one_stage.value]:
        params = disk_params if disk_params is not None else DiskParams()
        return disk_local_state(disk_state_from_json(params, state_dict))
    try:
        state = LocalState.from_json(state_dict)
    except KeyError as e:
        raise ValueError(f"initial state misses the field {e}")
    system.check_state(state)
    return state
