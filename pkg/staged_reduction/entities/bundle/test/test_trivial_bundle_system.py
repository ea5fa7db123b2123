import unittest
from typing import Dict

import numpy as np

from staged_reduction.common.errors import InvariantViolation, StructuralError
from staged_reduction.entities.algebra.standard_algebras import se2
from staged_reduction.entities.bundle.connection_field import ConnectionField
from staged_reduction.entities.bundle.constraint_field import ConstraintField
from staged_reduction.entities.bundle.local_state import LocalState
from staged_reduction.entities.bundle.reduced_lagrangian_local import ReducedLagrangianLocal
from staged_reduction.entities.bundle.trivial_bundle_system import TrivialBundleSystem
from staged_reduction.entities.stages.stage_chain import InvariantMetric, StageChain
from staged_reduction.entities.stages.staged_structure import StagedStructure
from staged_reduction.local_bundle.test.random_systems import random_lagrangian


class TestTrivialBundleSystem(unittest.TestCase):

    @staticmethod
    def get_default_inputs() -> Dict:
        """ Function to get default (valid) inputs for TrivialBundleSystem() """
        alg = se2()
        return dict(name="test", staged=StagedStructure(alg=alg, chain=StageChain([1, 2]),
                                                        metric=InvariantMetric.identity(3)),
                    connection=ConnectionField.zero(alg, shape_dim=2), lagrangian=random_lagrangian(3, seed=92),
                    constraint_field=ConstraintField.full(alg_dim=3, shape_dim=2),
                    shape_lower=[-1.0, -0.5], shape_upper=[1.0, 0.5],
                    initial_state=LocalState(x=[0.0, 0.0], xdot=[1.0, 0.0], c=[0.0, 0.0, 1.0]))

    def test_successful_validation(self) -> None:
        """ Test initializing TrivialBundleSystem object with correct input """
        # GIVEN
        input_dict = TestTrivialBundleSystem.get_default_inputs()

        # WHEN
        system = TrivialBundleSystem(**input_dict)

        # THEN
        self.assertEqual(system.shape_dim, 2)
        self.assertEqual(system.rank, 3)
        np.testing.assert_array_equal(system.xi(system.initial_state), [0.0, 0.0, 1.0])

    def test_dimension_mismatch(self) -> None:
        """ Test a constraint field on another algebra """
        # GIVEN
        input_dict = TestTrivialBundleSystem.get_default_inputs()
        input_dict["constraint_field"] = ConstraintField.full(alg_dim=2, shape_dim=2)

        with self.assertRaises(StructuralError):
            # WHEN
            TrivialBundleSystem(**input_dict)

            # THEN an error should be raised

    def test_initial_state_mismatch(self) -> None:
        """ Test an initial state with the wrong number of constraint coordinates """
        # GIVEN
        input_dict = TestTrivialBundleSystem.get_default_inputs()
        input_dict["initial_state"] = LocalState(x=[0.0, 0.0], xdot=[0.0, 0.0], c=[1.0])

        with self.assertRaises(StructuralError):
            # WHEN
            TrivialBundleSystem(**input_dict)

            # THEN an error should be raised

    def test_indefinite_kinetic_matrix(self) -> None:
        """ Test a kinetic matrix that is not positive definite at the initial shape point """
        # GIVEN
        input_dict = TestTrivialBundleSystem.get_default_inputs()
        input_dict["lagrangian"] = ReducedLagrangianLocal(
            shape_dim=2, alg_dim=3, kinetic_matrix=lambda x: np.diag([1.0, 1.0, 1.0, 1.0, x[0] - 0.5]),
            potential=lambda x: 0.0)

        with self.assertRaises(InvariantViolation):
            # WHEN
            TrivialBundleSystem(**input_dict)

            # THEN an error should be raised

    def test_rank_deficient_constraint(self) -> None:
        """ Test a constraint basis whose columns become dependent at the initial shape point """
        # GIVEN
        input_dict = TestTrivialBundleSystem.get_default_inputs()
        input_dict["constraint_field"] = ConstraintField(
            alg_dim=3, rank=2, shape_dim=2, basis=lambda x: np.array([[1.0, 0.0], [0.0, x[0]], [0.0, 0.0]]))
        input_dict["initial_state"] = LocalState(x=[0.0, 0.0], xdot=[1.0, 0.0], c=[1.0, 0.0])

        with self.assertRaises(StructuralError):
            # WHEN
            TrivialBundleSystem(**input_dict)

            # THEN an error should be raised

    def test_state_checked_at_its_shape_point(self) -> None:
        """ Test that a valid system still refuses a state at a shape point where K is indefinite """
        # GIVEN
        input_dict = TestTrivialBundleSystem.get_default_inputs()
        input_dict["lagrangian"] = ReducedLagrangianLocal(
            shape_dim=2, alg_dim=3, kinetic_matrix=lambda x: np.diag([1.0, 1.0, 1.0, 1.0, 0.5 - x[0]]),
            potential=lambda x: 0.0)
        system = TrivialBundleSystem(**input_dict)

        with self.assertRaises(InvariantViolation):
            # WHEN
            system.check_state(LocalState(x=[0.8, 0.0], xdot=[0.0, 0.0], c=[0.0, 0.0, 1.0]))

            # THEN an error should be raised

    def test_empty_chart(self) -> None:
        """ Test a chart whose lower corner is not below the upper corner """
        # GIVEN
        input_dict = TestTrivialBundleSystem.get_default_inputs()
        input_dict["shape_upper"] = [1.0, -0.5]

        with self.assertRaises(ValueError):
            # WHEN
            TrivialBundleSystem(**input_dict)

            # THEN an error should be raised

    def test_inside_chart(self) -> None:
        """ Test that the chart is an open box """
        # GIVEN
        system = TrivialBundleSystem(**TestTrivialBundleSystem.get_default_inputs())

        # THEN
        self.assertTrue(system.inside_chart([0.9, 0.4]))
        self.assertFalse(system.inside_chart([0.9, 0.5]))
        self.assertFalse(system.inside_chart([-1.2, 0.0]))
