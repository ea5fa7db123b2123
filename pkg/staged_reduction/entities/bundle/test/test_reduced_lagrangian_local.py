import unittest

import numpy as np

from staged_reduction.common.errors import InvariantViolation
from staged_reduction.entities.algebra.standard_algebras import se2
from staged_reduction.entities.bundle.reduced_lagrangian_local import ReducedLagrangianLocal
from staged_reduction.local_bundle.test.random_systems import random_connection, random_lagrangian, random_state


class TestReducedLagrangianLocal(unittest.TestCase):

    def test_value_and_energy(self) -> None:
        """ Test l = T - V and E = T + V on a constant kinetic matrix """
        # GIVEN
        lagrangian = ReducedLagrangianLocal(shape_dim=1, alg_dim=1, kinetic_matrix=lambda x: np.diag([2.0, 4.0]),
                                            potential=lambda x: 3.0 * x[0])
        x, xdot, xi = np.array([1.0]), np.array([1.0]), np.array([0.5])

        # WHEN
        value = lagrangian.value(x, xdot, xi)
        energy = lagrangian.energy(x, xdot, xi)

        # THEN: T = 1/2 (2 + 4 * 0.25) = 1.5
        self.assertAlmostEqual(value, -1.5, delta=1e-15)
        self.assertAlmostEqual(energy, 4.5, delta=1e-15)
        p_x, beta = lagrangian.fiber_derivatives(x, xdot, xi)
        np.testing.assert_allclose(p_x, [2.0])
        np.testing.assert_allclose(beta, [2.0])

    def test_finite_difference_gradient(self) -> None:
        """ Test dl/dx with finite differences against the analytic derivatives """
        # GIVEN
        rng = np.random.default_rng(84)
        analytic = random_lagrangian(3, seed=85)
        numeric = random_lagrangian(3, seed=85, analytic=False)
        x, xdot, xi = random_state(3, rng)

        # WHEN
        expected = analytic.shape_gradient(x, xdot, xi)
        actual = numeric.shape_gradient(x, xdot, xi)

        # THEN
        np.testing.assert_allclose(actual, expected, atol=1e-8)

    def test_not_positive_definite(self) -> None:
        """ Test that an indefinite kinetic matrix is reported """
        # GIVEN
        lagrangian = ReducedLagrangianLocal(shape_dim=1, alg_dim=1, kinetic_matrix=lambda x: np.diag([1.0, -1.0]),
                                            potential=lambda x: 0.0)

        with self.assertRaises(InvariantViolation):
            # WHEN
            lagrangian.check_kinetic_matrix(np.zeros(1))

            # THEN an error should be raised

    def test_not_symmetric(self) -> None:
        """ Test that a non-symmetric kinetic matrix is reported """
        # GIVEN
        lagrangian = ReducedLagrangianLocal(shape_dim=1, alg_dim=1,
                                            kinetic_matrix=lambda x: np.array([[2.0, 0.1], [0.0, 2.0]]),
                                            potential=lambda x: 0.0)

        with self.assertRaises(InvariantViolation):
            # WHEN
            lagrangian.check_kinetic_matrix(np.zeros(1))

            # THEN an error should be raised

    def test_change_of_connection(self) -> None:
        """ Test that rewriting the Lagrangian for another connection leaves its value unchanged """
        rng = np.random.default_rng(86)
        lagrangian = random_lagrangian(3, seed=87)
        current = random_connection(se2(), seed=88)
        new = random_connection(se2(), seed=89)
        for current_connection in [None, current]:
            with self.subTest(with_current_connection=current_connection is not None):
                # GIVEN
                x, xdot, xi_new = random_state(3, rng)
                xi_current = xi_new - new.evaluate(x, xdot)
                if current_connection is not None:
                    xi_current = xi_current + current_connection.evaluate(x, xdot)

                # WHEN
                transformed = lagrangian.with_connection(new, current_connection=current_connection)

                # THEN
                self.assertAlmostEqual(transformed.value(x, xdot, xi_new), lagrangian.value(x, xdot, xi_current),
                                       delta=1e-12)
                transformed.check_kinetic_matrix(x)
