import unittest

import numpy as np

from staged_reduction.common.errors import StructuralError
from staged_reduction.entities.algebra.standard_algebras import se2
from staged_reduction.entities.bundle.connection_field import ConnectionField
from staged_reduction.local_bundle.test.random_systems import random_connection


class TestConnectionField(unittest.TestCase):

    def test_linear_in_velocity(self) -> None:
        """ Test that A(x) xdot is linear in xdot """
        # GIVEN
        rng = np.random.default_rng(80)
        connection = random_connection(se2(), seed=81)
        x, u, v = rng.uniform(-1, 1, 2), rng.uniform(-1, 1, 2), rng.uniform(-1, 1, 2)

        # WHEN
        combined = connection.evaluate(x, 2.0 * u - 3.0 * v)

        # THEN
        np.testing.assert_allclose(combined, 2.0 * connection.evaluate(x, u) - 3.0 * connection.evaluate(x, v),
                                   atol=1e-12)

    def test_finite_difference_partials(self) -> None:
        """ Test the finite-difference partials against the analytic ones """
        # GIVEN
        analytic = random_connection(se2(), seed=82)
        numeric = random_connection(se2(), seed=82, analytic=False)
        x = np.array([0.4, -0.7])

        # WHEN
        expected = analytic.matrix_partials(x)
        actual = numeric.matrix_partials(x)

        # THEN
        self.assertTrue(analytic.has_analytic_partials)
        self.assertFalse(numeric.has_analytic_partials)
        for expected_partial, actual_partial in zip(expected, actual):
            np.testing.assert_allclose(actual_partial, expected_partial, atol=1e-8)

    def test_zero_connection(self) -> None:
        """ Test the trivial connection """
        # GIVEN
        connection = ConnectionField.zero(se2(), shape_dim=2)

        # THEN
        np.testing.assert_array_equal(connection.evaluate(np.ones(2), np.array([1.0, -2.0])), np.zeros(3))
        for partial in connection.matrix_partials(np.ones(2)):
            np.testing.assert_array_equal(partial, np.zeros((3, 2)))

    def test_wrong_shape(self) -> None:
        """ Test a shape velocity of the wrong length """
        # GIVEN
        connection = random_connection(se2(), seed=83)

        with self.assertRaises(StructuralError):
            # WHEN
            connection.evaluate(np.zeros(2), np.zeros(3))

            # THEN an error should be raised

    def test_not_finite(self) -> None:
        """ Test a connection that evaluates to nan """
        # GIVEN
        connection = ConnectionField(alg=se2(), shape_dim=1, matrix=lambda x: np.full((3, 1), np.nan))

        with self.assertRaises(FloatingPointError):
            # WHEN
            connection.matrix(np.zeros(1))

            # THEN an error should be raised
