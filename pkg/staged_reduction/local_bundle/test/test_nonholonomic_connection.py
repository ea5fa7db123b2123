import unittest

import numpy as np

from staged_reduction.common.errors import StructuralError
from staged_reduction.disk.disk_system import build_disk_system, disk_algebra, disk_distribution
from staged_reduction.entities.algebra.standard_algebras import se2
from staged_reduction.entities.bundle.distribution_field import DistributionField
from staged_reduction.entities.bundle.local_state import LocalState
from staged_reduction.entities.bundle.trivial_bundle_system import TrivialBundleSystem
from staged_reduction.entities.disk.disk_params import DiskParams
from staged_reduction.local_bundle.lagrange_poincare import simulate_system
from staged_reduction.local_bundle.nonholonomic_connection import check_dimension_assumption, \
    NonholonomicConnection
from staged_reduction.local_bundle.test.random_systems import random_lagrangian


def random_distribution(seed: int) -> DistributionField:
    """ rank 4 distribution on the velocities of a shape plane times se(2), smooth in x """
    rng = np.random.default_rng(seed)
    base, slope = rng.uniform(-1, 1, (5, 4)), rng.uniform(-0.2, 0.2, (5, 4))
    base[:2, :2] += 3 * np.eye(2)
    return DistributionField(shape_dim=2, alg_dim=3, rank=4, basis=lambda x: base + np.sin(x[0]) * slope)


class TestDistributionField(unittest.TestCase):

    def test_rank_must_exceed_shape_dim(self) -> None:
        """ Test that a distribution without vertical part is refused """
        with self.assertRaises(StructuralError):
            # WHEN
            DistributionField(shape_dim=2, alg_dim=1, rank=2, basis=lambda x: np.eye(3)[:, :2])

            # THEN an error should be raised

    def test_dimension_assumption(self) -> None:
        """ Test that D + V must span all velocities """
        # GIVEN
        distribution = DistributionField(shape_dim=2, alg_dim=1, rank=3,
                                         basis=lambda x: np.array([[1.0, 0.0, 0.0],
                                                                   [0.0, 0.0, 0.0],
                                                                   [0.0, 1.0, 1.0]]))

        with self.assertRaises(StructuralError):
            # WHEN
            check_dimension_assumption(distribution, np.zeros(2))

            # THEN an error should be raised


class TestNonholonomicConnection(unittest.TestCase):

    def test_vertical_part_of_distribution(self) -> None:
        """ Test that (0, S(x)) lies in D(x) """
        # GIVEN
        distribution = random_distribution(seed=70)
        connection = NonholonomicConnection(se2(), distribution, random_lagrangian(3, seed=71), np.zeros(2))
        x = np.array([0.3, -0.1])

        # WHEN
        vertical = np.vstack([np.zeros((2, connection.rank)), connection.constraint_basis(x)])

        # THEN
        self.assertEqual(connection.rank, 2)
        coefficients = np.linalg.lstsq(distribution.basis(x), vertical, rcond=None)[0]
        np.testing.assert_allclose(distribution.basis(x) @ coefficients, vertical, atol=1e-12)

    def test_horizontal_lift(self) -> None:
        """ Test that (xdot, -A(x) xdot) lies in D(x) and is K(x)-orthogonal to (0, S(x)) """
        rng = np.random.default_rng(72)
        distribution = random_distribution(seed=73)
        lag = random_lagrangian(3, seed=74)
        connection = NonholonomicConnection(se2(), distribution, lag, np.zeros(2))
        for trial in range(5):
            with self.subTest(trial=trial):
                # GIVEN
                x, xdot = rng.uniform(-0.5, 0.5, 2), rng.uniform(-1, 1, 2)

                # WHEN
                lift = np.concatenate([xdot, -connection.connection_matrix(x) @ xdot])

                # THEN
                basis = distribution.basis(x)
                coefficients = np.linalg.lstsq(basis, lift, rcond=None)[0]
                np.testing.assert_allclose(basis @ coefficients, lift, atol=1e-12)
                vertical = np.vstack([np.zeros((2, connection.rank)), connection.constraint_basis(x)])
                np.testing.assert_allclose(vertical.T @ lag.kinetic_matrix(x) @ lift, np.zeros(2), atol=1e-12)

    def test_disk_constrained_directions(self) -> None:
        """ Test that the disk distribution gives S(theta, phi) = span{(1, r u(phi))} """
        # GIVEN
        params = DiskParams(r=0.5)
        _, system, constraint_field = build_disk_system(params)
        connection = NonholonomicConnection(disk_algebra(), disk_distribution(params), system.lagrangian,
                                            np.array([np.pi / 4, 0.0]))
        x = np.array([0.6, 1.2])

        # THEN
        np.testing.assert_allclose(connection.constraint_basis(x), constraint_field.basis(x), atol=1e-14)

    def test_disk_motion_does_not_depend_on_connection(self) -> None:
        """ Test that the disk moves the same in the variables of the nonholonomic connection """
        # GIVEN
        params = DiskParams(e=0.1)
        _, system, _ = build_disk_system(params)
        connection = NonholonomicConnection(disk_algebra(), disk_distribution(params), system.lagrangian,
                                            np.array([np.pi / 4, 0.0]))
        conn_nh = connection.connection_field()
        field_nh = connection.constraint_field()
        state = system.initial_state
        xi_nh = system.xi(state) + conn_nh.evaluate(state.x, state.xdot)
        nonholonomic = TrivialBundleSystem(name="disk-nonholonomic", staged=system.staged, connection=conn_nh,
                                           lagrangian=connection.transformed_lagrangian(),
                                           constraint_field=field_nh, shape_lower=system.shape_lower,
                                           shape_upper=system.shape_upper,
                                           initial_state=LocalState(x=state.x, xdot=state.xdot,
                                                                    c=field_nh.coefficients(state.x, xi_nh)))
        self.assertLessEqual(field_nh.membership_residual(state.x, xi_nh), 1e-12)

        # WHEN
        reference = simulate_system(system, t_end=0.2, h=1e-3)
        transformed = simulate_system(nonholonomic, t_end=0.2, h=1e-3)

        # THEN
        np.testing.assert_allclose(transformed.states[:, :4], reference.states[:, :4], atol=1e-7)
