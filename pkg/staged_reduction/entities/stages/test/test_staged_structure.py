import unittest
from typing import List

import numpy as np

from staged_reduction.common.errors import InvariantViolation, StructuralError
from staged_reduction.entities.algebra.standard_algebras import abelian, heisenberg, se2, so3, \
    upper_triangular_nilpotent
from staged_reduction.entities.stages.stage_chain import InvariantMetric, StageChain
from staged_reduction.entities.stages.staged_structure import StagedStructure


def random_metrics(dim: int, count: int, seed: int) -> List[InvariantMetric]:
    """ identity perturbed by small random symmetric matrices (positive definite for perturbations below 1/dim) """
    rng = np.random.default_rng(seed)
    metrics = []
    for _ in range(count):
        perturbation = rng.uniform(-0.4, 0.4, (dim, dim)) / dim
        metrics.append(InvariantMetric(gram=np.eye(dim) + (perturbation + perturbation.T) / 2))
    return metrics


def staged_cases():
    """ (name, algebra, blocks) of chains of ideals used throughout the tests """
    return [("h3 [1, 1, 1]", heisenberg(), [1, 1, 1]),
            ("h3 [1, 2]", heisenberg(), [1, 2]),
            ("h3 [2, 1]", heisenberg(), [2, 1]),
            ("se2 [1, 2]", se2(), [1, 2]),
            ("n4 [3, 2, 1]", upper_triangular_nilpotent(), [3, 2, 1]),
            ("n4 [3, 3]", upper_triangular_nilpotent(), [3, 3]),
            ("so3 + r2 [3, 2]", so3().direct_sum(abelian(2)), [3, 2])]


def h3_with_coupled_metric() -> StagedStructure:
    """ Heisenberg algebra, blocks X | Y | Z and <X, Z> = 0.5 """
    gram = np.eye(3)
    gram[0, 2] = gram[2, 0] = 0.5
    return StagedStructure(alg=heisenberg(), chain=StageChain([1, 1, 1]), metric=InvariantMetric(gram=gram))


class TestConstruction(unittest.TestCase):

    def test_not_a_chain_of_ideals(self) -> None:
        """ Test that so(3) cannot be staged along [1, 2] """
        with self.assertRaises(InvariantViolation):
            # WHEN
            StagedStructure(alg=so3(), chain=StageChain([1, 2]), metric=InvariantMetric.identity(3))

            # THEN an error should be raised

    def test_metric_dimension(self) -> None:
        """ Test a metric of the wrong dimension """
        with self.assertRaises(StructuralError):
            # WHEN
            StagedStructure(alg=se2(), chain=StageChain([1, 2]), metric=InvariantMetric.identity(4))

            # THEN an error should be raised

    def test_single_block(self) -> None:
        """ Test that a chain with one block has no stages and the bracket is unchanged """
        # GIVEN
        staged = StagedStructure(alg=so3(), chain=StageChain([3]), metric=InvariantMetric.identity(3))
        u, v = np.array([1.0, 2.0, 3.0]), np.array([-1.0, 0.5, 2.0])

        # WHEN
        bracket = staged.bracket_by_stages(u, v)

        # THEN
        self.assertEqual(staged.num_stages, 0)
        np.testing.assert_allclose(bracket, so3().bracket(u, v), rtol=0, atol=1e-15)


class TestLifts(unittest.TestCase):

    def test_lift_with_coupled_metric(self) -> None:
        """ Test that the horizontal lift of X is X - 0.5 Z when <X, Z> = 0.5 """
        # GIVEN
        staged = h3_with_coupled_metric()

        # WHEN
        lift = staged.horizontal_lift(1, np.array([1.0]))

        # THEN
        np.testing.assert_allclose(lift, np.array([1.0, 0.0, -0.5]), rtol=0, atol=1e-15)

    def test_lift_is_orthogonal(self) -> None:
        """ Test <lift(kappa), eta> = 0 for eta in n_j, and lift(kappa) - embed(kappa) in n_j """
        for name, alg, blocks in staged_cases():
            chain = StageChain(blocks)
            for metric in random_metrics(alg.dim, 2, seed=10):
                staged = StagedStructure(alg=alg, chain=chain, metric=metric)
                for j in range(1, chain.num_stages + 1):
                    with self.subTest(name=name, stage=j):
                        # GIVEN
                        kappa = np.linspace(1.0, 2.0, blocks[j - 1])

                        # WHEN
                        lift = staged.horizontal_lift(j, kappa)

                        # THEN
                        start = chain.offset(j)
                        inner_products = (metric.gram @ lift)[start:]
                        self.assertLessEqual(np.max(np.abs(inner_products)), 1e-13)
                        np.testing.assert_allclose((lift - staged.embed(j - 1, kappa))[:start], 0.0, atol=1e-15)

    def test_connection_projection(self) -> None:
        """ Test the connection maps X to 0.5 Z and leaves elements of n_1 unchanged """
        # GIVEN
        staged = h3_with_coupled_metric()

        # THEN
        np.testing.assert_allclose(staged.connection_project(1, np.array([1.0, 0.0, 0.0])), [0.0, 0.0, 0.5],
                                   atol=1e-15)
        np.testing.assert_allclose(staged.connection_project(1, np.array([0.0, 2.0, 3.0])), [0.0, 2.0, 3.0],
                                   atol=1e-15)

    def test_connection_outside_ideal(self) -> None:
        """ Test that the connection of stage 2 refuses vectors outside n_1 """
        # GIVEN
        staged = h3_with_coupled_metric()

        with self.assertRaises(StructuralError):
            # WHEN
            staged.connection_project(2, np.array([1.0, 0.0, 0.0]))

            # THEN an error should be raised

    def test_stage_out_of_range(self) -> None:
        """ Test stage indices outside [1, n] """
        # GIVEN
        staged = h3_with_coupled_metric()

        for stage in [0, 3]:
            with self.subTest(stage=stage):
                with self.assertRaises(StructuralError):
                    # WHEN
                    staged.horizontal_lift(stage, np.array([1.0]))

                    # THEN an error should be raised


class TestStagedIdentification(unittest.TestCase):

    def test_staged_components(self) -> None:
        """ Test the staged components of X with the coupled metric: X = lift(X) + 0.5 Z """
        # GIVEN
        staged = h3_with_coupled_metric()

        # WHEN
        components = staged.staged_components(np.array([1.0, 0.0, 0.0]))

        # THEN
        np.testing.assert_allclose(np.concatenate(components), [1.0, 0.0, 0.5], atol=1e-15)

    def test_assemble_inverts_split(self) -> None:
        """ Test assemble(staged_components(u)) = u """
        rng = np.random.default_rng(11)
        for name, alg, blocks in staged_cases():
            with self.subTest(name=name):
                # GIVEN
                staged = StagedStructure(alg=alg, chain=StageChain(blocks), metric=random_metrics(alg.dim, 1, 12)[0])
                u = rng.uniform(-1, 1, alg.dim)

                # WHEN
                assembled = staged.assemble(staged.staged_components(u))

                # THEN
                np.testing.assert_allclose(assembled, u, rtol=0, atol=1e-14)

    def test_staged_covector_pairing(self) -> None:
        """ Test <beta, assemble(s)> = <staged_covector(beta), s> and the inverse map """
        rng = np.random.default_rng(13)
        # GIVEN
        staged = StagedStructure(alg=upper_triangular_nilpotent(), chain=StageChain([3, 2, 1]),
                                 metric=random_metrics(6, 1, 14)[0])
        beta = rng.uniform(-1, 1, 6)
        flat = rng.uniform(-1, 1, 6)
        components = [flat[0:3], flat[3:5], flat[5:6]]

        # WHEN
        staged_beta = staged.staged_covector(beta)

        # THEN
        self.assertLessEqual(abs(beta @ staged.assemble(components) - staged_beta @ flat), 1e-13)
        np.testing.assert_allclose(staged.covector_from_staged(staged_beta), beta, atol=1e-14)

    def test_tail_lies_in_ideal(self) -> None:
        """ Test that tail(components, j) has no coordinates before block j """
        # GIVEN
        staged = StagedStructure(alg=upper_triangular_nilpotent(), chain=StageChain([3, 2, 1]),
                                 metric=random_metrics(6, 1, 15)[0])
        components = staged.staged_components(np.arange(1.0, 7.0))

        # WHEN
        tail = staged.tail(components, 1)

        # THEN
        np.testing.assert_array_equal(tail[:3], np.zeros(3))

    def test_wrong_number_of_components(self) -> None:
        """ Test that assemble refuses a list of the wrong length """
        # GIVEN
        staged = h3_with_coupled_metric()

        with self.assertRaises(StructuralError):
            # WHEN
            staged.assemble([np.ones(1), np.ones(1)])

            # THEN an error should be raised


class TestForms(unittest.TestCase):

    def test_abelian_forms_vanish(self) -> None:
        """ Test that all forms vanish on an abelian algebra """
        # GIVEN
        staged = StagedStructure(alg=abelian(3), chain=StageChain([1, 1, 1]), metric=random_metrics(3, 1, 20)[0])

        # THEN
        for j in [1, 2]:
            with self.subTest(stage=j):
                self.assertEqual(np.max(np.abs(staged.b_tensors[j])), 0.0)
                self.assertEqual(np.max(np.abs(staged.a_tensors[j])), 0.0)

    def test_direct_product_forms_vanish(self) -> None:
        """ Test that b and a vanish on so(3) + r^2 with a block-orthogonal metric """
        # GIVEN
        staged = StagedStructure(alg=so3().direct_sum(abelian(2)), chain=StageChain([3, 2]),
                                 metric=InvariantMetric.identity(5))

        # THEN
        self.assertEqual(np.max(np.abs(staged.b_tensors[1])), 0.0)
        self.assertEqual(np.max(np.abs(staged.a_tensors[1])), 0.0)

    def test_heisenberg_b_form(self) -> None:
        """ Test b_1(X, Y) = Z and a_1 = 0 on the Heisenberg algebra with blocks X | Y | Z """
        # GIVEN
        staged = StagedStructure(alg=heisenberg(), chain=StageChain([1, 1, 1]), metric=InvariantMetric.identity(3))

        # WHEN
        b_value = staged.b_form(1, np.array([1.0]), np.array([0.0, 1.0, 0.0]))
        a_value = staged.a_form(1, np.array([1.0]), np.array([2.0]))

        # THEN
        np.testing.assert_array_equal(b_value, [0.0, 0.0, 1.0])
        np.testing.assert_array_equal(a_value, np.zeros(3))
        np.testing.assert_array_equal(staged.b_form(2, np.array([1.0]), np.array([0.0, 0.0, 1.0])), np.zeros(3))

    def test_se2_b_form(self) -> None:
        """ Test b_1(J, P1) = P2 on se(2) """
        # GIVEN
        staged = StagedStructure(alg=se2(), chain=StageChain([1, 2]), metric=InvariantMetric.identity(3))

        # WHEN
        b_value = staged.b_form(1, np.array([1.0]), np.array([0.0, 1.0, 0.0]))

        # THEN
        np.testing.assert_array_equal(b_value, [0.0, 0.0, 1.0])

    def test_curvature_form(self) -> None:
        """ Test a_1(X, Y) = -Z on the Heisenberg algebra with blocks X, Y | Z """
        # GIVEN
        staged = StagedStructure(alg=heisenberg(), chain=StageChain([2, 1]), metric=InvariantMetric.identity(3))

        # WHEN
        a_value = staged.a_form(1, np.array([1.0, 0.0]), np.array([0.0, 1.0]))

        # THEN
        np.testing.assert_array_equal(a_value, [0.0, 0.0, -1.0])

    def test_a_is_antisymmetric(self) -> None:
        """ Test a_j(kappa, kappa_bar) = -a_j(kappa_bar, kappa) """
        for name, alg, blocks in staged_cases():
            staged = StagedStructure(alg=alg, chain=StageChain(blocks), metric=random_metrics(alg.dim, 1, 21)[0])
            for j in range(1, staged.num_stages + 1):
                with self.subTest(name=name, stage=j):
                    # WHEN
                    tensor = staged.a_tensors[j]

                    # THEN
                    np.testing.assert_allclose(tensor + tensor.transpose(1, 0, 2), 0.0, atol=1e-14)

    def test_forms_take_values_in_ideal(self) -> None:
        """ Test that the stored forms have no components before n_j """
        for name, alg, blocks in staged_cases():
            staged = StagedStructure(alg=alg, chain=StageChain(blocks), metric=random_metrics(alg.dim, 1, 22)[0])
            for j in range(1, staged.num_stages + 1):
                with self.subTest(name=name, stage=j):
                    start = staged.chain.offset(j)
                    self.assertEqual(np.max(np.abs(staged.b_tensors[j][..., :start]), initial=0.0), 0.0)
                    self.assertEqual(np.max(np.abs(staged.a_tensors[j][..., :start]), initial=0.0), 0.0)

    def test_eta_outside_ideal(self) -> None:
        """ Test that b_j refuses a second argument outside n_j """
        # GIVEN
        staged = StagedStructure(alg=se2(), chain=StageChain([1, 2]), metric=InvariantMetric.identity(3))

        with self.assertRaises(StructuralError):
            # WHEN
            staged.b_form(1, np.array([1.0]), np.array([1.0, 0.0, 0.0]))

            # THEN an error should be raised


class TestBracketByStages(unittest.TestCase):

    def test_equals_bracket_on_basis_pairs(self) -> None:
        """ Test bracket_by_stages(e_i, e_j) = bracket(e_i, e_j) for several chains and metrics """
        for name, alg, blocks in staged_cases():
            metrics = [InvariantMetric.identity(alg.dim)] + random_metrics(alg.dim, 2, seed=30)
            for metric_index, metric in enumerate(metrics):
                staged = StagedStructure(alg=alg, chain=StageChain(blocks), metric=metric)
                for i in range(alg.dim):
                    for j in range(alg.dim):
                        with self.subTest(name=name, metric=metric_index, i=i, j=j):
                            # GIVEN
                            e_i, e_j = alg.basis_vector(i), alg.basis_vector(j)

                            # WHEN
                            staged_bracket = staged.bracket_by_stages(e_i, e_j)

                            # THEN
                            np.testing.assert_allclose(staged_bracket, alg.bracket(e_i, e_j), rtol=0, atol=1e-12)

    def test_bilinear(self) -> None:
        """ Test bilinearity of the bracket by stages on random vectors """
        rng = np.random.default_rng(31)
        # GIVEN
        staged = StagedStructure(alg=upper_triangular_nilpotent(), chain=StageChain([3, 2, 1]),
                                 metric=random_metrics(6, 1, 32)[0])
        u, v, w = (rng.uniform(-1, 1, 6) for _ in range(3))
        alpha, gamma = 0.7, -1.3

        # WHEN
        left = staged.bracket_by_stages(alpha * u + gamma * w, v)
        right = alpha * staged.bracket_by_stages(u, v) + gamma * staged.bracket_by_stages(w, v)

        # THEN
        np.testing.assert_allclose(left, right, rtol=0, atol=1e-13)

    def test_metric_independence(self) -> None:
        """ Test that different metrics give the same bracket on random vectors """
        rng = np.random.default_rng(33)
        alg = upper_triangular_nilpotent()
        first, second = [StagedStructure(alg=alg, chain=StageChain([3, 2, 1]), metric=metric)
                         for metric in random_metrics(6, 2, seed=34)]
        for _ in range(10):
            # GIVEN
            u, v = rng.uniform(-1, 1, 6), rng.uniform(-1, 1, 6)

            # THEN
            np.testing.assert_allclose(first.bracket_by_stages(u, v), second.bracket_by_stages(u, v), atol=1e-13)


class TestExpansions(unittest.TestCase):

    def test_two_stage_expansion(self) -> None:
        """ Test the written-out two-block bracket on every basis pair """
        for name, alg, blocks in staged_cases():
            if len(blocks) != 2:
                continue
            for metric_index, metric in enumerate(random_metrics(alg.dim, 2, seed=40)):
                staged = StagedStructure(alg=alg, chain=StageChain(blocks), metric=metric)
                for i in range(alg.dim):
                    for j in range(alg.dim):
                        with self.subTest(name=name, metric=metric_index, i=i, j=j):
                            # GIVEN
                            e_i, e_j = alg.basis_vector(i), alg.basis_vector(j)

                            # WHEN
                            expanded = staged.expand_two_stage(e_i, e_j)

                            # THEN
                            np.testing.assert_allclose(expanded, alg.bracket(e_i, e_j), rtol=0, atol=1e-12)

    def test_three_stage_expansion(self) -> None:
        """ Test the written-out three-block bracket on all 36 basis pairs of the nilpotent algebra """
        # GIVEN
        alg = upper_triangular_nilpotent()
        for metric_index, metric in enumerate([InvariantMetric.identity(6)] + random_metrics(6, 2, seed=41)):
            staged = StagedStructure(alg=alg, chain=StageChain([3, 2, 1]), metric=metric)
            for i in range(6):
                for j in range(6):
                    with self.subTest(metric=metric_index, i=i, j=j):
                        e_i, e_j = alg.basis_vector(i), alg.basis_vector(j)

                        # WHEN
                        expanded = staged.expand_three_stage(e_i, e_j)

                        # THEN
                        np.testing.assert_allclose(expanded, alg.bracket(e_i, e_j), rtol=0, atol=1e-12)

    def test_expansion_needs_matching_chain(self) -> None:
        """ Test that the two-block expansion refuses a three-block chain """
        # GIVEN
        staged = StagedStructure(alg=heisenberg(), chain=StageChain([1, 1, 1]), metric=InvariantMetric.identity(3))

        with self.assertRaises(StructuralError):
            # WHEN
            staged.expand_two_stage(np.ones(3), np.ones(3))

            # THEN an error should be raised

    def test_hand_computed_heisenberg_example(self) -> None:
        """ Test [X + Y, Y + Z] = Z with the coupled metric via both routes """
        # GIVEN
        staged = h3_with_coupled_metric()
        u, v = np.array([1.0, 1.0, 0.0]), np.array([0.0, 1.0, 1.0])

        # THEN
        np.testing.assert_allclose(staged.bracket_by_stages(u, v), [0.0, 0.0, 1.0], atol=1e-15)
        np.testing.assert_allclose(staged.expand_three_stage(u, v), [0.0, 0.0, 1.0], atol=1e-15)
