import unittest
from typing import Dict

import numpy as np

from staged_reduction.common.errors import StructuralError
from staged_reduction.entities.stages.stage_chain import InvariantMetric, StageChain


class TestStageChain(unittest.TestCase):

    def test_layout(self) -> None:
        """ Test offsets and slices of the blocks """
        # GIVEN
        chain = StageChain([3, 2, 1])

        # THEN
        self.assertEqual(chain.dim, 6)
        self.assertEqual(chain.num_stages, 2)
        self.assertEqual(chain.offset(1), 3)
        self.assertEqual(chain.block_slice(2), slice(5, 6))

    def test_empty_block(self) -> None:
        """ Test that a block of size zero is rejected """
        with self.assertRaises(StructuralError):
            # WHEN
            StageChain([2, 0, 1])

            # THEN an error should be raised

    def test_no_blocks(self) -> None:
        """ Test that an empty chain is rejected """
        with self.assertRaises(StructuralError):
            # WHEN
            StageChain([])

            # THEN an error should be raised

    def test_json_back_and_forth(self) -> None:
        """ test converting back and forth from and to json """
        # GIVEN
        chain = StageChain([1, 2])

        # THEN
        self.assertDictEqual(chain.to_json(), StageChain.from_json(chain.to_json()).to_json())


class TestInvariantMetric(unittest.TestCase):

    @staticmethod
    def get_default_inputs() -> Dict:
        """ Function to get default (valid) inputs for InvariantMetric() """
        return dict(gram=np.array([[1.0, 0.0, 0.5], [0.0, 1.0, 0.0], [0.5, 0.0, 1.0]]))

    def test_successful_validation(self) -> None:
        """ Test initializing InvariantMetric object with correct input """
        # GIVEN
        input_dict = TestInvariantMetric.get_default_inputs()

        # WHEN
        InvariantMetric(**input_dict)

        # THEN no error should be raised

    def test_not_symmetric(self) -> None:
        """ Test a non-symmetric gram matrix """
        # GIVEN
        input_dict = TestInvariantMetric.get_default_inputs()
        input_dict["gram"][0, 2] = 0.4

        with self.assertRaises(ValueError):
            # WHEN
            InvariantMetric(**input_dict)

            # THEN an error should be raised

    def test_not_positive_definite(self) -> None:
        """ Test an indefinite gram matrix """
        # GIVEN
        input_dict = TestInvariantMetric.get_default_inputs()
        input_dict["gram"][1, 1] = -1.0

        with self.assertRaises(ValueError):
            # WHEN
            InvariantMetric(**input_dict)

            # THEN an error should be raised

    def test_identity_keyword(self) -> None:
        """ Test the 'identity' keyword in json """
        # WHEN
        metric = InvariantMetric.from_json("identity", dim=4)

        # THEN
        np.testing.assert_array_equal(metric.gram, np.eye(4))

    def test_wrong_shape_in_json(self) -> None:
        """ Test a matrix of the wrong size in json """
        with self.assertRaises(StructuralError):
            # WHEN
            InvariantMetric.from_json([[1.0, 0.0], [0.0, 1.0]], dim=3)

            # THEN an error should be raised
