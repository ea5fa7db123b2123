import unittest

from staged_reduction.common.errors import InvariantViolation
from staged_reduction.entities.output.comparison_summary import ComparisonSummary
from staged_reduction.entities.output.validation_report import ValidationReport


class TestValidationReport(unittest.TestCase):

    def test_pass_and_fail(self) -> None:
        """ Test that a check passes iff its residual is at most the tolerance """
        # GIVEN
        passing = ValidationReport(name="jacobi", residual=1e-13, tolerance=1e-12)
        failing = ValidationReport(name="ideal", residual=1.0, tolerance=1e-12, details={"stage_1": 1.0})

        # THEN
        self.assertTrue(passing.passed)
        self.assertFalse(failing.passed)
        passing.raise_if_failed(InvariantViolation)
        with self.assertRaises(InvariantViolation):
            failing.raise_if_failed(InvariantViolation)

    def test_json(self) -> None:
        """ Test the json form of a report """
        # GIVEN
        report = ValidationReport(name="ideal", residual=0.5, tolerance=1e-12, details={"stage_1": 0.5})

        # WHEN
        restored = ValidationReport.from_json(report.to_json())

        # THEN
        self.assertDictEqual(restored.to_json(), report.to_json())
        self.assertFalse(report.to_json()["passed"])


class TestComparisonSummary(unittest.TestCase):

    def test_tolerances(self) -> None:
        """ Test the default and the configured tolerances """
        # GIVEN
        values = dict(max_dev=1e-7, max_constraint_residual=1e-9, max_energy_drift=1e-7)

        # WHEN
        default = ComparisonSummary(scenario="disk", **values)
        strict = ComparisonSummary(scenario="disk", tolerances={"max_dev": 1e-8}, **values)

        # THEN
        self.assertTrue(default.passed)
        self.assertFalse(strict.passed)
        self.assertAlmostEqual(strict.tolerances["max_energy_drift"], 1e-6, delta=1e-20)
        self.assertDictEqual(ComparisonSummary.from_json(strict.to_json()).to_json(), strict.to_json())

    def test_unknown_tolerance(self) -> None:
        """ Test a tolerance for a quantity that is not compared """
        with self.assertRaises(ValueError):
            # WHEN
            ComparisonSummary(scenario="disk", max_dev=0.0, max_constraint_residual=0.0, max_energy_drift=0.0,
                              tolerances={"max_time": 1.0})

            # THEN an error should be raised
