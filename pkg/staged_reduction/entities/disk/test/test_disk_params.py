import unittest

from staged_reduction.entities.disk.disk_params import DiskParams


class TestDiskParams(unittest.TestCase):

    def test_default_inertia(self) -> None:
        """ Test the moments of inertia of a thin homogeneous disk """
        # WHEN
        params = DiskParams(M=2.0, r=0.5)

        # THEN
        self.assertAlmostEqual(params.I1, 0.125, delta=1e-15)
        self.assertAlmostEqual(params.I3, 0.25, delta=1e-15)
        self.assertEqual(params.g, 9.8)

    def test_json(self) -> None:
        """ Test that comment keys are ignored and values survive to_json """
        # GIVEN
        params_dict = {"_comment": "thick disk", "M": 1.5, "e": 0.2}

        # WHEN
        params = DiskParams.from_json(params_dict)

        # THEN
        self.assertDictEqual(DiskParams.from_json(params.to_json()).to_json(), params.to_json())
        self.assertEqual(params.e, 0.2)

    def test_unknown_key(self) -> None:
        """ Test a misspelled parameter """
        with self.assertRaises(ValueError):
            # WHEN
            DiskParams.from_json({"mass": 1.0})

            # THEN an error should be raised

    def test_invalid_values(self) -> None:
        """ Test non-physical parameters """
        for kwargs in [dict(M=0.0), dict(r=-1.0), dict(e=-0.1), dict(I1=0.0), dict(g=float("nan"))]:
            with self.subTest(kwargs=kwargs):
                with self.assertRaises(ValueError):
                    # WHEN
                    DiskParams(**kwargs)

                    # THEN an error should be raised
