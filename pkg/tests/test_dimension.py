
import math
import time
import unittest

from ..gauss_packing.core.dimension import DimensionResult, moran_residual, \
    solve_dimension, check_dimension
from ..gauss_packing.core.ifs import make_gauss_linear_ifs
from .shared import long_tests_skipped, moran_oracle, setup, teardown


class DimensionTests(unittest.TestCase):
    def setUp(self)->None:
        super().setUp()
        setup()

    def tearDown(self)->None:
        super().tearDown()
        teardown()

    # Test DimensionResult validation
    def testDimensionResultCreation(self)->None:
        DimensionResult(h=0.5, residual=1e-15, iterations=3, tolerance=1e-14)
        with self.assertRaises(ValueError):
            DimensionResult(h=1.0, residual=0.0, iterations=3,
                tolerance=1e-14)
        with self.assertRaises(ValueError):
            DimensionResult(h=0.5, residual=1e-3, iterations=3,
                tolerance=1e-14)
        with self.assertRaises(TypeError):
            DimensionResult(h=0.5, residual=0.0, iterations=1.5,
                tolerance=1e-14)

    # Test moran_residual values
    def testMoranResidual(self)->None:
        system = make_gauss_linear_ifs(2)
        self.assertAlmostEqual(moran_residual(system, 0.0), 1.0, places=15)
        self.assertAlmostEqual(moran_residual(system, 1.0), -1 / 3,
            places=15)
        residual = moran_residual(system, 0.6)
        self.assertGreater(residual, 0.0)
        self.assertLess(residual, 2e-3)
        with self.assertRaises(ValueError):
            moran_residual(system, -0.1)

    # Test solve_dimension for S_1 and S_2
    def testSolveDimensionSmall(self)->None:
        result = solve_dimension(make_gauss_linear_ifs(1))
        self.assertEqual(result.h, 0.0)

        result = solve_dimension(make_gauss_linear_ifs(2))
        self.assertAlmostEqual(result.h, 0.60097, places=5)
        self.assertAlmostEqual(result.h, moran_oracle(2), places=12)
        self.assertLessEqual(abs(result.residual), 1e-14)
        self.assertGreater(result.iterations, 0)

    # Test solve_dimension against plain bisection
    def testSolveDimensionAgainstBisection(self)->None:
        for n in [2, 3, 4, 8, 16, 32, 64, 100]:
            result = solve_dimension(make_gauss_linear_ifs(n))
            self.assertAlmostEqual(result.h, moran_oracle(n), places=12)

    # Test the dimension increases with n and stays below 1
    def testDimensionMonotone(self)->None:
        previous = 0.0
        for n in range(2, 40):
            h = solve_dimension(make_gauss_linear_ifs(n)).h
            self.assertGreater(h, previous)
            self.assertLess(h, 1.0)
            previous = h

    # Test every S_n up to n = 1024 solves tightly, in order, within a second
    def testSolveDimensionWideRange(self)->None:
        start = time.perf_counter()
        results = {n: solve_dimension(make_gauss_linear_ifs(n))
            for n in range(2, 1025)}
        elapsed = time.perf_counter() - start

        previous = 0.0
        for n, result in results.items():
            self.assertLessEqual(abs(result.residual), 1e-14)
            self.assertGreater(result.h, previous)
            previous = result.h
        self.assertLess(1 - results[1024].h, 1 - results[64].h)

        if not long_tests_skipped():
            self.assertLess(elapsed, 1.0)

    # Test a looser tolerance is honoured
    def testSolveDimensionTolerance(self)->None:
        system = make_gauss_linear_ifs(5)
        result = solve_dimension(system, tolerance=1e-6)
        self.assertLessEqual(abs(result.residual), 1e-6)
        with self.assertRaises(ValueError):
            solve_dimension(system, tolerance=0.0)

    # Test check_dimension accepts the solution only
    def testCheckDimension(self)->None:
        system = make_gauss_linear_ifs(3)
        h = solve_dimension(system).h
        check_dimension(system, h)
        check_dimension(system, h + 1e-13)
        with self.assertRaises(ValueError):
            check_dimension(system, h + 1e-6)
        with self.assertRaises(ValueError):
            check_dimension(system, 0.5 * h)
