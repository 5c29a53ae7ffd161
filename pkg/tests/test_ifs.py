
import math
import unittest

import numpy as np

from ..gauss_packing.core.ifs import Interval, LinearMap, IfsSystem, Word, \
    gauss_branch, make_gauss_linear_ifs, compose_word, cylinder_interval, \
    generation_maps, enumerate_generation, limit_set_hull, leftmost_point, \
    rightmost_point, periodic_point, system_geometry, grid_points, \
    limit_set_meets, limit_point_in, expand_to_grid, expand_batch
from ..gauss_packing.core.dimension import solve_dimension
from .shared import leftmost_oracle, setup, teardown


class IntervalTests(unittest.TestCase):
    def setUp(self)->None:
        super().setUp()
        setup()

    def tearDown(self)->None:
        super().tearDown()
        teardown()

    # Test Interval creation
    def testIntervalCreation(self)->None:
        interval = Interval(0.25, 0.5)
        self.assertEqual(interval.left, 0.25)
        self.assertEqual(interval.right, 0.5)
        self.assertEqual(interval.length, 0.25)
        self.assertEqual(interval.center, 0.375)
        self.assertIsInstance(Interval(0, 1).left, float)

        Interval(0.5, 0.5)

        with self.assertRaises(ValueError):
            Interval(0.5, 0.25)
        with self.assertRaises(ValueError):
            Interval(-0.1, 0.5)
        with self.assertRaises(ValueError):
            Interval(0.5, 1.1)
        with self.assertRaises(ValueError):
            Interval(0.0, float("nan"))
        with self.assertRaises(TypeError):
            Interval("0", 1)

    # Test Interval helpers
    def testIntervalHelpers(self)->None:
        self.assertEqual(Interval.clipped(-1, 0.5), Interval(0, 0.5))
        self.assertEqual(Interval.centered(0.9, 0.2), Interval(0.7, 1.0))
        interval = Interval(0.25, 0.5)
        self.assertTrue(interval.contains(0.25))
        self.assertTrue(interval.contains(0.5))
        self.assertFalse(interval.contains(0.51))


class IfsTests(unittest.TestCase):
    def setUp(self)->None:
        super().setUp()
        setup()

    def tearDown(self)->None:
        super().tearDown()
        teardown()

    # Test gauss_branch builds g_k
    def testGaussBranch(self)->None:
        for k in range(1, 10):
            g = gauss_branch(k)
            self.assertEqual(g.index, k)
            self.assertAlmostEqual(g(0), 1 / k, places=15)
            self.assertAlmostEqual(g(1), 1 / (k + 1), places=15)
            self.assertTrue(g.reverses)
            self.assertAlmostEqual(g.contraction, 1 / (k * (k + 1)),
                places=15)
            image = g.image()
            self.assertAlmostEqual(image.left, 1 / (k + 1), places=15)
            self.assertAlmostEqual(image.right, 1 / k, places=15)
            half = g.image(Interval(0, 0.5))
            self.assertEqual(half.left, g(0.5))
            self.assertEqual(half.right, g(0))

        with self.assertRaises(ValueError):
            gauss_branch(0)

    # Test LinearMap rejects maps that are not contractions of [0,1]
    def testLinearMapValidation(self)->None:
        LinearMap(slope=0.5, intercept=0.25, index=1)
        with self.assertRaises(ValueError):
            LinearMap(slope=1.0, intercept=0.0, index=1)
        with self.assertRaises(ValueError):
            LinearMap(slope=0.0, intercept=0.5, index=1)
        with self.assertRaises(ValueError):
            LinearMap(slope=0.5, intercept=0.75, index=1)
        with self.assertRaises(ValueError):
            LinearMap(slope=0.5, intercept=0.25, index=0)

    # Test make_gauss_linear_ifs
    def testMakeGaussLinearIfs(self)->None:
        for n in [1, 2, 3, 10, 64]:
            system = make_gauss_linear_ifs(n)
            self.assertEqual(system.n, n)
            self.assertEqual(len(system.branches), n)
            self.assertEqual([g.index for g in system.branches],
                list(range(1, n + 1)))
            self.assertAlmostEqual(system.contraction_sum, n / (n + 1),
                places=14)
            self.assertEqual(system.branch(n), system.branches[-1])

        with self.assertRaises(ValueError):
            make_gauss_linear_ifs(0)
        with self.assertRaises(TypeError):
            make_gauss_linear_ifs(2.0)
        with self.assertRaises(ValueError):
            make_gauss_linear_ifs(3).branch(4)

    # Test IfsSystem rejects bad branch lists
    def testIfsSystemValidation(self)->None:
        system = IfsSystem.from_branches((gauss_branch(1), gauss_branch(2)))
        self.assertEqual(system, make_gauss_linear_ifs(2))
        self.assertEqual(system.branches, (gauss_branch(1), gauss_branch(2)))

        with self.assertRaises(ValueError):
            IfsSystem.from_branches((gauss_branch(1),), n=2)
        with self.assertRaises(ValueError):
            IfsSystem.from_branches((gauss_branch(2), gauss_branch(1)))
        overlapping = LinearMap(slope=0.5, intercept=0.4, index=2)
        with self.assertRaises(ValueError):
            IfsSystem.from_branches((gauss_branch(1), overlapping))
        with self.assertRaises(TypeError):
            IfsSystem.from_branches((gauss_branch(1), (0.5, 0.25)))

        with self.assertRaises(ValueError):
            IfsSystem(n=1, slopes=(1.0,), intercepts=(0.0,))
        with self.assertRaises(ValueError):
            IfsSystem(n=1, slopes=(0.5,), intercepts=(0.75,))
        with self.assertRaises(ValueError):
            IfsSystem(n=1, slopes=(float("nan"),), intercepts=(0.5,))
        with self.assertRaises(ValueError):
            IfsSystem(n=2, slopes=(0.5, 0.25), intercepts=(0.5,))
        with self.assertRaises(TypeError):
            IfsSystem(n=1, slopes=0.5, intercepts=(0.25,))

    # Test systems are shared per n and cheap to build for large n
    def testMakeGaussLinearIfsShared(self)->None:
        self.assertIs(make_gauss_linear_ifs(5), make_gauss_linear_ifs(5))
        system = make_gauss_linear_ifs(1024)
        self.assertEqual(len(system.slopes), 1024)
        self.assertAlmostEqual(system.contraction_ratios[-1],
            1 / (1024 * 1025), places=15)
        self.assertEqual(system.branch(1024), gauss_branch(1024))

    # Test Word validation
    def testWord(self)->None:
        word = Word((2, 1))
        self.assertEqual(len(word), 2)
        self.assertEqual(list(word), [2, 1])
        self.assertEqual(len(Word(())), 0)
        with self.assertRaises(ValueError):
            Word((0, 1))
        with self.assertRaises(TypeError):
            Word((1.0,))

    # Test compose_word and cylinder_interval
    def testCylinderInterval(self)->None:
        system = make_gauss_linear_ifs(2)
        self.assertEqual(compose_word(system, []), (1.0, 0.0))

        interval = cylinder_interval(system, [2, 1])
        self.assertAlmostEqual(interval.left, 1 / 3, places=15)
        self.assertAlmostEqual(interval.right, 5 / 12, places=15)

        interval = cylinder_interval(system, Word((1, 1)))
        self.assertAlmostEqual(interval.left, 1 / 2, places=15)
        self.assertAlmostEqual(interval.right, 3 / 4, places=15)

        scale, shift = compose_word(system, [2, 1])
        self.assertAlmostEqual(scale, 1 / 12, places=15)
        self.assertAlmostEqual(shift, 1 / 3, places=15)

        with self.assertRaises(ValueError):
            cylinder_interval(system, [])
        with self.assertRaises(ValueError):
            cylinder_interval(system, [3])

    # Test generation_maps agrees with cylinder_interval
    def testGenerationMaps(self)->None:
        system = make_gauss_linear_ifs(3)
        h = solve_dimension(system).h
        scales, shifts, weights = generation_maps(system, 3, h=h)
        self.assertEqual(len(scales), 27)
        self.assertAlmostEqual(math.fsum(weights), 1.0, places=12)

        # Lexicographic order puts word (2, 3, 1) at index 9 + 6 + 0
        scale, shift = compose_word(system, [2, 3, 1])
        self.assertAlmostEqual(scales[15], scale, places=15)
        self.assertAlmostEqual(shifts[15], shift, places=15)

        _, _, no_weights = generation_maps(system, 2)
        self.assertEqual(len(no_weights), 0)

        with self.assertRaises(RuntimeError):
            generation_maps(system, 10, cap=1000)

    # Test enumerate_generation
    def testEnumerateGeneration(self)->None:
        system = make_gauss_linear_ifs(2)
        cylinders = enumerate_generation(system, 4)
        self.assertEqual(len(cylinders), 16)
        self.assertAlmostEqual(
            math.fsum(c.weight for c in cylinders), 1.0, places=12)
        for cylinder in cylinders:
            self.assertEqual(cylinder.interval,
                cylinder_interval(system, cylinder.word))

        # Cylinders of one generation only meet at their ends
        intervals = sorted((c.interval for c in cylinders),
            key=lambda i: i.left)
        for lower, upper in zip(intervals, intervals[1:]):
            self.assertLessEqual(lower.right, upper.left + 1e-15)

        with self.assertRaises(ValueError):
            enumerate_generation(system, 0)

    # Test the hull of the limit set has the closed form ends
    def testLimitSetHull(self)->None:
        system = make_gauss_linear_ifs(2)
        hull = limit_set_hull(system)
        self.assertAlmostEqual(hull.left, 4 / 11, places=15)
        self.assertAlmostEqual(hull.right, 9 / 11, places=15)

        for n in [1, 2, 3, 7, 64]:
            system = make_gauss_linear_ifs(n)
            x_n = leftmost_oracle(n)
            self.assertAlmostEqual(leftmost_point(system), x_n, places=14)
            self.assertAlmostEqual(rightmost_point(system), 1 - x_n / 2,
                places=14)

        self.assertAlmostEqual(leftmost_point(make_gauss_linear_ifs(1)),
            2 / 3, places=15)

    # Test periodic points are fixed by their word and inside the hull
    def testPeriodicPoint(self)->None:
        system = make_gauss_linear_ifs(3)
        hull = limit_set_hull(system)
        for word in [[1], [2], [3], [1, 3], [3, 2, 1]]:
            x = periodic_point(system, word)
            scale, shift = compose_word(system, word)
            self.assertAlmostEqual(scale * x + shift, x, places=14)
            self.assertTrue(cylinder_interval(system, word).contains(x))
            self.assertTrue(hull.contains(x))

        self.assertAlmostEqual(periodic_point(system, [3, 1]),
            leftmost_point(system), places=14)

        system = make_gauss_linear_ifs(2)
        self.assertAlmostEqual(periodic_point(system, [1]), 2 / 3, places=15)
        self.assertTrue(cylinder_interval(system, [2, 2]).contains(
            periodic_point(system, [2, 2])))

    # Test random periodic points fall in their own cylinders
    def testPeriodicPointProperty(self)->None:
        rng = np.random.default_rng(7)
        for _ in range(1000):
            n = int(rng.integers(1, 17))
            l = int(rng.integers(1, 13))
            system = make_gauss_linear_ifs(n)
            word = [int(k) for k in rng.integers(1, n + 1, size=l)]
            x = periodic_point(system, word)
            interval = cylinder_interval(system, word)
            self.assertGreaterEqual(x, interval.left - 1e-15)
            self.assertLessEqual(x, interval.right + 1e-15)

    # Test the shape of the first generations of cylinders
    def testGenerationStructure(self)->None:
        system = make_gauss_linear_ifs(2)
        first = enumerate_generation(system, 1)
        self.assertAlmostEqual(first[0].interval.left, 1 / 2, places=15)
        self.assertAlmostEqual(first[0].interval.right, 1.0, places=15)
        self.assertAlmostEqual(first[1].interval.left, 1 / 3, places=15)
        self.assertAlmostEqual(first[1].interval.right, 1 / 2, places=15)

        lengths = sorted(c.interval.length
            for c in enumerate_generation(system, 2))
        for length, expected in zip(lengths, [1 / 36, 1 / 12, 1 / 12, 1 / 4]):
            self.assertAlmostEqual(length, expected, places=15)

        for n in [2, 3, 5]:
            system = make_gauss_linear_ifs(n)
            for l in [1, 2, 3]:
                cylinders = enumerate_generation(system, l)
                total = math.fsum(c.interval.length for c in cylinders)
                self.assertAlmostEqual(total, (1 - 1 / (n + 1)) ** l,
                    places=13)

                # Every cylinder sits inside the cylinder of its prefix
                if l > 1:
                    for cylinder in cylinders:
                        parent = cylinder_interval(system,
                            cylinder.word.letters[:-1])
                        self.assertGreaterEqual(cylinder.interval.left,
                            parent.left - 1e-15)
                        self.assertLessEqual(cylinder.interval.right,
                            parent.right + 1e-15)

    # Test the leftmost point lies between the neighbouring grid points
    def testLeftmostPointBounds(self)->None:
        self.assertAlmostEqual(leftmost_point(make_gauss_linear_ifs(10)),
            20 / 219, places=15)
        for n in range(2, 65):
            x_n = leftmost_point(make_gauss_linear_ifs(n))
            self.assertGreater(x_n, 1 / (n + 1))
            self.assertLess(x_n, 1 / n)

    # Test the grid and image boundaries
    def testSystemGeometry(self)->None:
        system = make_gauss_linear_ifs(4)
        grid = grid_points(system)
        self.assertEqual(len(grid), 4)
        for got, j in zip(grid, [4, 3, 2, 1]):
            self.assertAlmostEqual(got, 1 / j, places=15)

        geo = system_geometry(system)
        self.assertIs(geo, system_geometry(system))
        self.assertEqual(len(geo.boundaries), 5)
        self.assertAlmostEqual(geo.boundaries[0], 1 / 5, places=15)
        self.assertEqual(geo.grid_distance(0.3, 0.4), 0.0)
        self.assertAlmostEqual(geo.grid_distance(0.26, 0.3),
            min(0.26 - 0.25, 1 / 3 - 0.3), places=15)

        # Branches are sorted by position, so g_4 comes first
        self.assertEqual(geo.order, [3, 2, 1, 0])

        # Neighbouring images share one end, so the boundaries are 1/j
        for n in [2, 3, 4, 7, 16, 64, 200]:
            geo = system_geometry(make_gauss_linear_ifs(n))
            for i in range(n - 1):
                self.assertEqual(geo.image_lows[i + 1], geo.image_highs[i])
            self.assertEqual(len(geo.boundaries), n + 1)
            for got, j in zip(geo.boundaries, range(n + 1, 0, -1)):
                self.assertAlmostEqual(got, 1 / j, delta=1e-15)

    # Test limit_set_meets on gaps and on cylinders
    def testLimitSetMeets(self)->None:
        system = make_gauss_linear_ifs(2)
        self.assertTrue(limit_set_meets(system, Interval(0.3, 0.9)))
        self.assertTrue(limit_set_meets(system, cylinder_interval(system,
            [1, 2, 1])))
        self.assertFalse(limit_set_meets(system, Interval(0.0, 0.3)))
        self.assertFalse(limit_set_meets(system, Interval(0.85, 1.0)))

        # The gap between the hulls of the two branches
        hull = limit_set_hull(system)
        g1, g2 = system.branches
        gap = Interval(max(g2(hull.left), g2(hull.right)) + 1e-9,
            min(g1(hull.left), g1(hull.right)) - 1e-9)
        self.assertFalse(limit_set_meets(system, gap))

    # Test limit_point_in returns a point inside the interval
    def testLimitPointIn(self)->None:
        system = make_gauss_linear_ifs(3)
        for word in [[1], [2, 1], [3, 3, 2]]:
            interval = cylinder_interval(system, word)
            x = limit_point_in(system, interval)
            self.assertIsNotNone(x)
            self.assertTrue(interval.contains(x))

        self.assertIsNone(limit_point_in(system, Interval(0.0, 0.1)))

    # Test expand_to_grid on intervals inside branch images
    def testExpandToGrid(self)->None:
        system = make_gauss_linear_ifs(2)

        expanded, steps = expand_to_grid(system, Interval(0.40, 0.45))
        self.assertEqual(steps, 1)
        self.assertAlmostEqual(expanded.left, 0.3, places=12)
        self.assertAlmostEqual(expanded.right, 0.6, places=12)

        expanded, steps = expand_to_grid(system, Interval(0.67, 0.70))
        self.assertEqual(steps, 3)
        self.assertTrue(expanded.contains(0.5))

        already, steps = expand_to_grid(system, Interval(0.45, 0.55))
        self.assertEqual(steps, 0)
        self.assertEqual(already, Interval(0.45, 0.55))

        with self.assertRaises(ValueError):
            expand_to_grid(system, Interval(0.0, 0.1))
        with self.assertRaises(RuntimeError):
            expand_to_grid(system, Interval(0.67, 0.70), cap=2)

    # Test expansion keeps the ratio of length to the measure scale
    def testExpandToGridScaling(self)->None:
        system = make_gauss_linear_ifs(2)
        interval = Interval(0.67, 0.70)
        expanded, steps = expand_to_grid(system, interval)
        self.assertEqual(steps, 3)
        # Every step here is through g_1, which halves lengths
        self.assertAlmostEqual(expanded.length, interval.length * 2 ** steps,
            places=12)

    # Test expand_batch agrees with expand_to_grid
    def testExpandBatch(self)->None:
        system = make_gauss_linear_ifs(2)
        intervals = [Interval(0.40, 0.45), Interval(0.67, 0.70),
            Interval(0.45, 0.55), Interval(0.36, 0.37)]
        lefts = np.array([i.left for i in intervals])
        rights = np.array([i.right for i in intervals])
        new_lefts, new_rights, steps = expand_batch(system, lefts, rights)

        for k, interval in enumerate(intervals):
            expanded, count = expand_to_grid(system, interval)
            self.assertEqual(steps[k], count)
            self.assertAlmostEqual(new_lefts[k], expanded.left, places=12)
            self.assertAlmostEqual(new_rights[k], expanded.right, places=12)

        # The inputs are not changed in place
        self.assertEqual(lefts[0], 0.40)

        # Intervals outside every branch image come back unchanged
        far_lefts, far_rights, far_steps = expand_batch(system,
            np.array([0.0]), np.array([0.1]))
        self.assertEqual(far_steps[0], 0)
        self.assertEqual(far_lefts[0], 0.0)
        self.assertEqual(far_rights[0], 0.1)
