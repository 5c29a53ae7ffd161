"""
This file contains the suite checking conformality of m_n: the measure of
g_k(A) is |slope_k|^h times the measure of A.

Author(s): David Marchant
"""
from typing import Iterator, Tuple

import numpy as np

from ..core.base_suite import BaseSuite
from ..core.ifs import Interval, gauss_branch
from ..core.measure import measure_interval

LENGTH_DECADES = (-6, 0)


def random_interval(rng:np.random.Generator)->Interval:
    """An interval of [0,1] with log-uniform length and uniform position."""
    length = 10.0 ** rng.uniform(*LENGTH_DECADES)
    left = rng.uniform(0, 1 - length)
    return Interval.clipped(left, left + length)


class ConformalSuite(BaseSuite):
    name = "conformal"

    def _checks(self, rng:np.random.Generator
            )->Iterator[Tuple[float,float]]:
        for _ in range(self.samples):
            k = int(rng.integers(1, self.n + 1))
            g = gauss_branch(k)
            a = random_interval(rng)
            image = g.image(a)
            weight = g.contraction ** self.h
            base = measure_interval(self.system, self.h, a,
                max_depth=self.max_depth, tol=self.measure_tol)
            mapped = measure_interval(self.system, self.h, image,
                max_depth=self.max_depth, tol=self.measure_tol)
            yield mapped.upper + self.tol, weight * base.lower
            yield weight * base.upper + self.tol, mapped.lower
