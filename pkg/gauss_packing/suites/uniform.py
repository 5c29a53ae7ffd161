"""
This file contains the suites checking the uniform lower bound 1 - 2/(n+2)
on the densities of [1/(n+1), d] for d > 1/n, and of [d, 1] for d < 1/2.

Author(s): David Marchant
"""
from typing import Iterator, List, Tuple

import numpy as np

from ..core.base_suite import BaseSuite
from ..core.ifs import Interval
from ..core.measure import density

# Sampled distances from the excluded end span this many decades
DECADES = 8


class UniformLeftSuite(BaseSuite):
    name = "uniform_left"

    def _intervals(self, rng:np.random.Generator)->List[Interval]:
        low = 1 / (self.n + 1)
        span = 1 - 1 / self.n
        intervals = [Interval(low, 1.0)]
        for offset in 10.0 ** -rng.uniform(0, DECADES, self.samples):
            intervals.append(Interval(low, min(1.0,
                1 / self.n + span * float(offset))))
        return intervals

    def _checks(self, rng:np.random.Generator
            )->Iterator[Tuple[float,float]]:
        bound = 1 - 2 / (self.n + 2) - self.tol
        for interval in self._intervals(rng):
            record = density(self.system, self.h, interval,
                max_depth=self.max_depth, tol=self.measure_tol)
            yield record.density_lower, bound


class UniformRightSuite(UniformLeftSuite):
    name = "uniform_right"

    def _intervals(self, rng:np.random.Generator)->List[Interval]:
        intervals = [Interval(0.0, 1.0)]
        for offset in 10.0 ** -rng.uniform(0, DECADES, self.samples):
            intervals.append(Interval(max(0.0, 0.5 - 0.5 * float(offset)),
                1.0))
        return intervals
