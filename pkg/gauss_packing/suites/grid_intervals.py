"""
This file contains the suite checking that the intervals [1/(k+l), 1/k]
between grid points have density at least 1.

Author(s): David Marchant
"""
from typing import Iterator, Tuple

import numpy as np

from ..core.base_suite import BaseSuite
from ..core.ifs import Interval
from ..core.measure import density


class GridIntervalsSuite(BaseSuite):
    name = "grid_intervals"

    def _checks(self, rng:np.random.Generator
            )->Iterator[Tuple[float,float]]:
        for k in range(1, self.n + 1):
            for j in range(k + 1, self.n + 2):
                record = density(self.system, self.h, Interval(1 / j, 1 / k),
                    max_depth=self.max_depth, tol=self.measure_tol)
                yield record.density_upper, 1 - self.tol
