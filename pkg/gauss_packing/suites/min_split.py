"""
This file contains the suite checking that joining two adjacent intervals
never gives a density below the smaller of their densities.

Author(s): David Marchant
"""
from typing import Iterator, Tuple

import numpy as np

from ..core.base_suite import BaseSuite
from ..core.ifs import Interval
from ..core.measure import density
from ..core.vars import CLOSED_FORM_SLACK
from .conformal import random_interval


class MinSplitSuite(BaseSuite):
    name = "min_split"

    def _checks(self, rng:np.random.Generator
            )->Iterator[Tuple[float,float]]:
        checked = 0
        while checked < self.samples:
            whole = random_interval(rng)
            middle = rng.uniform(whole.left, whole.right)
            if not whole.left < middle < whole.right:
                continue
            checked += 1
            parts = [Interval(whole.left, middle),
                Interval(middle, whole.right)]
            lowers = [density(self.system, self.h, part,
                max_depth=self.max_depth, tol=self.measure_tol).density_lower
                for part in parts]
            joined = density(self.system, self.h, whole,
                max_depth=self.max_depth, tol=self.measure_tol)
            yield joined.density_upper, min(lowers) - CLOSED_FORM_SLACK
