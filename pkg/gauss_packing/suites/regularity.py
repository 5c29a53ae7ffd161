"""
This file contains the suite sampling the ratio m_n(B(x,r))/r^h over
centres x in the limit set and radii r in [1e-6, 1/4]. The ratios must be
positive and finite, and their spread gives an empirical regularity
constant C_n.

Author(s): David Marchant
"""
import math

from typing import Iterator, Tuple

import numpy as np

from ..core.base_suite import BaseSuite
from ..core.ifs import Interval
from ..core.measure import measure_interval
from ..core.packing import candidate_centers

RADIUS_RANGE = (1e-6, 0.25)
CENTER_GENERATION = 2
SMALLEST_RATIO = np.finfo(float).tiny


class RegularitySuite(BaseSuite):
    name = "regularity"

    def _checks(self, rng:np.random.Generator
            )->Iterator[Tuple[float,float]]:
        centers = candidate_centers(self.system, CENTER_GENERATION)
        low, high = (math.log10(r) for r in RADIUS_RANGE)
        largest, smallest = 0.0, math.inf
        for _ in range(self.samples):
            x = centers[int(rng.integers(0, len(centers)))]
            r = 10.0 ** rng.uniform(low, high)
            bound = measure_interval(self.system, self.h,
                Interval.centered(x, r), max_depth=self.max_depth,
                tol=self.measure_tol)
            ratio = bound.lower / r ** self.h
            if ratio > 0 and math.isfinite(ratio):
                largest = max(largest, ratio)
                smallest = min(smallest, ratio)
            yield ratio, SMALLEST_RATIO
        if largest > 0:
            self.details = {
                "empirical_constant": max(largest, 1 / smallest),
                "ratio_min": smallest,
                "ratio_max": largest
            }
