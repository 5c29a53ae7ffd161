"""
This file contains the suite checking densities of the intervals [0,r]
centred at the limit set, that is with r/2 in J_n. For 1/(k+1) < r <= 1/k
the density is at least [((n-k)/(n+1)) * (k/(k+1))]^h.

Author(s): David Marchant
"""
import math

from typing import Iterator, List, Tuple

import numpy as np

from ..core.base_suite import BaseSuite
from ..core.ifs import Interval, leftmost_point, periodic_point
from ..core.measure import density

# Longest random word used to place a centre
MAX_WORD_LENGTH = 8


class ZeroRSuite(BaseSuite):
    name = "zero_r"

    def _radii(self, rng:np.random.Generator)->List[float]:
        # Centres in the images of g_2..g_n keep r = 2c within [0,1]
        radii = [2 * leftmost_point(self.system), 1.0]
        for _ in range(self.samples):
            length = int(rng.integers(1, MAX_WORD_LENGTH + 1))
            word = [int(rng.integers(2, self.n + 1))] \
                + [int(k) for k in rng.integers(1, self.n + 1, length - 1)]
            radii.append(min(1.0, 2 * periodic_point(self.system, word)))
        return radii

    def required_bound(self, r:float)->float:
        k = math.floor(1 / r)
        if 1 / (k + 1) >= r:
            k += 1
        elif 1 / k < r:
            k -= 1
        base = ((self.n - k) / (self.n + 1)) * (k / (k + 1))
        return max(0.0, base) ** self.h

    def _checks(self, rng:np.random.Generator
            )->Iterator[Tuple[float,float]]:
        for r in self._radii(rng):
            record = density(self.system, self.h, Interval(0.0, r),
                max_depth=self.max_depth, tol=self.measure_tol)
            yield record.density_lower, self.required_bound(r) - self.tol
