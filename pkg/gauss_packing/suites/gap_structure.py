"""
This file contains the suite checking the gaps of J_n next to each grid
point 1/k: (g_k(1/(n+1)), 1/k) below it and (1/k, g_{k-1}(g_1(1/(n+1))))
above it. Each gap must miss the limit set and carry no measure.

Author(s): David Marchant
"""
from typing import Iterator, List, Tuple

import numpy as np

from ..core.base_suite import BaseSuite
from ..core.ifs import Interval, limit_set_meets
from ..core.measure import measure_interval


class GapStructureSuite(BaseSuite):
    name = "gap_structure"

    def gaps(self)->List[Interval]:
        low = 1 / (self.n + 1)
        g = self.system.branch
        gaps = []
        for k in range(1, self.n + 1):
            gaps.append(Interval(g(k)(low), 1 / k))
            if k > 1:
                gaps.append(Interval(1 / k, g(k - 1)(g(1)(low))))
        return gaps

    def _checks(self, rng:np.random.Generator
            )->Iterator[Tuple[float,float]]:
        gaps = self.gaps()
        self.details = {"gaps": len(gaps)}
        for gap in gaps:
            misses = not limit_set_meets(self.system, gap)
            yield (1.0 if misses else -1.0), 0.0
            bound = measure_interval(self.system, self.h, gap,
                max_depth=self.max_depth, tol=self.measure_tol)
            yield self.measure_tol, bound.upper
