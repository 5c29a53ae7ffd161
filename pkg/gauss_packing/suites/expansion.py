"""
This file contains the suite checking that expanding a short interval
centred at the limit set onto the grid keeps its density.

Author(s): David Marchant
"""
import math

from typing import Iterator, Tuple

import numpy as np

from ..core.base_suite import BaseSuite
from ..core.ifs import Interval, expand_to_grid
from ..core.measure import density
from ..core.packing import candidate_centers

RADIUS_DECADES = (-7, -2)
CENTER_GENERATION = 2


class ExpansionSuite(BaseSuite):
    name = "expansion"

    def _checks(self, rng:np.random.Generator
            )->Iterator[Tuple[float,float]]:
        centers = candidate_centers(self.system, CENTER_GENERATION)
        low = 1 / (self.n + 1)
        most_steps = 0
        for _ in range(self.samples):
            c = centers[int(rng.integers(0, len(centers)))]
            r = min(10.0 ** rng.uniform(*RADIUS_DECADES), c - low, 1 - c)
            interval = Interval.centered(c, r)
            expanded, steps = expand_to_grid(self.system, interval)
            most_steps = max(most_steps, steps)
            before = density(self.system, self.h, interval,
                max_depth=self.max_depth, tol=self.measure_tol)
            after = density(self.system, self.h, expanded,
                max_depth=self.max_depth, tol=self.measure_tol)
            slack = self.tol * max(1.0, before.density_upper)
            yield after.density_upper + slack, before.density_lower
            yield before.density_upper + slack, after.density_lower
        self.details = {"most_steps": most_steps}
