"""
This file contains the suite comparing the density of
I_n = [2x_n - 1/n, 1/n], the interval centred at the leftmost point x_n
reaching up to 1/n, against its closed form
(1/2)^h * ((2n^2+2n-1)/(2n^2+n-1))^h.

Author(s): David Marchant
"""
from typing import Iterator, Tuple

import numpy as np

from ..core.base_suite import BaseSuite
from ..core.ifs import IfsSystem, Interval, leftmost_point
from ..core.measure import density
from ..core.vars import CLOSED_FORM_SLACK


def lower_bound_interval(system:IfsSystem)->Interval:
    x = leftmost_point(system)
    return Interval.clipped(2 * x - 1 / system.n, 1 / system.n)

def lower_bound_density(n:int, h:float)->float:
    """Closed form of the density of I_n."""
    return 0.5 ** h * ((2 * n * n + 2 * n - 1) / (2 * n * n + n - 1)) ** h


class LowerBoundIntervalSuite(BaseSuite):
    name = "lower_bound_interval"

    def _checks(self, rng:np.random.Generator
            )->Iterator[Tuple[float,float]]:
        record = density(self.system, self.h,
            lower_bound_interval(self.system), max_depth=self.max_depth,
            tol=self.measure_tol)
        closed = lower_bound_density(self.n, self.h)
        self.details = {
            "closed_form": closed,
            "density_lower": record.density_lower,
            "density_upper": record.density_upper
        }
        yield closed, record.density_lower - CLOSED_FORM_SLACK
        yield record.density_upper + CLOSED_FORM_SLACK, closed
