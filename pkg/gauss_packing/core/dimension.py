"""
This file contains the solver for the Moran equation, giving the common
Hausdorff and packing dimension h_n of the limit set of an IFS.

Author(s): David Marchant
"""
import math

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .ifs import IfsSystem
from .vars import DEFAULT_DIMENSION_TOLERANCE, DIMENSION_MAX_ITERATIONS, \
    DIMENSION_CONSISTENCY_TOLERANCE
from ..functionality.validation import check_type, check_real, \
    valid_natural, valid_positive


@dataclass(frozen=True)
class DimensionResult:
    # The dimension, in [0,1)
    h:float
    # Moran function evaluated at h
    residual:float
    # Number of bisection or Newton steps taken
    iterations:int
    # Requested bound on |residual|
    tolerance:float

    def __post_init__(self)->None:
        check_real(self.h, hint="DimensionResult.h")
        check_real(self.residual, hint="DimensionResult.residual")
        valid_natural(self.iterations, hint="DimensionResult.iterations")
        valid_positive(self.tolerance, hint="DimensionResult.tolerance")
        if not 0 <= self.h < 1:
            raise ValueError(f"Dimension {self.h} is outside [0,1).")
        if abs(self.residual) > self.tolerance:
            raise ValueError(f"Residual {self.residual} exceeds tolerance "
                f"{self.tolerance}.")


def moran_residual(system:IfsSystem, h:float)->float:
    """Sum of |slope_k|^h over all branches, minus 1."""
    check_type(system, IfsSystem, hint="moran_residual.system")
    check_real(h, hint="moran_residual.h")
    if h < 0:
        raise ValueError(f"Dimension {h} must be non-negative.")
    return math.fsum(np.power(system.contraction_ratios, h)) - 1.0

def _moran_step(ratios:np.ndarray, logs:np.ndarray, h:float
        )->Tuple[float,float]:
    """The Moran residual at h and its derivative in h."""
    terms = np.power(ratios, h)
    return math.fsum(terms.tolist()) - 1.0, float(np.dot(terms, logs))

def solve_dimension(system:IfsSystem,
        tolerance:float=DEFAULT_DIMENSION_TOLERANCE)->DimensionResult:
    """Solves sum |slope_k|^h = 1 for h. Bisection on [0,1] keeps a bracket
    around the root; a Newton step is taken instead of the midpoint whenever
    it stays strictly inside the bracket."""
    check_type(system, IfsSystem, hint="solve_dimension.system")
    valid_positive(tolerance, hint="solve_dimension.tolerance")

    if system.n == 1:
        return DimensionResult(h=0.0, residual=0.0, iterations=0,
            tolerance=tolerance)

    ratios = system.contraction_ratios
    logs = np.log(ratios)
    low, high = 0.0, 1.0
    h = 0.5
    for iteration in range(1, DIMENSION_MAX_ITERATIONS + 1):
        residual, derivative = _moran_step(ratios, logs, h)
        if abs(residual) <= tolerance:
            return DimensionResult(h=h, residual=residual,
                iterations=iteration, tolerance=tolerance)
        # The Moran function is strictly decreasing in h
        if residual > 0:
            low = h
        else:
            high = h
        if not low < high:
            break
        step = h - residual / derivative
        if low < step < high:
            h = step
        else:
            h = 0.5 * (low + high)
    raise RuntimeError(f"Dimension of S_{system.n} did not reach residual "
        f"tolerance {tolerance}.")

def check_dimension(system:IfsSystem, h:float,
        tolerance:float=DIMENSION_CONSISTENCY_TOLERANCE)->None:
    """Raises a ValueError if h is not the dimension of the system, judged on
    the Moran residual."""
    residual = moran_residual(system, h)
    if abs(residual) > tolerance:
        raise ValueError(f"Dimension {h} is inconsistent with S_{system.n}: "
            f"Moran residual {residual} exceeds {tolerance}.")
