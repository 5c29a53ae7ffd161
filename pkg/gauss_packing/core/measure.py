"""
This file contains the evaluators for the conformal measure m_n of closed
intervals, returned as certified [lower, upper] enclosures, and the interval
densities d_n(J) = m_n(J)/|J|^h built on them.

Two evaluators are provided. measure_interval decomposes one interval
recursively over the cylinders of the system. measure_intervals evaluates
many intervals at once through the distribution function F(x) = m_n([0,x]),
descending into the branch hull containing each endpoint.

Author(s): David Marchant
"""
import math

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from .dimension import check_dimension, moran_residual
from .ifs import IfsSystem, Interval, SystemGeometry, system_geometry
from .vars import DEFAULT_MAX_DEPTH, DEFAULT_MEASURE_TOLERANCE, BATCH_SIZE
from ..functionality.validation import check_type, check_real, \
    valid_natural, valid_positive

UNIT_ROUNDOFF = 2.0 ** -52


def round_down(x:float, steps:int=1)->float:
    for _ in range(steps):
        x = math.nextafter(x, -math.inf)
    return x

def round_up(x:float, steps:int=1)->float:
    for _ in range(steps):
        x = math.nextafter(x, math.inf)
    return x


@dataclass(frozen=True)
class MeasureBound:
    lower:float
    upper:float
    # Deepest cylinder generation examined
    depth_used:int
    # Mass of the cylinders left unresolved, at least upper - lower
    unresolved_mass:float

    def __post_init__(self)->None:
        check_real(self.lower, hint="MeasureBound.lower")
        check_real(self.upper, hint="MeasureBound.upper")
        valid_natural(self.depth_used, hint="MeasureBound.depth_used")
        check_real(self.unresolved_mass, hint="MeasureBound.unresolved_mass")
        if not 0 <= self.lower <= self.upper <= 1:
            raise ValueError(f"Measure enclosure [{self.lower}, "
                f"{self.upper}] is not within [0,1].")
        if self.upper - self.lower > self.unresolved_mass:
            raise ValueError(f"Measure enclosure [{self.lower}, "
                f"{self.upper}] is wider than its unresolved mass "
                f"{self.unresolved_mass}.")

    @property
    def width(self)->float:
        return self.upper - self.lower

    def contains(self, value:float)->bool:
        return self.lower <= value <= self.upper


@dataclass(frozen=True)
class DensityRecord:
    interval:Interval
    h:float
    measure:MeasureBound
    density_lower:float
    density_upper:float

    def __post_init__(self)->None:
        if not self.density_lower <= self.density_upper:
            raise ValueError(f"Density enclosure [{self.density_lower}, "
                f"{self.density_upper}] is empty.")

    def contains(self, value:float)->bool:
        return self.density_lower <= value <= self.density_upper


class WeightTables:
    """Branch weights |slope_k|^h and their prefix sums, in the position
    order of SystemGeometry."""
    def __init__(self, system:IfsSystem, h:float)->None:
        check_dimension(system, h)
        geo = system_geometry(system)
        self.residual = abs(moran_residual(system, h))
        self.weights = [float(system.contraction_ratios[i]) ** h
            for i in geo.order]
        self.prefix = [0.0]
        for i in range(len(self.weights)):
            self.prefix.append(math.fsum(self.weights[:i + 1]))
        self.np_weights = np.array(self.weights)
        self.np_prefix = np.array(self.prefix)


@lru_cache(maxsize=256)
def weight_tables(system:IfsSystem, h:float)->WeightTables:
    return WeightTables(system, h)

def _check_limits(max_depth:int, tol:float)->None:
    valid_positive(max_depth, integer=True, hint="max_depth")
    valid_positive(tol, hint="tol")


class _Accumulator:
    def __init__(self)->None:
        self.resolved:List[float] = []
        self.unresolved:List[float] = []
        self.depth = 0

def _decompose(geo:SystemGeometry, weights:List[float], a:float, b:float,
        scale:float, level:int, max_depth:int, cutoff:float,
        acc:_Accumulator)->None:
    acc.depth = max(acc.depth, level)
    if b < geo.hull_low or a > geo.hull_high:
        return
    if a <= geo.hull_low and b >= geo.hull_high:
        acc.resolved.append(scale)
        return
    if level >= max_depth or scale <= cutoff:
        acc.unresolved.append(scale)
        return

    first, last = geo.touching(a, b)
    inner_first = bisect_left(geo.hull_lows, a)
    inner_last = bisect_right(geo.hull_highs, b) - 1
    if inner_first <= inner_last:
        acc.resolved.append(
            scale * math.fsum(weights[inner_first:inner_last + 1]))
    for i in range(first, last + 1):
        if inner_first <= i <= inner_last:
            continue
        p, q = geo.pullback(i, a, b)
        _decompose(geo, weights, p, q, scale * weights[i], level + 1,
            max_depth, cutoff, acc)

def measure_interval(system:IfsSystem, h:float, interval:Interval,
        max_depth:int=DEFAULT_MAX_DEPTH, tol:float=DEFAULT_MEASURE_TOLERANCE
        )->MeasureBound:
    """Certified enclosure of m_n(interval). Branch hulls wholly inside the
    interval contribute their weight, partially covered ones are pulled
    back through their branch and decomposed again, until the cylinder mass
    drops below tol/2 or max_depth generations are used. At most two
    cylinders are left partially covered at any generation, so the
    unresolved mass stays below tol unless the depth cap binds."""
    check_type(system, IfsSystem, hint="measure_interval.system")
    check_real(h, hint="measure_interval.h")
    check_type(interval, Interval, hint="measure_interval.interval")
    _check_limits(max_depth, tol)
    tables = weight_tables(system, h)

    if interval.length == 0:
        return MeasureBound(lower=0.0, upper=0.0, depth_used=0,
            unresolved_mass=0.0)

    geo = system_geometry(system)
    acc = _Accumulator()
    _decompose(geo, tables.weights, interval.left, interval.right, 1.0, 1,
        max_depth, 0.5 * tol, acc)

    lower = math.fsum(acc.resolved)
    unresolved = math.fsum(acc.unresolved)
    if acc.resolved == [1.0] and not acc.unresolved:
        return MeasureBound(lower=1.0, upper=1.0, depth_used=acc.depth,
            unresolved_mass=0.0)

    # Each term carries at most depth+2 roundings, plus the Moran residual
    # of h accumulated once per generation
    relative = (acc.depth + 4) * UNIT_ROUNDOFF
    absolute = tables.residual * acc.depth
    upper = min(1.0, round_up((lower + unresolved) * (1 + relative)
        + absolute))
    lower = min(upper, max(0.0, round_down(lower * (1 - relative) - absolute)))
    return MeasureBound(lower=lower, upper=upper, depth_used=acc.depth,
        unresolved_mass=round_up(max(unresolved, upper - lower)))

def density(system:IfsSystem, h:float, interval:Interval,
        max_depth:int=DEFAULT_MAX_DEPTH, tol:float=DEFAULT_MEASURE_TOLERANCE
        )->DensityRecord:
    """Enclosure of d_n(interval) = m_n(interval)/|interval|^h."""
    check_type(interval, Interval, hint="density.interval")
    length = interval.length
    if length <= 0:
        raise ValueError(f"Density of the zero length interval {interval} "
            "is undefined.")
    bound = measure_interval(system, h, interval, max_depth=max_depth,
        tol=tol)
    long_side = round_up(round_up(length) ** h)
    short_side = round_down(round_down(length) ** h)
    density_lower = round_down(bound.lower / long_side)
    if short_side > 0:
        density_upper = round_up(bound.upper / short_side)
    else:
        density_upper = math.inf
    return DensityRecord(interval=interval, h=h, measure=bound,
        density_lower=density_lower, density_upper=density_upper)

def distribution_bounds(system:IfsSystem, h:float, points:np.ndarray,
        max_depth:int=DEFAULT_MAX_DEPTH, tol:float=DEFAULT_MEASURE_TOLERANCE
        )->Tuple[np.ndarray,np.ndarray,int]:
    """Enclosures of F(x) = m_n([0,x]) for an array of points. Inside the
    hull of sorted branch i, F(x) = P_i + w_i * (1 - F(f_i(x))) for an
    orientation-reversing branch and P_i + w_i * F(f_i(x)) otherwise, where
    P_i is the weight of the branches to the left. In a gap F is a plain
    prefix sum. Returns (lower, upper, depth used)."""
    check_type(system, IfsSystem, hint="distribution_bounds.system")
    check_real(h, hint="distribution_bounds.h")
    _check_limits(max_depth, tol)
    tables = weight_tables(system, h)
    geo = system_geometry(system)

    y = np.clip(np.array(points, dtype=float), 0.0, 1.0)
    offset = np.zeros(y.shape)
    coefficient = np.ones(y.shape)
    active = np.ones(y.shape, dtype=bool)
    cutoff = 0.5 * tol
    depth = 0
    for depth in range(1, max_depth + 1):
        idx = np.nonzero(active)[0]
        if len(idx) == 0:
            depth -= 1
            break
        local = y[idx]
        i = np.searchsorted(geo.np_hull_lows, local, side="right") - 1
        safe = np.maximum(i, 0)
        below = local < geo.hull_low
        above = local >= geo.hull_high
        inside = ~below & ~above & (local <= geo.np_hull_highs[safe])

        # Below, above, or in a gap between branch hulls
        settled = ~inside
        value = np.where(below, 0.0,
            np.where(above, 1.0, tables.np_prefix[safe + 1]))
        done = idx[settled]
        offset[done] += coefficient[done] * value[settled]
        coefficient[done] = 0.0
        active[done] = False

        # Descend into the branch hull holding the point
        deeper = idx[inside]
        branch = i[inside]
        weight = tables.np_weights[branch]
        reverses = geo.np_reverses[branch]
        offset[deeper] += coefficient[deeper] * np.where(reverses,
            tables.np_prefix[branch + 1], tables.np_prefix[branch])
        coefficient[deeper] *= np.where(reverses, -weight, weight)
        y[deeper] = np.clip((local[inside] - geo.np_intercepts[branch])
            / geo.np_slopes[branch], 0.0, 1.0)
        active[deeper[np.abs(coefficient[deeper]) <= cutoff]] = False

    lower = offset + np.minimum(coefficient, 0.0)
    upper = offset + np.maximum(coefficient, 0.0)
    return lower, upper, depth

def measure_intervals(system:IfsSystem, h:float, lefts:np.ndarray,
        rights:np.ndarray, max_depth:int=DEFAULT_MAX_DEPTH,
        tol:float=DEFAULT_MEASURE_TOLERANCE)->Tuple[np.ndarray,np.ndarray]:
    """Enclosures of m_n([left, right]) for arrays of endpoints, as
    F(right) - F(left). Endpoints are processed in chunks of BATCH_SIZE."""
    lefts = np.asarray(lefts, dtype=float)
    rights = np.asarray(rights, dtype=float)
    if lefts.shape != rights.shape:
        raise ValueError("Left and right endpoint arrays differ in shape.")
    if np.any(lefts > rights) or np.any(lefts < 0) or np.any(rights > 1):
        raise ValueError("Intervals must satisfy 0 <= left <= right <= 1.")
    tables = weight_tables(system, h)

    lower = np.empty(lefts.shape)
    upper = np.empty(lefts.shape)
    for start in range(0, len(lefts), BATCH_SIZE):
        stop = start + BATCH_SIZE
        count = len(lefts[start:stop])
        points = np.concatenate((lefts[start:stop], rights[start:stop]))
        low, high, depth = distribution_bounds(system, h, points,
            max_depth=max_depth, tol=tol)
        slack = (depth + 4) * UNIT_ROUNDOFF + tables.residual * depth
        lower[start:stop] = np.nextafter(
            low[count:] - high[:count] - slack, -np.inf)
        upper[start:stop] = np.nextafter(
            high[count:] - low[:count] + slack, np.inf)

    degenerate = lefts == rights
    lower = np.clip(lower, 0.0, 1.0)
    upper = np.clip(upper, 0.0, 1.0)
    lower[degenerate] = 0.0
    upper[degenerate] = 0.0
    return lower, upper

def density_intervals(system:IfsSystem, h:float, lefts:np.ndarray,
        rights:np.ndarray, max_depth:int=DEFAULT_MAX_DEPTH,
        tol:float=DEFAULT_MEASURE_TOLERANCE)->Tuple[np.ndarray,np.ndarray]:
    """Density enclosures for arrays of intervals, all of positive length."""
    lefts = np.asarray(lefts, dtype=float)
    rights = np.asarray(rights, dtype=float)
    lengths = rights - lefts
    if np.any(lengths <= 0):
        raise ValueError("Densities require intervals of positive length.")
    lower, upper = measure_intervals(system, h, lefts, rights,
        max_depth=max_depth, tol=tol)
    long_side = np.nextafter(np.nextafter(lengths, np.inf) ** h, np.inf)
    short_side = np.nextafter(np.nextafter(lengths, 0.0) ** h, 0.0)
    with np.errstate(divide="ignore"):
        density_upper = np.nextafter(upper / short_side, np.inf)
    density_lower = np.nextafter(lower / long_side, -np.inf)
    return np.maximum(density_lower, 0.0), density_upper
