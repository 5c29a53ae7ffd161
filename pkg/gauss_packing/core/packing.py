"""
This file contains the estimation of d_min, the infimum of the densities of
closed intervals centred at the limit set and contained in [0,1], and hence
of the packing measure P(J_n) = 1/d_min. Upper bounds on d_min come from a
sampled search over centres and radii, certified lower bounds from a
branch-and-bound search run through pybnb.

Every interval centred at J_n that contains no grid point 1/j lies inside a
single branch image, and the inverse branch maps it onto an interval of
equal density, still centred at J_n. Both searches therefore work on the
grid-touching intervals, those with radius at least the distance from their
centre to the nearest grid point.

Author(s): David Marchant
"""
import math
import os
import threading

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pybnb

from .dimension import solve_dimension
from .ifs import IfsSystem, Interval, SystemGeometry, expand_batch, \
    generation_maps, limit_point_in, limit_set_meets, \
    make_gauss_linear_ifs, system_geometry
from .measure import density, density_intervals, measure_interval, \
    round_down, round_up
from .vars import DEFAULT_GENERATION, DEFAULT_RADII, \
    DEFAULT_BUDGET, DEFAULT_GAP, DEFAULT_PRUNE_DEPTH, DEFAULT_MAX_DEPTH, \
    DEFAULT_MEASURE_TOLERANCE, DEFAULT_DIMENSION_TOLERANCE, ENUMERATION_CAP, \
    THREADS_ENV_VAR, DEBUG_INFO, DEBUG_DEBUG, DEBUG_WARNING
from ..functionality.debug import setup_debugging, print_debug, DebugTimer
from ..functionality.validation import check_type, check_real, \
    valid_natural, valid_positive

# Centres closer than this are treated as the same point
CENTER_MERGE_TOLERANCE = 1e-15
# Boxes narrower than these are not split any further
MIN_CENTER_WIDTH = 1e-13
MIN_RADIUS_RATIO = 1 + 1e-10
# Absolute slack subtracted from a certified lower bound
CERTIFIED_SLACK = 1e-12


@dataclass(frozen=True)
class PackingOptions:
    # Word length used for candidate centres and the smallest sampled radius
    generation:int = DEFAULT_GENERATION
    radii:int = DEFAULT_RADII
    max_depth:int = DEFAULT_MAX_DEPTH
    tol:float = DEFAULT_MEASURE_TOLERANCE
    # Whether to run the branch-and-bound lower bound
    certify:bool = False
    budget:int = DEFAULT_BUDGET
    gap:float = DEFAULT_GAP
    prune_depth:int = DEFAULT_PRUNE_DEPTH
    dimension_tolerance:float = DEFAULT_DIMENSION_TOLERANCE

    def __post_init__(self)->None:
        valid_natural(self.generation, hint="PackingOptions.generation")
        valid_positive(self.radii, integer=True, hint="PackingOptions.radii")
        if self.radii < 2:
            raise ValueError("PackingOptions.radii must be at least 2.")
        valid_positive(self.max_depth, integer=True,
            hint="PackingOptions.max_depth")
        valid_positive(self.tol, hint="PackingOptions.tol")
        check_type(self.certify, bool, hint="PackingOptions.certify")
        valid_positive(self.budget, integer=True,
            hint="PackingOptions.budget")
        valid_positive(self.gap, hint="PackingOptions.gap")
        valid_natural(self.prune_depth, hint="PackingOptions.prune_depth")
        valid_positive(self.dimension_tolerance,
            hint="PackingOptions.dimension_tolerance")


@dataclass(frozen=True)
class CertifiedBound:
    # Certified lower bound on d_min
    value:float
    # Set if the search stopped before proving its gap
    partial:bool
    nodes:int
    termination:str


@dataclass(frozen=True)
class PackingEstimate:
    n:int
    h:float
    dmin_upper:float
    dmin_lower:float
    packing_lower:float
    packing_upper:float
    # The sampled minimiser
    witness:Interval
    witness_center:float
    witness_radius:float
    witness_density_lower:float
    certified:bool = False
    partial:bool = False

    def __post_init__(self)->None:
        if not self.dmin_lower <= self.dmin_upper:
            raise ValueError(f"d_min enclosure [{self.dmin_lower}, "
                f"{self.dmin_upper}] is empty.")
        if not self.packing_lower <= self.packing_upper:
            raise ValueError(f"Packing measure enclosure "
                f"[{self.packing_lower}, {self.packing_upper}] is empty.")

    def as_dict(self)->Dict[str,Any]:
        return {
            "n": self.n,
            "h": self.h,
            "dmin_upper": self.dmin_upper,
            "dmin_lower": self.dmin_lower,
            "packing_lower": self.packing_lower,
            "packing_upper": self.packing_upper,
            "witness_center": self.witness_center,
            "witness_radius": self.witness_radius
        }


def _packing_bounds(dmin_lower:float, dmin_upper:float
        )->Tuple[float,float]:
    packing_lower = round_down(1 / dmin_upper) if dmin_upper > 0 \
        else math.inf
    packing_upper = round_up(1 / dmin_lower) if dmin_lower > 0 \
        else math.inf
    return packing_lower, packing_upper

def candidate_centers(system:IfsSystem, generation:int,
        cap:int=ENUMERATION_CAP)->List[float]:
    """Points of the limit set given by words of length up to generation:
    the fixed point of every word map, and the images of both hull
    endpoints. Sorted, with near-equal points merged."""
    check_type(system, IfsSystem, hint="candidate_centers.system")
    valid_natural(generation, hint="candidate_centers.generation")
    geo = system_geometry(system)
    total = sum(system.n ** l for l in range(generation + 1))
    if total > cap:
        raise RuntimeError(f"Candidate centres of S_{system.n} up to "
            f"generation {generation} need {total} words, above the cap of "
            f"{cap}.")

    points = []
    for l in range(generation + 1):
        scales, shifts, _ = generation_maps(system, l, cap=cap)
        points.append(scales * geo.hull_low + shifts)
        points.append(scales * geo.hull_high + shifts)
        if l > 0:
            points.append(shifts / (1 - scales))
    centers = np.unique(np.concatenate(points))
    keep = np.ones(len(centers), dtype=bool)
    keep[1:] = np.diff(centers) > CENTER_MERGE_TOLERANCE
    return [float(c) for c in centers[keep]]

def _candidate_radii(geo:SystemGeometry, centers:np.ndarray, r_min:float,
        radii_per_center:int)->Tuple[np.ndarray,np.ndarray]:
    """Geometric radii between r_min and the largest radius keeping the
    interval in [0,1], together with every radius reaching a grid point."""
    r_max = np.minimum(centers, 1 - centers)
    r_low = np.minimum(r_min, r_max)
    count = radii_per_center
    t = np.linspace(0.0, 1.0, count)
    geometric = r_low[:, None] * (r_max / r_low)[:, None] ** t[None, :]
    geometric[:, -1] = r_max

    touching = np.abs(centers[:, None] - np.array(geo.boundaries)[None, :])
    usable = (touching >= r_low[:, None]) & (touching <= r_max[:, None]) \
        & (touching > 0)

    c_geo = np.repeat(centers, count)
    c_touch = np.broadcast_to(centers[:, None], touching.shape)[usable]
    all_centers = np.concatenate((c_geo, c_touch))
    all_radii = np.concatenate((geometric.ravel(), touching[usable]))
    return all_centers, all_radii

def dmin_sampled(system:IfsSystem, h:float,
        generation:int=DEFAULT_GENERATION,
        radii_per_center:int=DEFAULT_RADII, max_depth:int=DEFAULT_MAX_DEPTH,
        tol:float=DEFAULT_MEASURE_TOLERANCE, print:Any=None, logging:int=0
        )->PackingEstimate:
    """Sampled upper bound on d_min. Intervals [c-r, c+r] are formed for
    every candidate centre c and every sampled radius r, folded onto the
    grid, and evaluated in batches. The interval with the least upper
    density is the witness, ties going to the smaller centre and then the
    smaller radius. The lower bound on d_min is left at 0."""
    check_type(system, IfsSystem, hint="dmin_sampled.system")
    check_real(h, hint="dmin_sampled.h")
    valid_natural(generation, hint="dmin_sampled.generation")
    valid_positive(radii_per_center, integer=True,
        hint="dmin_sampled.radii_per_center")
    if radii_per_center < 2:
        raise ValueError("dmin_sampled needs at least 2 radii per centre.")
    print_target, debug_level = setup_debugging(print, logging)

    geo = system_geometry(system)
    centers = np.array(candidate_centers(system, generation))
    r_min = 0.5 * float(np.min(system.contraction_ratios)) ** generation
    c_all, r_all = _candidate_radii(geo, centers, r_min, radii_per_center)
    lefts = np.clip(c_all - r_all, 0.0, 1.0)
    rights = np.clip(c_all + r_all, 0.0, 1.0)
    print_debug(print_target, debug_level, f"S_{system.n}: sampling "
        f"{len(c_all)} intervals over {len(centers)} centres", DEBUG_DEBUG)

    with DebugTimer(print_target, debug_level,
            f"S_{system.n} sampled density scan", DEBUG_DEBUG):
        folded_lefts, folded_rights, _ = expand_batch(system, lefts, rights)
        lower, upper = density_intervals(system, h, folded_lefts,
            folded_rights, max_depth=max_depth, tol=tol)

    best = np.lexsort((r_all, c_all, upper))[0]
    dmin_upper = float(upper[best])
    packing_lower, packing_upper = _packing_bounds(0.0, dmin_upper)
    center, radius = float(c_all[best]), float(r_all[best])
    return PackingEstimate(
        n=system.n,
        h=h,
        dmin_upper=dmin_upper,
        dmin_lower=0.0,
        packing_lower=packing_lower,
        packing_upper=packing_upper,
        witness=Interval.centered(center, radius),
        witness_center=center,
        witness_radius=radius,
        witness_density_lower=float(lower[best])
    )


class DensityInfimumProblem(pybnb.Problem):
    """Minimises the density of [c-r, c+r] over boxes of centres c and
    radii r. The state of a node is the box (c0, c1, r0, r1). Only centres
    in the limit set and grid-touching radii are feasible."""
    def __init__(self, system:IfsSystem, h:float,
            max_depth:int=DEFAULT_MAX_DEPTH,
            tol:float=DEFAULT_MEASURE_TOLERANCE,
            prune_depth:int=DEFAULT_PRUNE_DEPTH)->None:
        self.system = system
        self.h = h
        self.max_depth = max_depth
        self.tol = tol
        self.prune_depth = prune_depth
        self.geo = system_geometry(system)
        r_cut = float(np.min(system.contraction_ratios)) ** 2
        self._box = (self.geo.hull_low, self.geo.hull_high,
            min(r_cut, self._radius_floor()), 0.5)
        self._last_bound:Optional[float] = None
        # Least bound over boxes too small to split
        self.terminal_bound = math.inf

    def _radius_floor(self)->float:
        """Distance from the limit set to the nearest image boundary, a
        lower bound on every grid-touching radius."""
        gaps = [low - image_low for low, image_low
            in zip(self.geo.hull_lows, self.geo.image_lows)]
        gaps += [image_high - high for high, image_high
            in zip(self.geo.hull_highs, self.geo.image_highs)]
        positive = [g for g in gaps if g > 0]
        return min(positive) if len(positive) == len(gaps) else math.inf

    def _radius_range(self)->Tuple[float,float]:
        c0, c1, r0, r1 = self._box
        r_low = max(r0, self.geo.grid_distance(c0, c1))
        r_high = min(r1, c1, 1 - c0)
        return r_low, r_high

    def _box_bound(self)->float:
        c0, c1, _, _ = self._box
        r_low, r_high = self._radius_range()
        if r_low > r_high:
            return self.infeasible_objective()
        if not limit_set_meets(self.system, Interval(c0, c1),
                depth=self.prune_depth):
            return self.infeasible_objective()
        # Every interval of the box contains this core
        core_left, core_right = c1 - r_low, c0 + r_low
        if core_left >= core_right:
            return 0.0
        bound = measure_interval(self.system, self.h,
            Interval.clipped(core_left, core_right),
            max_depth=self.max_depth, tol=self.tol)
        return round_down(bound.lower
            / round_up(round_up(2 * r_high) ** self.h))

    def sense(self):
        return pybnb.minimize

    def objective(self):
        c0, c1, r0, r1 = self._box
        x = limit_point_in(self.system, Interval(c0, c1),
            depth=self.prune_depth)
        if x is None:
            return self.infeasible_objective()
        r = max(r0, self.geo.grid_distance(x, x))
        if r <= 0 or r > min(r1, x, 1 - x):
            return self.infeasible_objective()
        return density(self.system, self.h, Interval.centered(x, r),
            max_depth=self.max_depth, tol=self.tol).density_upper

    def bound(self):
        self._last_bound = self._box_bound()
        return self._last_bound

    def save_state(self, node):
        node.state = self._box

    def load_state(self, node):
        self._box = tuple(node.state)
        self._last_bound = None

    def branch(self):
        c0, c1, r0, r1 = self._box
        r_low, r_high = self._radius_range()
        if r_low > r_high:
            return
        if c1 - c0 < MIN_CENTER_WIDTH and r_high / r_low < MIN_RADIUS_RATIO:
            if self._last_bound is None:
                self._last_bound = self._box_bound()
            self.terminal_bound = min(self.terminal_bound, self._last_bound)
            return
        if c1 - c0 >= r_high - r_low:
            mid = 0.5 * (c0 + c1)
            halves = [(c0, mid, r0, r1), (mid, c1, r0, r1)]
        else:
            mid = math.sqrt(r_low * r_high)
            halves = [(c0, c1, r_low, mid), (c0, c1, mid, r_high)]
        for box in halves:
            child = pybnb.Node()
            child.state = box
            yield child


def dmin_lower_bound(system:IfsSystem, h:float, budget:int=DEFAULT_BUDGET,
        gap:float=DEFAULT_GAP, max_depth:int=DEFAULT_MAX_DEPTH,
        tol:float=DEFAULT_MEASURE_TOLERANCE,
        prune_depth:int=DEFAULT_PRUNE_DEPTH, print:Any=None, logging:int=0
        )->CertifiedBound:
    """Certified lower bound on d_min from a branch-and-bound search with at
    most budget nodes. If the search stops on its node limit the least
    bound of the open boxes is returned, flagged as partial."""
    check_type(system, IfsSystem, hint="dmin_lower_bound.system")
    check_real(h, hint="dmin_lower_bound.h")
    valid_positive(budget, integer=True, hint="dmin_lower_bound.budget")
    valid_positive(gap, hint="dmin_lower_bound.gap")
    print_target, debug_level = setup_debugging(print, logging)

    problem = DensityInfimumProblem(system, h, max_depth=max_depth, tol=tol,
        prune_depth=prune_depth)
    solver = pybnb.Solver(comm=None)
    with DebugTimer(print_target, debug_level,
            f"S_{system.n} branch-and-bound", DEBUG_DEBUG):
        results = solver.solve(problem, absolute_gap=gap, relative_gap=None,
            node_limit=budget, log=None)

    termination = getattr(results.termination_condition, "value",
        str(results.termination_condition))
    # Nodes pruned against the incumbent are only known to exceed it
    # less the gap
    bound = min(results.bound, results.objective - gap,
        problem.terminal_bound)
    if not math.isfinite(bound):
        bound = 0.0
    value = max(0.0, round_down(bound - CERTIFIED_SLACK))
    partial = termination not in ("optimality", "queue_empty")
    if partial:
        print_debug(print_target, debug_level, f"S_{system.n} lower bound "
            f"is partial after {results.nodes} nodes ({termination})",
            DEBUG_WARNING)
    return CertifiedBound(value=value, partial=partial, nodes=results.nodes,
        termination=termination)

def packing_estimate(n:int, opts:Optional[PackingOptions]=None,
        print:Any=None, logging:int=0)->PackingEstimate:
    """Estimate of d_min and P(J_n) for S_n. The sampled search provides
    the upper bound on d_min, and the certified lower bound is added when
    opts.certify is set."""
    check_type(n, int, hint="packing_estimate.n")
    if n < 2:
        raise ValueError(f"Packing estimates need n >= 2, got {n}.")
    if opts is None:
        opts = PackingOptions()
    check_type(opts, PackingOptions, hint="packing_estimate.opts")
    print_target, debug_level = setup_debugging(print, logging)

    system = make_gauss_linear_ifs(n)
    h = solve_dimension(system, tolerance=opts.dimension_tolerance).h
    estimate = dmin_sampled(system, h, generation=opts.generation,
        radii_per_center=opts.radii, max_depth=opts.max_depth, tol=opts.tol,
        print=print_target, logging=debug_level)
    if not opts.certify:
        return estimate

    certified = dmin_lower_bound(system, h, budget=opts.budget, gap=opts.gap,
        max_depth=opts.max_depth, tol=opts.tol, prune_depth=opts.prune_depth,
        print=print_target, logging=debug_level)
    dmin_lower = min(certified.value, estimate.witness_density_lower)
    packing_lower, packing_upper = _packing_bounds(dmin_lower,
        estimate.dmin_upper)
    return PackingEstimate(
        n=n,
        h=h,
        dmin_upper=estimate.dmin_upper,
        dmin_lower=dmin_lower,
        packing_lower=packing_lower,
        packing_upper=packing_upper,
        witness=estimate.witness,
        witness_center=estimate.witness_center,
        witness_radius=estimate.witness_radius,
        witness_density_lower=estimate.witness_density_lower,
        certified=True,
        partial=certified.partial
    )

def default_workers()->int:
    """Number of sweep workers, taken from the environment if set."""
    value = os.environ.get(THREADS_ENV_VAR, "")
    if not value:
        return 1
    try:
        workers = int(value)
    except ValueError:
        raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got "
            f"'{value}'.")
    valid_positive(workers, integer=True, hint=THREADS_ENV_VAR)
    return workers

def sweep(n_min:int, n_max:int, opts:Optional[PackingOptions]=None,
        print:Any=None, logging:int=0, workers:Optional[int]=None
        )->List[PackingEstimate]:
    """Packing estimates for every n in n_min..n_max, ordered by n whatever
    order the workers finish in."""
    check_type(n_min, int, hint="sweep.n_min")
    check_type(n_max, int, hint="sweep.n_max")
    if not 2 <= n_min <= n_max:
        raise ValueError(f"Sweep needs 2 <= n_min <= n_max, got n_min="
            f"{n_min}, n_max={n_max}.")
    if opts is None:
        opts = PackingOptions()
    if workers is None:
        workers = default_workers()
    valid_positive(workers, integer=True, hint="sweep.workers")
    print_target, debug_level = setup_debugging(print, logging)

    pending = list(range(n_min, n_max + 1))
    results:Dict[int,PackingEstimate] = {}
    errors:List[Exception] = []
    lock = threading.Lock()

    def work()->None:
        while True:
            lock.acquire()
            try:
                if not pending or errors:
                    return
                n = pending.pop(0)
            finally:
                lock.release()
            try:
                estimate = packing_estimate(n, opts, print=print_target,
                    logging=debug_level)
            except Exception as ex:
                lock.acquire()
                errors.append(ex)
                lock.release()
                return
            lock.acquire()
            results[n] = estimate
            done = len(results)
            lock.release()
            print_debug(print_target, debug_level, f"Sweep finished n={n} "
                f"({done}/{n_max - n_min + 1}), packing_lower="
                f"{estimate.packing_lower}", DEBUG_INFO)

    threads = [threading.Thread(target=work, args=[])
        for _ in range(min(workers, len(pending)))]
    for thread in threads:
        thread.daemon = True
        thread.start()
    for thread in threads:
        thread.join()

    if errors:
        raise errors[0]
    return [results[n] for n in range(n_min, n_max + 1)]
