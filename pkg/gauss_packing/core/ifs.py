"""
This file contains the definitions of the linear-Gauss iterated function
systems S_n. These are the affine branches g_k, words over the branch
alphabet, cylinders, the distinguished points of the limit set J_n, and the
density-preserving expansion of short intervals onto the grid {1/j}.

Author(s): David Marchant
"""
import itertools
import math

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .vars import ENUMERATION_CAP, EXPANSION_STEP_CAP, DEFAULT_PRUNE_DEPTH
from ..functionality.validation import check_type, check_real, \
    valid_list, valid_natural, valid_positive

# Local coordinate slack when deciding an interval misses the limit set
DISJOINT_SLACK = 1e-12
# Absolute slack allowed where two branch images meet
IMAGE_OVERLAP_SLACK = 1e-15
# Relative gap below which adjacent branch images are taken to share an end
SEAM_SLACK = 1e-14


@dataclass(frozen=True)
class Interval:
    # Left endpoint, at least 0
    left:float
    # Right endpoint, at least left and at most 1
    right:float

    def __post_init__(self)->None:
        check_real(self.left, hint="Interval.left")
        check_real(self.right, hint="Interval.right")
        object.__setattr__(self, "left", float(self.left))
        object.__setattr__(self, "right", float(self.right))
        if not 0 <= self.left <= self.right <= 1:
            raise ValueError(f"Interval [{self.left}, {self.right}] must "
                "satisfy 0 <= left <= right <= 1.")

    @classmethod
    def clipped(cls, left:float, right:float)->"Interval":
        """Build an interval after clamping both endpoints to [0,1]."""
        return cls(min(max(left, 0.0), 1.0), min(max(right, 0.0), 1.0))

    @classmethod
    def centered(cls, center:float, radius:float)->"Interval":
        """The closed interval [center-radius, center+radius] in [0,1]."""
        return cls.clipped(center - radius, center + radius)

    @property
    def length(self)->float:
        return self.right - self.left

    @property
    def center(self)->float:
        return 0.5 * (self.left + self.right)

    def contains(self, x:float)->bool:
        return self.left <= x <= self.right


@dataclass(frozen=True)
class LinearMap:
    # Signed slope, 0 < |slope| < 1
    slope:float
    # Image of 0
    intercept:float
    # The branch label k
    index:int

    def __post_init__(self)->None:
        check_real(self.slope, hint="LinearMap.slope")
        check_real(self.intercept, hint="LinearMap.intercept")
        valid_positive(self.index, integer=True, hint="LinearMap.index")
        if not 0 < abs(self.slope) < 1:
            raise ValueError(f"LinearMap slope {self.slope} is not a "
                "contraction.")
        ends = (self.intercept, self.slope + self.intercept)
        if min(ends) < 0 or max(ends) > 1:
            raise ValueError(f"LinearMap {self.index} does not map [0,1] "
                "into itself.")

    def __call__(self, x:float)->float:
        return self.slope * x + self.intercept

    @property
    def contraction(self)->float:
        return abs(self.slope)

    @property
    def reverses(self)->bool:
        return self.slope < 0

    def image(self, interval:Optional[Interval]=None)->Interval:
        """The image of the interval under this map, of [0,1] if none is
        given."""
        if interval is None:
            interval = Interval(0.0, 1.0)
        ends = (self(interval.left), self(interval.right))
        return Interval.clipped(min(ends), max(ends))


@dataclass(frozen=True)
class IfsSystem:
    # Number of branches
    n:int
    # Slopes and intercepts of the branches g_1..g_n, in label order
    slopes:Tuple[float,...]
    intercepts:Tuple[float,...]

    def __post_init__(self)->None:
        valid_positive(self.n, integer=True, hint="IfsSystem.n")
        for name in ["slopes", "intercepts"]:
            values = getattr(self, name)
            check_type(values, tuple, alt_types=[list, np.ndarray],
                hint=f"IfsSystem.{name}")
            object.__setattr__(self, name,
                tuple(np.asarray(values, dtype=float).tolist()))
        self._is_valid_branches(np.array(self.slopes),
            np.array(self.intercepts))

    def _is_valid_branches(self, slopes:np.ndarray, intercepts:np.ndarray
            )->None:
        """Checks every branch is a contraction of [0,1] into itself, that
        branch images only meet at their boundaries, and that the total
        contraction is below 1."""
        if len(slopes) != self.n or len(intercepts) != self.n:
            raise ValueError(f"IfsSystem expects {self.n} branches, got "
                f"{len(slopes)} slopes and {len(intercepts)} intercepts.")
        if not (np.all(np.isfinite(slopes))
                and np.all(np.isfinite(intercepts))):
            raise ValueError("Branch slopes and intercepts must be finite.")
        bad = np.nonzero((slopes == 0) | (np.abs(slopes) >= 1))[0]
        if len(bad):
            raise ValueError(f"Branch {bad[0] + 1} with slope "
                f"{slopes[bad[0]]} is not a contraction.")
        lows = np.minimum(intercepts, slopes + intercepts)
        highs = np.maximum(intercepts, slopes + intercepts)
        bad = np.nonzero((lows < 0) | (highs > 1))[0]
        if len(bad):
            raise ValueError(f"Branch {bad[0] + 1} does not map [0,1] into "
                "itself.")
        order = np.argsort(lows, kind="stable")
        overlaps = np.nonzero(
            highs[order][:-1] > lows[order][1:] + IMAGE_OVERLAP_SLACK)[0]
        if len(overlaps):
            first, second = order[overlaps[0]], order[overlaps[0] + 1]
            raise ValueError(f"Images of branches {first + 1} and "
                f"{second + 1} overlap.")
        if self.contraction_sum >= 1:
            raise ValueError("Sum of branch contractions must be below 1.")

    @classmethod
    def from_branches(cls, branches:Sequence[LinearMap],
            n:Optional[int]=None)->"IfsSystem":
        """Builds a system from LinearMaps labelled 1..n in order."""
        valid_list(list(branches), LinearMap, hint="IfsSystem.branches")
        for k, branch in enumerate(branches, start=1):
            if branch.index != k:
                raise ValueError(f"Branch in position {k} is labelled "
                    f"{branch.index}.")
        return cls(n=len(branches) if n is None else n,
            slopes=tuple(b.slope for b in branches),
            intercepts=tuple(b.intercept for b in branches))

    @cached_property
    def branches(self)->Tuple[LinearMap,...]:
        return tuple(LinearMap(slope=s, intercept=c, index=k) for k, (s, c)
            in enumerate(zip(self.slopes, self.intercepts), start=1))

    def branch(self, k:int)->LinearMap:
        """Branch g_k, using the 1-based labels of the system."""
        check_type(k, int, hint="IfsSystem.branch.k")
        if not 1 <= k <= self.n:
            raise ValueError(f"Branch {k} is not in 1..{self.n}.")
        return LinearMap(slope=self.slopes[k - 1],
            intercept=self.intercepts[k - 1], index=k)

    @cached_property
    def contraction_ratios(self)->np.ndarray:
        ratios = np.abs(np.array(self.slopes))
        ratios.setflags(write=False)
        return ratios

    @property
    def contraction_sum(self)->float:
        return math.fsum(abs(s) for s in self.slopes)


@dataclass(frozen=True)
class Word:
    # Branch labels q_1..q_l, applied as g_{q_1} o ... o g_{q_l}
    letters:Tuple[int,...]

    def __post_init__(self)->None:
        letters = tuple(self.letters)
        valid_list(list(letters), int, min_length=0, hint="Word.letters")
        for letter in letters:
            valid_positive(letter, integer=True, hint="Word.letters")
        object.__setattr__(self, "letters", letters)

    def __len__(self)->int:
        return len(self.letters)

    def __iter__(self)->Iterator[int]:
        return iter(self.letters)


@dataclass(frozen=True)
class Cylinder:
    word:Word
    interval:Interval
    # Measure of the cylinder, the product of |slope|^h over its letters
    weight:float


WordLike = Union[Word, Sequence[int]]


def as_word(word:WordLike, system:IfsSystem, allow_empty:bool=False)->Word:
    """Normalise a word and check its letters are branches of the system."""
    if not isinstance(word, Word):
        check_type(word, list, alt_types=[tuple], hint="word")
        word = Word(tuple(word))
    if not allow_empty and len(word) == 0:
        raise ValueError("Word must be nonempty.")
    for letter in word:
        if letter > system.n:
            raise ValueError(f"Letter {letter} is out of range for a system "
                f"with {system.n} branches.")
    return word

def gauss_branch(k:int)->LinearMap:
    """The branch g_k(x) = 1/k - x/(k(k+1)), the inverse of the Gauss map on
    [1/(k+1), 1/k]."""
    valid_positive(k, integer=True, hint="gauss_branch.k")
    return LinearMap(slope=-1.0 / (k * (k + 1)), intercept=1.0 / k, index=k)

def make_gauss_linear_ifs(n:int)->IfsSystem:
    """The linear-Gauss system S_n with branches g_1..g_n. Systems are
    immutable, so one instance is shared per n."""
    valid_positive(n, integer=True, hint="make_gauss_linear_ifs.n")
    return _gauss_linear_ifs(n)

@lru_cache(maxsize=2048)
def _gauss_linear_ifs(n:int)->IfsSystem:
    return IfsSystem(n=n,
        slopes=tuple(-1.0 / (k * (k + 1)) for k in range(1, n + 1)),
        intercepts=tuple(1.0 / k for k in range(1, n + 1)))

def compose_word(system:IfsSystem, word:WordLike)->Tuple[float,float]:
    """Returns (scale, shift) such that g_{q_1} o ... o g_{q_l}(x) equals
    scale*x + shift. Composition runs left to right so each letter refines
    the current map."""
    word = as_word(word, system, allow_empty=True)
    scale, shift = 1.0, 0.0
    for letter in word:
        scale, shift = scale * system.slopes[letter - 1], \
            scale * system.intercepts[letter - 1] + shift
    return scale, shift

def cylinder_interval(system:IfsSystem, word:WordLike)->Interval:
    """The image of [0,1] under the composed word map, endpoints ordered."""
    scale, shift = compose_word(system, as_word(word, system))
    ends = (shift, scale + shift)
    return Interval.clipped(min(ends), max(ends))

def generation_maps(system:IfsSystem, l:int, h:Optional[float]=None,
        cap:int=ENUMERATION_CAP)->Tuple[np.ndarray,np.ndarray,np.ndarray]:
    """Arrays (scales, shifts, weights) of all n^l word maps of generation l,
    in lexicographic word order. Weights are only computed when h is given,
    otherwise an empty array is returned in their place."""
    valid_natural(l, hint="generation_maps.l")
    if system.n ** l > cap:
        raise RuntimeError(f"Generation {l} of S_{system.n} has "
            f"{system.n ** l} cylinders, above the cap of {cap}.")
    slopes = np.array(system.slopes)
    intercepts = np.array(system.intercepts)
    scales = np.ones(1)
    shifts = np.zeros(1)
    weights = np.ones(1)
    letter_weights = None
    if h is not None:
        letter_weights = np.power(np.abs(slopes), h)
    for _ in range(l):
        shifts = (np.outer(scales, intercepts) + shifts[:, None]).ravel()
        scales = np.outer(scales, slopes).ravel()
        if letter_weights is not None:
            weights = np.outer(weights, letter_weights).ravel()
    if letter_weights is None:
        weights = np.empty(0)
    return scales, shifts, weights

def enumerate_generation(system:IfsSystem, l:int, h:Optional[float]=None,
        cap:int=ENUMERATION_CAP)->List[Cylinder]:
    """All n^l cylinders of generation l with their measure weights. If no
    dimension is given then the solved dimension of the system is used."""
    valid_positive(l, integer=True, hint="enumerate_generation.l")
    if h is None:
        from .dimension import solve_dimension
        h = solve_dimension(system).h
    check_real(h, hint="enumerate_generation.h")
    scales, shifts, weights = generation_maps(system, l, h=h, cap=cap)
    lefts = np.minimum(shifts, scales + shifts)
    rights = np.maximum(shifts, scales + shifts)

    cylinders = []
    words = itertools.product(range(1, system.n + 1), repeat=l)
    for i, letters in enumerate(words):
        cylinders.append(Cylinder(
            word=Word(letters),
            interval=Interval.clipped(lefts[i], rights[i]),
            weight=float(weights[i])
        ))
    return cylinders

def _image_ends(system:IfsSystem)->Tuple[np.ndarray,np.ndarray]:
    """Left and right ends of every branch image, in label order."""
    slopes, intercepts = np.array(system.slopes), np.array(system.intercepts)
    ends = slopes + intercepts
    return np.minimum(intercepts, ends), np.maximum(intercepts, ends)

def limit_set_hull(system:IfsSystem)->Interval:
    """The smallest interval containing the limit set. Its endpoints are
    fixed by the branches with the lowest and highest images: an
    orientation-reversing branch sends the opposite end of the hull onto
    the end it produces."""
    lows, _ = _image_ends(system)
    low_branch = system.branch(int(np.argmin(lows)) + 1)
    high_branch = system.branch(int(np.argmax(lows)) + 1)

    def fixed(g:LinearMap)->float:
        return g.intercept / (1 - g.slope)

    if low_branch.reverses and high_branch.reverses:
        scale = low_branch.slope * high_branch.slope
        shift = low_branch.slope * high_branch.intercept \
            + low_branch.intercept
        low = shift / (1 - scale)
        high = high_branch(low)
    elif low_branch.reverses:
        high = fixed(high_branch)
        low = low_branch(high)
    elif high_branch.reverses:
        low = fixed(low_branch)
        high = high_branch(low)
    else:
        low = fixed(low_branch)
        high = fixed(high_branch)
    return Interval.clipped(min(low, high), max(low, high))

def leftmost_point(system:IfsSystem)->float:
    """The minimum of the limit set. For S_n this is the fixed point of
    g_n o g_1, equal to 2n/(2n^2+2n-1)."""
    return limit_set_hull(system).left

def rightmost_point(system:IfsSystem)->float:
    """The maximum of the limit set. For S_n this is g_1 applied to the
    leftmost point, 1 - x_n/2."""
    return limit_set_hull(system).right

def periodic_point(system:IfsSystem, word:WordLike)->float:
    """The fixed point of the composed word map. It lies in the cylinder of
    the word and in the limit set."""
    scale, shift = compose_word(system, as_word(word, system))
    return shift / (1 - scale)


class SystemGeometry:
    """Position-sorted tables describing where each branch sends [0,1] and
    the hull of the limit set. Shared by the limit set searches, the
    expansion onto the grid and the measure evaluators."""
    def __init__(self, system:IfsSystem)->None:
        hull = limit_set_hull(system)
        self.hull_low = hull.left
        self.hull_high = hull.right
        lows, highs = _image_ends(system)
        order = np.argsort(lows, kind="stable").tolist()
        self.order = order
        self.slopes = [system.slopes[i] for i in order]
        self.intercepts = [system.intercepts[i] for i in order]
        self.reverses = [s < 0 for s in self.slopes]
        self.image_lows = [float(lows[i]) for i in order]
        self.image_highs = [float(highs[i]) for i in order]
        # Neighbouring images computed through different branches can be a
        # few ulps apart at their common end, where the upper image takes the
        # end of the lower one
        for i in range(len(order) - 1):
            high, low = self.image_highs[i], self.image_lows[i + 1]
            if abs(low - high) <= SEAM_SLACK * max(low, high):
                self.image_lows[i + 1] = high
        self.hull_lows = [min(s * hull.left + c, s * hull.right + c)
            for s, c in zip(self.slopes, self.intercepts)]
        self.hull_highs = [max(s * hull.left + c, s * hull.right + c)
            for s, c in zip(self.slopes, self.intercepts)]
        # The grid is the upper end of every branch image, {1/j} for S_n
        self.grid = sorted(self.image_highs)
        self.boundaries = sorted(set(self.image_lows + self.image_highs))

        self.np_slopes = np.array(self.slopes)
        self.np_intercepts = np.array(self.intercepts)
        self.np_reverses = np.array(self.reverses)
        self.np_image_lows = np.array(self.image_lows)
        self.np_image_highs = np.array(self.image_highs)
        self.np_hull_lows = np.array(self.hull_lows)
        self.np_hull_highs = np.array(self.hull_highs)
        self.np_grid = np.array(self.grid)

    def pullback(self, i:int, a:float, b:float)->Tuple[float,float]:
        """Intersect [a,b] with the image of sorted branch i and map it back
        to [0,1], orientation flip included."""
        low = max(a, self.image_lows[i])
        high = min(b, self.image_highs[i])
        p = (low - self.intercepts[i]) / self.slopes[i]
        q = (high - self.intercepts[i]) / self.slopes[i]
        if p > q:
            p, q = q, p
        return min(max(p, 0.0), 1.0), min(max(q, 0.0), 1.0)

    def forward(self, i:int, x:float)->float:
        return self.slopes[i] * x + self.intercepts[i]

    def touching(self, a:float, b:float)->Tuple[int,int]:
        """Range of sorted branches whose hulls meet [a,b]."""
        return bisect_left(self.hull_highs, a), \
            bisect_right(self.hull_lows, b) - 1

    def grid_distance(self, a:float, b:float)->float:
        """Distance from [a,b] to the nearest boundary of a branch image,
        zero if one lies inside."""
        i = bisect_left(self.boundaries, a)
        if i < len(self.boundaries) and self.boundaries[i] <= b:
            return 0.0
        distance = math.inf
        if i > 0:
            distance = a - self.boundaries[i - 1]
        if i < len(self.boundaries):
            distance = min(distance, self.boundaries[i] - b)
        return distance


@lru_cache(maxsize=128)
def system_geometry(system:IfsSystem)->SystemGeometry:
    return SystemGeometry(system)

def grid_points(system:IfsSystem)->Tuple[float,...]:
    """The grid {1/j : j = 1..n}, the upper ends of the branch images."""
    return tuple(system_geometry(system).grid)

def _meets(geo:SystemGeometry, a:float, b:float, depth:int)->bool:
    if b < geo.hull_low - DISJOINT_SLACK or a > geo.hull_high + DISJOINT_SLACK:
        return False
    if depth == 0 or (a <= geo.hull_low and b >= geo.hull_high):
        return True
    first, last = geo.touching(a - DISJOINT_SLACK, b + DISJOINT_SLACK)
    for i in range(first, last + 1):
        if a <= geo.hull_lows[i] and geo.hull_highs[i] <= b:
            return True
        if geo.image_lows[i] > b or geo.image_highs[i] < a:
            # Only within slack of this hull
            return True
        p, q = geo.pullback(i, a, b)
        if _meets(geo, p, q, depth - 1):
            return True
    return False

def limit_set_meets(system:IfsSystem, interval:Interval,
        depth:int=DEFAULT_PRUNE_DEPTH)->bool:
    """Whether the interval may contain a point of the limit set, judged on
    the hulls of the cylinders up to the given depth. A False result proves
    the interval misses the limit set."""
    check_type(interval, Interval, hint="limit_set_meets.interval")
    valid_natural(depth, hint="limit_set_meets.depth")
    return _meets(system_geometry(system), interval.left, interval.right,
        depth)

def _point_in(geo:SystemGeometry, a:float, b:float, depth:int
        )->Optional[float]:
    if b < geo.hull_low or a > geo.hull_high:
        return None
    if a <= geo.hull_low <= b:
        return geo.hull_low
    if a <= geo.hull_high <= b:
        return geo.hull_high
    if depth == 0:
        return None
    first, last = geo.touching(a, b)
    for i in range(first, last + 1):
        p, q = geo.pullback(i, a, b)
        x = _point_in(geo, p, q, depth - 1)
        if x is not None:
            return geo.forward(i, x)
    return None

def limit_point_in(system:IfsSystem, interval:Interval,
        depth:int=DEFAULT_PRUNE_DEPTH)->Optional[float]:
    """A point of the limit set inside the interval, the image of a hull
    endpoint under some word of length at most depth, or None if none was
    found."""
    check_type(interval, Interval, hint="limit_point_in.interval")
    valid_natural(depth, hint="limit_point_in.depth")
    x = _point_in(system_geometry(system), interval.left, interval.right,
        depth)
    if x is None or not interval.contains(x):
        return None
    return x

def _contains_grid_point(grid:List[float], a:float, b:float)->bool:
    i = bisect_left(grid, a)
    return i < len(grid) and grid[i] <= b

def expand_to_grid(system:IfsSystem, interval:Interval,
        cap:int=EXPANSION_STEP_CAP)->Tuple[Interval,int]:
    """Repeatedly maps the interval back through the branch whose image
    contains it until it contains a grid point 1/j, j <= n+1. Density is
    unchanged at every step. Returns the expanded interval and the number of
    steps."""
    check_type(interval, Interval, hint="expand_to_grid.interval")
    geo = system_geometry(system)
    a, b = interval.left, interval.right
    if b < geo.image_lows[0] or a > geo.image_highs[-1]:
        raise ValueError(f"Interval {interval} is disjoint from the first "
            "generation of the system.")
    for steps in range(cap + 1):
        if _contains_grid_point(geo.boundaries, a, b):
            return Interval.clipped(a, b), steps
        if steps == cap:
            break
        i = bisect_right(geo.image_lows, a) - 1
        if i < 0 or b > geo.image_highs[i]:
            raise ValueError(f"Interval [{a}, {b}] is not contained in a "
                "single branch image.")
        a, b = geo.pullback(i, a, b)
    raise RuntimeError(f"Expansion of {interval} did not reach the grid "
        f"within {cap} steps.")

def expand_batch(system:IfsSystem, lefts:np.ndarray, rights:np.ndarray,
        cap:int=EXPANSION_STEP_CAP
        )->Tuple[np.ndarray,np.ndarray,np.ndarray]:
    """Array form of expand_to_grid. Intervals that already meet the grid,
    or that are not inside a single branch image, are returned unchanged
    rather than rejected. Returns (lefts, rights, steps)."""
    geo = system_geometry(system)
    lefts = np.array(lefts, dtype=float)
    rights = np.array(rights, dtype=float)
    steps = np.zeros(lefts.shape, dtype=int)
    grid = np.array(geo.boundaries)

    def meets_grid(a:np.ndarray, b:np.ndarray)->np.ndarray:
        j = np.searchsorted(grid, a, side="left")
        return (j < len(grid)) & (grid[np.minimum(j, len(grid) - 1)] <= b)

    active = ~meets_grid(lefts, rights)
    for _ in range(cap):
        idx = np.nonzero(active)[0]
        if len(idx) == 0:
            break
        a, b = lefts[idx], rights[idx]
        i = np.searchsorted(geo.np_image_lows, a, side="right") - 1
        inside = (i >= 0) & (b <= geo.np_image_highs[np.maximum(i, 0)])
        active[idx[~inside]] = False
        idx, a, b, i = idx[inside], a[inside], b[inside], i[inside]
        p = (a - geo.np_intercepts[i]) / geo.np_slopes[i]
        q = (b - geo.np_intercepts[i]) / geo.np_slopes[i]
        lefts[idx] = np.clip(np.minimum(p, q), 0.0, 1.0)
        rights[idx] = np.clip(np.maximum(p, q), 0.0, 1.0)
        steps[idx] += 1
        active[idx] = ~meets_grid(lefts[idx], rights[idx])
    return lefts, rights, steps
