"""
This file contains shared functions and variables used within multiple tests,
including oracles that recompute quantities independently of the package.

Author(s): David Marchant
"""
import math
import os

from typing import Tuple

import numpy as np

from ..gauss_packing.functionality.file_io import make_dir, rmtree

# testing
TEST_DIR = "test_files"

def setup():
    make_dir(TEST_DIR, ensure_clean=True)

def teardown():
    rmtree(TEST_DIR)
    for f in ["saved_config.yml"]:
        if os.path.exists(f):
            os.remove(f)

def long_tests_skipped()->bool:
    return os.environ.get("SKIP_LONG") == '1'


def moran_oracle(n:int, tolerance:float=1e-15)->float:
    """Plain bisection on sum (1/(k(k+1)))^h = 1."""
    if n == 1:
        return 0.0
    ratios = [1 / (k * (k + 1)) for k in range(1, n + 1)]
    low, high = 0.0, 1.0
    while high - low > tolerance:
        mid = 0.5 * (low + high)
        if math.fsum(r ** mid for r in ratios) > 1:
            low = mid
        else:
            high = mid
    return 0.5 * (low + high)

def leftmost_oracle(n:int)->float:
    return 2 * n / (2 * n * n + 2 * n - 1)

def lower_bound_density_oracle(n:int, h:float)->float:
    return 0.5 ** h * ((2 * n * n + 2 * n - 1) / (2 * n * n + n - 1)) ** h

def packing_lower_oracle(n:int, h:float)->float:
    return 2 ** h * ((2 * n * n + n - 1) / (2 * n * n + 2 * n - 1)) ** h

def cylinder_oracle(n:int, h:float, generation:int
        )->Tuple[np.ndarray,np.ndarray,np.ndarray]:
    """Left ends, right ends and weights of every cylinder of a generation,
    built from g_k(x) = 1/k - x/(k(k+1)) by composing one letter at a time
    on the inside."""
    lefts, rights, weights = np.zeros(1), np.ones(1), np.ones(1)
    for _ in range(generation):
        new_lefts, new_rights, new_weights = [], [], []
        for k in range(1, n + 1):
            slope = -1 / (k * (k + 1))
            # g_k applied to the previous cylinders reverses them
            new_lefts.append(1 / k + slope * rights)
            new_rights.append(1 / k + slope * lefts)
            new_weights.append(weights * abs(slope) ** h)
        lefts = np.concatenate(new_lefts)
        rights = np.concatenate(new_rights)
        weights = np.concatenate(new_weights)
    return lefts, rights, weights

def measure_oracle(cylinders:Tuple[np.ndarray,np.ndarray,np.ndarray],
        a:float, b:float)->Tuple[float,float]:
    """Bounds on m_n([a,b]): the weight of the cylinders inside [a,b], and
    of those meeting it."""
    lefts, rights, weights = cylinders
    inside = (lefts >= a) & (rights <= b)
    meeting = (rights >= a) & (lefts <= b)
    return math.fsum(weights[inside]), math.fsum(weights[meeting])
