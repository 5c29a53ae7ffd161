from typing import Any, Dict, List, Type

from ..core.base_suite import BaseSuite, SuiteReport
from ..core.vars import DEFAULT_SUITE_SAMPLES
from .zero_r import ZeroRSuite
from .uniform import UniformLeftSuite, UniformRightSuite
from .lower_bound_interval import LowerBoundIntervalSuite, \
    lower_bound_interval, lower_bound_density
from .regularity import RegularitySuite
from .gap_structure import GapStructureSuite
from .grid_intervals import GridIntervalsSuite
from .conformal import ConformalSuite
from .min_split import MinSplitSuite
from .expansion import ExpansionSuite

SUITES:Dict[str,Type[BaseSuite]] = {
    suite.name: suite for suite in [
        ZeroRSuite,
        UniformLeftSuite,
        UniformRightSuite,
        LowerBoundIntervalSuite,
        RegularitySuite,
        GapStructureSuite,
        GridIntervalsSuite,
        ConformalSuite,
        MinSplitSuite,
        ExpansionSuite
    ]
}

def run_suite(name:str, n:int, samples:int=DEFAULT_SUITE_SAMPLES,
        seed:int=0, **kwargs:Any)->SuiteReport:
    if name not in SUITES:
        raise ValueError(f"Unknown suite '{name}'. Known suites are "
            f"{list(SUITES)}.")
    return SUITES[name](n, samples=samples, seed=seed, **kwargs).run()

def run_suites(names:List[str], n:int, samples:int=DEFAULT_SUITE_SAMPLES,
        seed:int=0, **kwargs:Any)->List[SuiteReport]:
    return [run_suite(name, n, samples=samples, seed=seed, **kwargs)
        for name in names]

def verify_zero_r(n:int, samples:int=DEFAULT_SUITE_SAMPLES, seed:int=0,
        **kwargs:Any)->SuiteReport:
    return ZeroRSuite(n, samples=samples, seed=seed, **kwargs).run()

def verify_uniform_left(n:int, samples:int=DEFAULT_SUITE_SAMPLES,
        seed:int=0, **kwargs:Any)->SuiteReport:
    return UniformLeftSuite(n, samples=samples, seed=seed, **kwargs).run()

def verify_uniform_right(n:int, samples:int=DEFAULT_SUITE_SAMPLES,
        seed:int=0, **kwargs:Any)->SuiteReport:
    return UniformRightSuite(n, samples=samples, seed=seed, **kwargs).run()

def verify_lower_bound_interval(n:int, **kwargs:Any)->SuiteReport:
    return LowerBoundIntervalSuite(n, samples=1, **kwargs).run()

def verify_regularity(n:int, samples:int=DEFAULT_SUITE_SAMPLES, seed:int=0,
        **kwargs:Any)->SuiteReport:
    return RegularitySuite(n, samples=samples, seed=seed, **kwargs).run()

def verify_gap_structure(n:int, **kwargs:Any)->SuiteReport:
    return GapStructureSuite(n, samples=0, **kwargs).run()

def verify_grid_intervals(n:int, **kwargs:Any)->SuiteReport:
    return GridIntervalsSuite(n, samples=0, **kwargs).run()

def verify_conformal(n:int, samples:int=DEFAULT_SUITE_SAMPLES, seed:int=0,
        **kwargs:Any)->SuiteReport:
    return ConformalSuite(n, samples=samples, seed=seed, **kwargs).run()

def verify_min_split(n:int, samples:int=DEFAULT_SUITE_SAMPLES, seed:int=0,
        **kwargs:Any)->SuiteReport:
    return MinSplitSuite(n, samples=samples, seed=seed, **kwargs).run()

def verify_expansion(n:int, samples:int=DEFAULT_SUITE_SAMPLES, seed:int=0,
        **kwargs:Any)->SuiteReport:
    return ExpansionSuite(n, samples=samples, seed=seed, **kwargs).run()
