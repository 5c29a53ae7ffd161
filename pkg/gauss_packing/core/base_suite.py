"""
This file contains the base verification suite definition. This should be
inherited from for all suite instances. A suite checks one inequality on
S_n over a deterministic, seeded set of samples and summarises the result
in a SuiteReport.

Author(s): David Marchant
"""
import math

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Tuple

import numpy as np

from .dimension import solve_dimension
from .ifs import IfsSystem, make_gauss_linear_ifs
from .vars import DEFAULT_SUITE_SAMPLES, DEFAULT_SUITE_TOLERANCE, \
    DEFAULT_MAX_DEPTH, DEFAULT_MEASURE_TOLERANCE, VALID_SUITE_NAME_CHARS, \
    DEBUG_INFO, DEBUG_WARNING, get_drt_imp_msg
from ..functionality.debug import setup_debugging, print_debug
from ..functionality.validation import check_type, check_implementation, \
    valid_natural, valid_positive, valid_string


@dataclass(frozen=True)
class SuiteReport:
    suite:str
    n:int
    samples:int
    seed:int
    violations:int
    # Least value of (checked quantity - required bound)
    worst_margin:float
    passed:bool
    # Suite specific statistics
    details:Dict[str,Any] = field(default_factory=dict)

    def __post_init__(self)->None:
        valid_natural(self.violations, hint="SuiteReport.violations")
        if self.passed != (self.violations == 0):
            raise ValueError(f"Suite {self.suite} reports pass="
                f"{self.passed} with {self.violations} violations.")

    def as_dict(self)->Dict[str,Any]:
        return {
            "suite": self.suite,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "pass": self.passed,
            "details": dict(self.details)
        }


class BaseSuite:
    # Name used in reports and on the command line
    name:str = ""
    # The system under test and its dimension
    system:IfsSystem
    h:float
    n:int
    samples:int
    seed:int
    # Absolute slack allowed on every checked inequality
    tol:float
    max_depth:int
    measure_tol:float
    def __init__(self, n:int, samples:int=DEFAULT_SUITE_SAMPLES, seed:int=0,
            tol:float=DEFAULT_SUITE_TOLERANCE,
            max_depth:int=DEFAULT_MAX_DEPTH,
            measure_tol:float=DEFAULT_MEASURE_TOLERANCE, print:Any=None,
            logging:int=0)->None:
        """BaseSuite Constructor. This will check that any class inheriting
        from it implements its check generator, then validates its inputs
        and solves the dimension of S_n."""
        check_implementation(type(self)._checks, BaseSuite)
        valid_string(self.name, VALID_SUITE_NAME_CHARS,
            hint=f"{type(self).__name__}.name")
        self._is_valid_n(n)
        self.n = n
        valid_natural(samples, hint="BaseSuite.samples")
        self.samples = samples
        valid_natural(seed, hint="BaseSuite.seed")
        self.seed = seed
        valid_positive(tol, hint="BaseSuite.tol")
        self.tol = tol
        valid_positive(max_depth, integer=True, hint="BaseSuite.max_depth")
        self.max_depth = max_depth
        valid_positive(measure_tol, hint="BaseSuite.measure_tol")
        self.measure_tol = measure_tol
        self._print_target, self.debug_level = setup_debugging(print, logging)

        self.system = make_gauss_linear_ifs(n)
        self.h = solve_dimension(self.system).h
        self.details = {}

    def __new__(cls, *args, **kwargs):
        """A check that this base class is not instantiated itself, only
        inherited from"""
        if cls is BaseSuite:
            msg = get_drt_imp_msg(BaseSuite)
            raise TypeError(msg)
        return object.__new__(cls)

    def _is_valid_n(self, n:int)->None:
        """Validation check for 'n' variable from main constructor. Suites
        are defined for n >= 2 unless overridden."""
        check_type(n, int, hint="BaseSuite.n")
        if n < 2:
            raise ValueError(f"Suite {self.name} needs n >= 2, got {n}.")

    def _checks(self, rng:np.random.Generator
            )->Iterator[Tuple[float,float]]:
        """Generator of (checked value, required bound) pairs. Must be
        implemented by any child class."""
        pass

    def run(self)->SuiteReport:
        """Evaluates every check. A check is violated when its value falls
        below its bound, or when the margin between them is not finite."""
        rng = np.random.default_rng(self.seed)
        violations = 0
        checked = 0
        worst_margin = math.inf
        for value, bound in self._checks(rng):
            checked += 1
            margin = value - bound
            if not math.isfinite(margin) or margin < 0:
                violations += 1
                print_debug(self._print_target, self.debug_level,
                    f"{self.name} on S_{self.n}: value {value} below bound "
                    f"{bound}", DEBUG_WARNING)
            if math.isnan(margin):
                margin = -math.inf
            worst_margin = min(worst_margin, margin)

        print_debug(self._print_target, self.debug_level,
            f"{self.name} on S_{self.n}: {checked} checks, {violations} "
            f"violations, worst margin {worst_margin}", DEBUG_INFO)
        return SuiteReport(
            suite=self.name,
            n=self.n,
            samples=self.samples,
            seed=self.seed,
            violations=violations,
            worst_margin=worst_margin,
            passed=violations == 0,
            details=dict(self.details, checks=checked)
        )
