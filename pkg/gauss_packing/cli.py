"""
This file contains the command line front end. Each subcommand builds a
RunConfig, optionally merged with a YAML configuration file, which run()
executes and writes out as CSV, JSON lines or human readable text.

Exit codes are 0 on success, 1 on usage errors, 2 when a computation hits
one of its caps (or stops on its budget under --strict), and 3 when a
verification suite fails.

Author(s): David Marchant
"""
import argparse
import sys

from dataclasses import asdict, dataclass, fields
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Tuple

from .core.dimension import solve_dimension
from .core.ifs import Interval, make_gauss_linear_ifs
from .core.measure import density, measure_interval
from .core.packing import PackingOptions, packing_estimate, sweep
from .core.vars import COMMAND_DIMENSION, COMMAND_MEASURE, COMMAND_DENSITY, \
    COMMAND_DMIN, COMMAND_SWEEP, COMMAND_VERIFY, VALID_COMMANDS, \
    FORMAT_CSV, FORMAT_HUMAN, VALID_FORMATS, EXIT_SUCCESS, EXIT_USAGE, \
    EXIT_COMPUTATION, EXIT_VERIFY_FAILED, SWEEP_CSV_HEADER, PACKING_LIMIT, \
    DEFAULT_DIMENSION_TOLERANCE, DEFAULT_MEASURE_TOLERANCE, \
    DEFAULT_SUITE_TOLERANCE, DEFAULT_MAX_DEPTH, DEFAULT_GENERATION, \
    DEFAULT_RADII, DEFAULT_BUDGET, DEFAULT_GAP, DEFAULT_SUITE_SAMPLES, \
    DEBUG_INFO
from .functionality.debug import setup_debugging, print_debug
from .functionality.file_io import read_yaml, write_file, write_yaml
from .functionality.formatting import Record, render
from .functionality.validation import check_type, valid_choice, \
    valid_dict, valid_natural, valid_positive, valid_path
from .suites import SUITES, run_suites

SUITE_ALL = "all"


@dataclass(frozen=True)
class RunConfig:
    command:str
    n:Optional[int] = None
    n_min:Optional[int] = None
    n_max:Optional[int] = None
    interval:Optional[Tuple[float,float]] = None
    generation:int = DEFAULT_GENERATION
    radii:int = DEFAULT_RADII
    depth:int = DEFAULT_MAX_DEPTH
    # Residual tolerance for dimension, unresolved mass for measure, density
    # and dmin, and inequality slack for verify
    tol:Optional[float] = None
    seed:int = 0
    samples:int = DEFAULT_SUITE_SAMPLES
    suite:str = SUITE_ALL
    certify:bool = False
    budget:int = DEFAULT_BUDGET
    gap:float = DEFAULT_GAP
    strict:bool = False
    threads:Optional[int] = None
    output_path:Optional[str] = None
    format:str = FORMAT_HUMAN
    timestamp:bool = True
    debug:int = 0

    def __post_init__(self)->None:
        valid_choice(self.command, VALID_COMMANDS, hint="RunConfig.command")
        valid_choice(self.format, VALID_FORMATS, hint="RunConfig.format")
        if self.interval is not None:
            check_type(self.interval, tuple, alt_types=[list],
                hint="RunConfig.interval")
            object.__setattr__(self, "interval",
                tuple(float(v) for v in self.interval))
        if self.tol is None:
            object.__setattr__(self, "tol", default_tolerance(self.command))
        valid_positive(self.tol, hint="RunConfig.tol")
        valid_positive(self.depth, integer=True, hint="RunConfig.depth")
        valid_natural(self.generation, hint="RunConfig.generation")
        valid_positive(self.radii, integer=True, hint="RunConfig.radii")
        valid_natural(self.seed, hint="RunConfig.seed")
        valid_natural(self.samples, hint="RunConfig.samples")
        valid_positive(self.budget, integer=True, hint="RunConfig.budget")
        valid_positive(self.gap, hint="RunConfig.gap")
        valid_natural(self.debug, hint="RunConfig.debug")
        for name in ["certify", "strict", "timestamp"]:
            check_type(getattr(self, name), bool, hint=f"RunConfig.{name}")
        if self.threads is not None:
            valid_positive(self.threads, integer=True,
                hint="RunConfig.threads")
        if self.output_path is not None:
            valid_path(self.output_path, allow_base=True,
                hint="RunConfig.output_path")
        self._is_valid_command_fields()

    def _is_valid_command_fields(self)->None:
        """Checks the fields each command needs are present."""
        required = {
            COMMAND_DIMENSION: ["n"],
            COMMAND_MEASURE: ["n", "interval"],
            COMMAND_DENSITY: ["n", "interval"],
            COMMAND_DMIN: ["n"],
            COMMAND_SWEEP: ["n_min", "n_max"],
            COMMAND_VERIFY: ["n"]
        }[self.command]
        for name in required:
            if getattr(self, name) is None:
                raise ValueError(f"Command '{self.command}' requires "
                    f"'{name}'.")
        for name in ["n", "n_min", "n_max"]:
            if getattr(self, name) is not None:
                valid_positive(getattr(self, name), integer=True,
                    hint=f"RunConfig.{name}")
        if self.interval is not None and len(self.interval) != 2:
            raise ValueError(f"Interval {self.interval} must have two "
                "endpoints.")
        if self.suite != SUITE_ALL:
            valid_choice(self.suite, list(SUITES), hint="RunConfig.suite")

    def packing_options(self)->PackingOptions:
        return PackingOptions(generation=self.generation, radii=self.radii,
            max_depth=self.depth, tol=self.tol, certify=self.certify,
            budget=self.budget, gap=self.gap)


def default_tolerance(command:str)->float:
    if command == COMMAND_DIMENSION:
        return DEFAULT_DIMENSION_TOLERANCE
    if command == COMMAND_VERIFY:
        return DEFAULT_SUITE_TOLERANCE
    return DEFAULT_MEASURE_TOLERANCE

def parse_interval(text:str)->Tuple[float,float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"Interval '{text}' must be given as 'left,right'.")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise ValueError(f"Interval '{text}' has a non numeric endpoint.")


class UsageErrorParser(argparse.ArgumentParser):
    """Argument parser raising ValueError rather than exiting, so that
    usage errors map onto their exit code."""
    def error(self, message):
        raise ValueError(message)


def make_parser()->argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False,
        argument_default=argparse.SUPPRESS)
    common.add_argument("--format", choices=VALID_FORMATS)
    common.add_argument("--output", dest="output_path")
    common.add_argument("--no-timestamp", dest="timestamp",
        action="store_false")
    common.add_argument("--config", dest="config_path")
    common.add_argument("--save-config", dest="save_config_path")
    common.add_argument("--debug", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--depth", type=int)

    search = argparse.ArgumentParser(add_help=False,
        argument_default=argparse.SUPPRESS)
    search.add_argument("--generation", type=int)
    search.add_argument("--radii", type=int)
    search.add_argument("--certify", action="store_true")
    search.add_argument("--budget", type=int)
    search.add_argument("--gap", type=float)
    search.add_argument("--strict", action="store_true")

    parser = UsageErrorParser(prog="gauss_packing",
        description="Certified dimension, measure, density and packing "
            "measure estimates for the linear-Gauss systems S_n.")
    commands = parser.add_subparsers(dest="command",
        parser_class=UsageErrorParser)
    commands.required = True

    def add(name:str, parents:List[argparse.ArgumentParser], help:str
            )->argparse.ArgumentParser:
        return commands.add_parser(name, parents=parents, help=help,
            argument_default=argparse.SUPPRESS)

    sub = add(COMMAND_DIMENSION, [common], "solve the Moran equation")
    sub.add_argument("--n", type=int)
    for name, help in [(COMMAND_MEASURE, "enclose m_n of an interval"),
            (COMMAND_DENSITY, "enclose d_n of an interval")]:
        sub = add(name, [common], help)
        sub.add_argument("--n", type=int)
        sub.add_argument("--interval", type=parse_interval)
    sub = add(COMMAND_DMIN, [common, search], "estimate d_min for one n")
    sub.add_argument("--n", type=int)
    sub = add(COMMAND_SWEEP, [common, search], "estimate d_min over a "
        "range of n")
    sub.add_argument("--n-min", dest="n_min", type=int)
    sub.add_argument("--n-max", dest="n_max", type=int)
    sub.add_argument("--threads", type=int)
    sub = add(COMMAND_VERIFY, [common], "run verification suites")
    sub.add_argument("--n", type=int)
    sub.add_argument("--suite", choices=[SUITE_ALL] + list(SUITES))
    sub.add_argument("--samples", type=int)
    sub.add_argument("--seed", type=int)
    return parser

def build_config(argv:Optional[List[str]]=None)->Tuple[RunConfig,
        Optional[str]]:
    """Parses arguments into a RunConfig. Values from a --config file are
    used unless overridden by explicit flags. Returns the config and the
    path it should be saved to, if any."""
    arguments = vars(make_parser().parse_args(argv))
    config_path = arguments.pop("config_path", None)
    save_path = arguments.pop("save_config_path", None)

    values:Dict[str,Any] = {}
    if config_path is not None:
        loaded = read_yaml(config_path)
        names = [f.name for f in fields(RunConfig)]
        valid_dict(loaded, str, Any, optional_keys=names, min_length=0,
            hint=config_path)
        if "command" in loaded and loaded["command"] != arguments["command"]:
            raise ValueError(f"Config file is for command "
                f"'{loaded['command']}', not '{arguments['command']}'.")
        values.update(loaded)
    values.update(arguments)
    return RunConfig(**values), save_path

def _dimension_records(config:RunConfig)->List[Record]:
    result = solve_dimension(make_gauss_linear_ifs(config.n),
        tolerance=config.tol)
    return [{
        "n": config.n,
        "h": result.h,
        "residual": result.residual,
        "iterations": result.iterations,
        "tolerance": result.tolerance
    }]

def _interval_records(config:RunConfig)->List[Record]:
    system = make_gauss_linear_ifs(config.n)
    h = solve_dimension(system).h
    interval = Interval(*config.interval)
    record = {"n": config.n, "h": h, "left": interval.left,
        "right": interval.right}
    if config.command == COMMAND_MEASURE:
        bound = measure_interval(system, h, interval,
            max_depth=config.depth, tol=config.tol)
        record.update({
            "lower": bound.lower,
            "upper": bound.upper,
            "depth_used": bound.depth_used,
            "unresolved_mass": bound.unresolved_mass
        })
    else:
        result = density(system, h, interval, max_depth=config.depth,
            tol=config.tol)
        record.update({
            "measure_lower": result.measure.lower,
            "measure_upper": result.measure.upper,
            "density_lower": result.density_lower,
            "density_upper": result.density_upper
        })
    return [record]

def execute(config:RunConfig, print:Any=None, logging:int=0
        )->Tuple[List[Record],int]:
    """Runs the library call behind a config. Returns the records to write
    and the exit code they call for."""
    if config.command == COMMAND_DIMENSION:
        return _dimension_records(config), EXIT_SUCCESS
    if config.command in [COMMAND_MEASURE, COMMAND_DENSITY]:
        return _interval_records(config), EXIT_SUCCESS

    if config.command == COMMAND_VERIFY:
        names = list(SUITES) if config.suite == SUITE_ALL else [config.suite]
        reports = run_suites(names, config.n, samples=config.samples,
            seed=config.seed, tol=config.tol, max_depth=config.depth,
            print=print, logging=logging)
        code = EXIT_SUCCESS if all(r.passed for r in reports) \
            else EXIT_VERIFY_FAILED
        return [r.as_dict() for r in reports], code

    opts = config.packing_options()
    if config.command == COMMAND_DMIN:
        estimates = [packing_estimate(config.n, opts, print=print,
            logging=logging)]
    else:
        estimates = sweep(config.n_min, config.n_max, opts, print=print,
            logging=logging, workers=config.threads)
    records = []
    for estimate in estimates:
        record = estimate.as_dict()
        if config.command == COMMAND_DMIN:
            record.update({
                "witness_density_lower": estimate.witness_density_lower,
                "certified": estimate.certified,
                "partial": estimate.partial
            })
        records.append(record)
    partial = any(e.partial for e in estimates)
    code = EXIT_COMPUTATION if partial and config.strict else EXIT_SUCCESS
    return records, code

def render_records(config:RunConfig, records:List[Record])->str:
    header = None
    title = ""
    if config.command == COMMAND_SWEEP:
        header = list(SWEEP_CSV_HEADER)
        title = f"Packing measure of J_n by n (limit = {PACKING_LIMIT})"
    if config.timestamp and config.format != FORMAT_CSV:
        stamp = datetime.now(timezone.utc).isoformat()
        if header is None:
            records = [dict(r, timestamp=stamp) for r in records]
        else:
            title = f"{title}\ngenerated {stamp}"
    return render(records, config.format, header=header, title=title)

def run(config:RunConfig, stdout:Any=None, stderr:Any=None)->int:
    """Executes a config, writing its records to the output path or stdout
    and diagnostics to stderr. Returns the exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        check_type(config, RunConfig, hint="run.config")
        print_target, debug_level = setup_debugging(stderr, config.debug)
        records, code = execute(config, print=print_target,
            logging=debug_level)
        text = render_records(config, records)
        if config.output_path is None:
            stdout.write(text)
        else:
            write_file(text, config.output_path)
            print_debug(print_target, debug_level,
                f"Wrote {len(records)} records to {config.output_path}",
                DEBUG_INFO)
    except (TypeError, ValueError, KeyError) as ex:
        stderr.write(f"ERROR: {ex}\n")
        return EXIT_USAGE
    except RuntimeError as ex:
        stderr.write(f"ERROR: {ex}\n")
        return EXIT_COMPUTATION
    if code == EXIT_VERIFY_FAILED:
        stderr.write("ERROR: verification suite failed\n")
    elif code == EXIT_COMPUTATION:
        stderr.write("ERROR: branch-and-bound budget exhausted\n")
    return code

def main(argv:Optional[List[str]]=None, stdout:Any=None, stderr:Any=None
        )->int:
    stderr = sys.stderr if stderr is None else stderr
    try:
        config, save_path = build_config(argv)
        if save_path is not None:
            saved = asdict(config)
            if saved["interval"] is not None:
                saved["interval"] = list(saved["interval"])
            write_yaml(saved, save_path)
    except (TypeError, ValueError, KeyError, FileNotFoundError) as ex:
        stderr.write(f"ERROR: {ex}\n")
        return EXIT_USAGE
    return run(config, stdout=stdout, stderr=stderr)
